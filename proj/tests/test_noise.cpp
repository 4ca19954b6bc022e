#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "crspde/io.hpp"
#include "crspde/mollifier.hpp"
#include "crspde/noise.hpp"
#include "crspde/spectral.hpp"
#include "oracles.hpp"

using namespace crspde;

TEST_CASE("sampling is deterministic and honours zero-mean flags") {
  const TorusGrid g(16);
  const auto a = sample(42, g, {false, false, true});
  const auto b = sample(42, g, {false, false, true});
  CHECK(a == b);
  CHECK(a.truncation() == 7);
  CHECK(a.eta0(2) == 0.0);
  CHECK(a.eta0(0) != 0.0);
  CHECK(a.eta(0, 0, 1) == Complex(0, 0));
  CHECK(a.eta(8, 0, 1) == Complex(0, 0));
  const auto c = sample(43, g, {false, false, true});
  CHECK_FALSE(a == c);
}

TEST_CASE("coarse samples are prefixes of fine ones") {
  const auto coarse = sample(5, TorusGrid(16), {false, false, false});
  const auto fine = sample(5, TorusGrid(64), {false, false, false});
  for (int j = 0; j < 3; ++j) {
    CHECK(coarse.eta0(j) == fine.eta0(j));
    for (int k1 = -7; k1 <= 7; ++k1) {
      for (int k2 = -7; k2 <= 7; ++k2) CHECK(coarse.eta(k1, k2, j) == fine.eta(k1, k2, j));
    }
  }
}

TEST_CASE("coefficient moments over 200 seeds") {
  const TorusGrid g(16);
  double sum_abs2 = 0.0, sum_re2 = 0.0, sum_im2 = 0.0, sum_eta0 = 0.0;
  const int samples = 200;
  for (int s = 0; s < samples; ++s) {
    const auto noise = sample(s, g, {false, false, false});
    const Complex e = noise.eta(2, -3, 1);
    sum_abs2 += std::norm(e);
    sum_re2 += e.real() * e.real();
    sum_im2 += e.imag() * e.imag();
    sum_eta0 += noise.eta0(0) * noise.eta0(0);
  }
  // |eta|^2 ~ Exp(1): sd of the mean is 1/sqrt(200) ~ 0.071.
  CHECK(std::abs(sum_abs2 / samples - 1.0) < 0.3);
  CHECK(std::abs(sum_re2 / samples - 0.5) < 0.25);
  CHECK(std::abs(sum_im2 / samples - 0.5) < 0.25);
  CHECK(std::abs(sum_eta0 / samples - 1.0) < 0.45);
}

TEST_CASE("mollifier transform against an independent quadrature") {
  CHECK(mollifier_hat(0.3, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(mollifier_hat(0.5, 4, 0) - oracle::bump_transform(2.0, 0.0)) < 1e-9);
  CHECK(std::abs(mollifier_hat(0.25, 3, 4) - oracle::bump_transform(0.75, 1.0)) < 1e-9);
  CHECK(std::abs(mollifier_hat(1.0, 5, 2) - oracle::bump_transform(5.0, 2.0)) < 1e-9);
  CHECK(mollifier_hat(0.2, 3, -4) == mollifier_hat(0.2, -4, 3));
  CHECK(mollifier_hat(0.2, 3, 4) == mollifier_hat(0.2, -3, -4));
  CHECK(StandardBump::instance().density(1.0) == 0.0);
  CHECK(StandardBump::instance().density(0.0) > 0.0);
}

TEST_CASE("mollifier damps monotonically on its main lobe") {
  const auto& bump = StandardBump::instance();
  double previous = bump.transform(0.0);
  for (double t = 0.05; t < 5.7; t += 0.05) {
    const double v = bump.transform(t);
    CHECK(v < previous);
    CHECK(v > 0.0);
    previous = v;
  }
  for (double t = 0.0; t < 40.0; t += 0.37) CHECK(std::abs(bump.transform(t)) <= 1.0);
}

TEST_CASE("realize: a single mode gives cos x1") {
  const TorusGrid g(32);
  NoiseRealization noise(0, g.resolved_kmax(), {true, true, true});
  noise.set_eta(1, 0, 0, 1.0);
  const VectorField3 w = realize(noise, g, 0.0).to_physical();
  const ScalarField expected = ScalarField::from_function(g, [](double x1, double) {
    return Complex(std::cos(x1), 0.0);
  });
  CHECK(relative_l2(w[0], expected) < 1e-14);
  CHECK(w[1].max_abs() == 0.0);
  CHECK(w[2].max_abs() == 0.0);
  CHECK(std::abs(noise_coefficient(noise, 1, 0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(noise_coefficient(noise, -1, 0, 0) - 0.5) < 1e-15);
}

TEST_CASE("realize: mollification is a spectral multiplication") {
  const TorusGrid g(64);
  const auto noise = sample(7, g, {false, false, true});
  const double eps = 0.2;
  const VectorField3 raw = realize(noise, g, 0.0).to_spectral();
  const VectorField3 smooth = realize(noise, g, eps).to_spectral();
  for (int j = 0; j < 3; ++j) {
    double worst = 0.0;
    for (int a = 0; a < g.n(); ++a) {
      for (int b = 0; b < g.n(); ++b) {
        const Complex expect =
            raw[j][g.flat(a, b)] * mollifier_hat(eps, g.wavenumber(a), g.wavenumber(b));
        worst = std::max(worst, std::abs(smooth[j][g.flat(a, b)] - expect));
      }
    }
    CHECK(worst < 1e-10);
    const ScalarField phys = smooth[j].to_physical();
    CHECK(phys.max_abs_imag() <= 1e-12 * phys.max_abs());
    CHECK(std::abs(mean(smooth[j]) - noise.eta0(j)) < 1e-14);
  }
  CHECK(std::abs(mean(smooth[2])) == 0.0);
}

TEST_CASE("realize warns when eps is below the grid spacing") {
  const TorusGrid g(16);
  const auto noise = sample(1, g, {true, true, true});
  Diagnostics diag;
  realize(noise, g, 0.1, &diag);
  CHECK_FALSE(diag.warnings.empty());
  Diagnostics quiet;
  realize(noise, g, 0.5, &quiet);
  CHECK(quiet.warnings.empty());
}

TEST_CASE("noise files round trip exactly") {
  const TorusGrid g(16);
  const auto noise = sample(99, g, {false, true, false});
  const auto dir = std::filesystem::temp_directory_path() / "crspde_noise_test";
  std::filesystem::create_directories(dir);
  io::write_noise(dir / "noise.crf1", dir / "noise.json", noise, g, 0.3);
  const auto back = io::read_noise(dir / "noise.crf1", dir / "noise.json");
  CHECK(back == noise);

  const VectorField3 w = realize(noise, g, 0.3);
  io::write_crf1(dir / "w.crf1", w);
  const VectorField3 w2 = io::read_crf1_vector(dir / "w.crf1", Representation::kSpectral);
  for (int j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(w2[j][i] == w[j][i]);
  }
  std::filesystem::remove_all(dir);
}
