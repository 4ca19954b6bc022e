#include "doctest.h"

#include <cmath>

#include "crspde/noise.hpp"
#include "crspde/renorm.hpp"
#include "crspde/spectral.hpp"

using namespace crspde;

namespace {

constexpr Complex kI(0.0, 1.0);

VectorField3 smooth_noise(const TorusGrid& g, std::uint64_t seed, double eps) {
  return realize(sample(seed, g, {false, false, true}), g, eps);
}

double real_ratio(const VectorField3& f) {
  double re = 0.0, all = 0.0;
  for (int j = 0; j < 3; ++j) {
    const ScalarField p = f[j].to_physical();
    re = std::max(re, p.max_abs_real());
    all = std::max(all, p.max_abs());
  }
  return re / all;
}

}  // namespace

TEST_CASE("xi of a single cosine mode") {
  const TorusGrid g(32);
  NoiseRealization noise(0, g.resolved_kmax(), {true, true, true});
  noise.set_eta(1, 0, 0, 1.0);
  const XiParts parts = build_xi(noise, g, 0.0);
  // xi = 2i G * cos x1 = -2i sin x1, so xi1 = -2 sin x1 and xi2 = 0.
  CHECK(std::abs(parts.xi[0].coefficient(1, 0) - Complex(-1, 0)) < 1e-15);
  CHECK(std::abs(parts.xi[0].coefficient(-1, 0) - Complex(1, 0)) < 1e-15);
  const ScalarField expected1 = ScalarField::from_function(g, [](double x1, double) {
    return Complex(-2.0 * std::sin(x1), 0.0);
  });
  CHECK(relative_l2(parts.xi1[0].to_physical(), expected1) < 1e-14);
  CHECK(parts.xi2[0].max_abs() < 1e-15);
  CHECK(parts.xi[1].max_abs() == 0.0);
}

TEST_CASE("xi parts recombine and are real") {
  const TorusGrid g(64);
  const VectorField3 w = smooth_noise(g, 3, 0.3);
  const XiParts parts = build_xi(w);
  for (int j = 0; j < 3; ++j) {
    const ScalarField recombined = parts.xi2[j] + kI * parts.xi1[j];
    CHECK(relative_l2(recombined, parts.xi[j]) < 1e-14);
    CHECK(parts.xi1[j].to_physical().max_abs_imag() <= 1e-13 * parts.xi1[j].max_abs());
    CHECK(parts.xi2[j].to_physical().max_abs_imag() <= 1e-13 * parts.xi2[j].max_abs());
    // xi has zero mean.
    CHECK(std::abs(mean(parts.xi[j])) < 1e-15);
  }
  const XiParts direct = build_xi(sample(3, g, {false, false, true}), g, 0.3);
  CHECK(relative_l2(direct.xi, parts.xi) == 0.0);
}

TEST_CASE("renormalized theta equals the direct product") {
  const TorusGrid g(64);
  for (auto rule : {ProductRule::kExact, ProductRule::kTwoThirds}) {
    for (std::uint64_t seed : {0u, 1u, 2u}) {
      const VectorField3 w = smooth_noise(g, seed, 0.3);
      const VectorField3 direct = theta_direct(build_xi(w).xi, rule);
      const VectorField3 renorm = theta_renormalized(w, rule);
      CHECK(relative_l2(renorm, direct) < 1e-12);
      const VectorField3 shifted = theta_renormalized(w, rule, std::array<int, 2>{17, 40});
      CHECK(relative_l2(shifted, renorm) < 1e-12);
    }
  }
}

TEST_CASE("theta structure: imaginary and mean free") {
  const TorusGrid g(64);
  const VectorField3 w = smooth_noise(g, 5, 0.25);
  const VectorField3 theta = theta_direct(build_xi(w).xi, ProductRule::kExact);
  CHECK(real_ratio(theta) < 1e-13);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(mean(theta[j])) < 1e-13 * theta.max_abs());
}

TEST_CASE("noise depending on x2 only gives real xi and vanishing theta") {
  const TorusGrid g(32);
  NoiseRealization noise(0, g.resolved_kmax(), {true, true, true});
  noise.set_eta(0, 1, 0, Complex(0.3, 0.7));
  noise.set_eta(0, 2, 1, Complex(-1.1, 0.2));
  noise.set_eta(0, -3, 2, Complex(0.5, 0.5));
  const XiParts parts = build_xi(noise, g, 0.0);
  for (int j = 0; j < 3; ++j) CHECK(parts.xi1[j].max_abs() < 1e-15);
  CHECK(theta_direct(parts.xi, ProductRule::kExact).max_abs() < 1e-14);
  CHECK(theta_renormalized(noise, g, 0.0, ProductRule::kExact).max_abs() < 1e-14);
}

TEST_CASE("zeta inverts dzbar on theta") {
  const TorusGrid g(64);
  const VectorField3 w = smooth_noise(g, 8, 0.3);
  const VectorField3 theta = theta_direct(build_xi(w).xi, ProductRule::kExact);
  const VectorField3 zeta = build_zeta(theta);
  const VectorField3 back = -1.0 * apply_multiplier(zeta, Multiplier::kDzbar);
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(mean(zeta[j])) == 0.0);
    const ScalarField expected = 2.0 * theta[j] - ScalarField::constant(g, 2.0 * mean(theta[j]));
    CHECK(relative_l2(2.0 * back[j], expected) < 1e-13);
  }
}

TEST_CASE("build_objects bundles consistent fields") {
  const TorusGrid g(32);
  const auto noise = sample(4, g, {false, false, true});
  Diagnostics diag;
  const StochasticObjects obj = build_objects(noise, g, 0.4, ProductRule::kTwoThirds, &diag);
  CHECK(obj.seed == 4);
  CHECK(obj.eps == 0.4);
  CHECK(relative_l2(obj.w, realize(noise, g, 0.4)) == 0.0);
  CHECK(relative_l2(obj.theta, theta_direct(obj.xi(), ProductRule::kTwoThirds)) == 0.0);
  CHECK(relative_l2(obj.zeta, build_zeta(obj.theta)) == 0.0);
}
