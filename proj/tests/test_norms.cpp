#include "doctest.h"

#include <cmath>
#include <numbers>

#include "crspde/noise.hpp"
#include "crspde/norms.hpp"
#include "crspde/spectral.hpp"
#include "oracles.hpp"

using namespace crspde;

namespace {

ScalarField plane_wave(const TorusGrid& g, int k1, int k2) {
  return ScalarField::from_function(g, [=](double x1, double x2) {
    return std::polar(1.0, k1 * x1 + k2 * x2);
  });
}

ScalarField rolled(const ScalarField& f, int da, int db) {
  const TorusGrid& g = f.grid();
  const ScalarField p = f.to_physical();
  ScalarField out(g, Representation::kPhysical);
  const int n = g.n();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) out[g.flat((a + da) % n, (b + db) % n)] = p[g.flat(a, b)];
  }
  return out;
}

ScalarField noise_field(const TorusGrid& g, std::uint64_t seed) {
  return realize(sample(seed, g, {true, true, true}), g, 0.0)[0];
}

}  // namespace

TEST_CASE("pairing a constant returns it; derivative bumps see nothing") {
  const TorusGrid g(64);
  const ScalarField c = ScalarField::constant(g, Complex(2.0, -1.0));
  const ScalarField p = pair_all(c, 0.5);
  CHECK((p - c).max_abs() < 1e-14);
  CHECK(pair_all(c, 0.5, BumpVariant::kD1).max_abs() < 1e-14);
  CHECK(pair_all(c, 0.5, BumpVariant::kD2).max_abs() < 1e-14);
  CHECK_THROWS_AS(pair_all(c, g.spacing()), std::invalid_argument);
}

TEST_CASE("pairing a plane wave") {
  const TorusGrid g(256);
  const int k1 = 3, k2 = -2;
  const double lambda = 0.5;
  const ScalarField f = plane_wave(g, k1, k2);
  const ScalarField p = pair_all(f, lambda);
  const double hat = oracle::bump_transform(lambda * k1, lambda * k2);
  std::vector<Complex> values(f.data().begin(), f.data().end());
  for (auto [a, b] : {std::pair{0, 0}, {17, 201}, {128, 64}, {255, 3}}) {
    const Complex expected = hat * f[g.flat(a, b)];
    CHECK(std::abs(p[g.flat(a, b)] - expected) < 1e-9);
  }
  // The grid sum aliases the bump transform at lambda * n, so the Riemann
  // oracle needs lambda * n well above 128 to be trusted at this level.
  const ScalarField p1 = pair_all(f, 1.0);
  for (auto [a, b] : {std::pair{0, 0}, {17, 201}}) {
    const Complex riemann = oracle::pairing_sum(values, g.n(), g.coord(a), g.coord(b), 1.0);
    CHECK(std::abs(p1[g.flat(a, b)] - riemann) < 1e-8);
  }
  const ScalarField d1 = pair_all(f, lambda, BumpVariant::kD1);
  const ScalarField d2 = pair_all(f, lambda, BumpVariant::kD2);
  CHECK(std::abs(d1[g.flat(9, 9)] - Complex(0, -lambda * k1) * hat * f[g.flat(9, 9)]) < 1e-9);
  CHECK(std::abs(d2[g.flat(9, 9)] - Complex(0, -lambda * k2) * hat * f[g.flat(9, 9)]) < 1e-9);
}

TEST_CASE("pairing a rough field against the Riemann-sum oracle") {
  const TorusGrid g(256);
  const ScalarField f = realize(sample(2, g, {true, true, true}), g, 0.2)[1].to_physical();
  std::vector<Complex> values(f.data().begin(), f.data().end());
  const ScalarField p = pair_all(f, 1.0);
  for (auto [a, b] : {std::pair{5, 77}, {100, 100}}) {
    const Complex riemann = oracle::pairing_sum(values, g.n(), g.coord(a), g.coord(b), 1.0);
    CHECK(std::abs(p[g.flat(a, b)] - riemann) < 1e-9 * f.max_abs());
  }
}

TEST_CASE("negative norm: zero, homogeneity, translation invariance") {
  const TorusGrid g(64);
  CHECK(norm_neg(ScalarField(g, Representation::kSpectral), -1.3).estimate == 0.0);
  const ScalarField f = noise_field(g, 1);
  const double base = norm_neg(f, -1.3).estimate;
  CHECK(base > 0.0);
  CHECK(norm_neg(Complex(-2.5, 0.0) * f, -1.3).estimate == doctest::Approx(2.5 * base).epsilon(1e-13));
  CHECK(norm_neg(rolled(f, 5, 11), -1.3).estimate == doctest::Approx(base).epsilon(1e-12));
  CHECK_THROWS_AS(norm_neg(f, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(norm_neg(f, -2.0), std::invalid_argument);
}

TEST_CASE("negative norm: scale window") {
  const TorusGrid g(256);
  CHECK(finest_resolved_level(g) == 3);
  CHECK(finest_resolved_level(TorusGrid(1024)) == 5);
  const auto all = ScaleWindow{}.scales(g);
  REQUIRE(all.size() == 4);
  CHECK(all.front() == 1.0);
  CHECK(all.back() == 0.125);
  const ScalarField f = noise_field(g, 4);
  const auto coarse = norm_neg(f, -1.3, ScaleWindow{0, 1});
  const auto full = norm_neg(f, -1.3);
  CHECK(coarse.per_scale.size() == 2);
  CHECK(coarse.estimate <= full.estimate);
  for (std::size_t i = 0; i < coarse.per_scale.size(); ++i) {
    CHECK(coarse.per_scale[i] == full.per_scale[i]);
  }
  const auto d1 = norm_neg(f, -1.3, {}, BumpVariant::kD1);
  CHECK(std::isfinite(d1.estimate));
  CHECK(d1.estimate > 0.0);
}

TEST_CASE("Hölder norm of constants and of cos x1") {
  const TorusGrid g(256);
  const auto c = norm_holder(ScalarField::constant(g, Complex(0.0, 3.0)), 0.4);
  CHECK(c.estimate == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(c.sup_norm == doctest::Approx(3.0).epsilon(1e-14));

  const double alpha = 0.4;
  const ScalarField f = ScalarField::from_function(g, [](double x1, double) {
    return Complex(std::cos(x1), 0.0);
  });
  const double h = g.spacing();
  double seminorm = 0.0;
  for (int s = 1; s < g.n(); s *= 2) {
    const double d = s * h;
    const double diff =
        oracle::dense_sup_difference([](double x) { return std::cos(x); }, d);
    if (d <= 1.0) seminorm = std::max(seminorm, diff / std::pow(d, alpha));
    if (std::sqrt(2.0) * d <= 1.0) {
      seminorm = std::max(seminorm, diff / std::pow(std::sqrt(2.0) * d, alpha));
    }
  }
  const auto report = norm_holder(f, alpha);
  CHECK(report.sup_norm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(report.estimate - (1.0 + seminorm)) < 1e-3);
  CHECK(norm_holder(Complex(2.0, 0.0) * f, alpha).estimate ==
        doctest::Approx(2.0 * report.estimate).epsilon(1e-14));
  CHECK_THROWS_AS(norm_holder(f, 1.0), std::invalid_argument);
}

TEST_CASE("vector norms combine components by root sum of squares") {
  const TorusGrid g(64);
  const VectorField3 w = realize(sample(6, g, {true, true, true}), g, 0.3);
  const auto v = norm_neg(w, -1.3);
  double sum = 0.0;
  for (int j = 0; j < 3; ++j) {
    CHECK(v.components[j].estimate == norm_neg(w[j], -1.3).estimate);
    sum += v.components[j].estimate * v.components[j].estimate;
  }
  CHECK(v.estimate == doctest::Approx(std::sqrt(sum)).epsilon(1e-15));
}

TEST_CASE("event gate") {
  const TorusGrid g(64);
  const auto zero = zero_noise(g);
  const auto z = event_gate(zero, 0.3, 1.0, g, 0.25);
  CHECK(z.pass);
  CHECK(z.measured == 0.0);
  CHECK(z.sigma_budget == doctest::Approx(0.25 * 0.25 / 16.0));

  const auto noise = sample(3, g, {false, false, true});
  const double m = gate_statistic(noise, 0.3, g);
  CHECK(m > std::abs(noise.eta0(0)) + std::abs(noise.eta0(1)));
  CHECK_FALSE(event_gate(noise, 0.3, m / 2, g, 0.25).pass);
  CHECK(event_gate(noise, 0.3, 2 * m, g, 0.25).pass);
  CHECK_THROWS_AS(event_gate(noise, 0.3, 0.0, g, 0.25), std::invalid_argument);
}

TEST_CASE("calibrated Lambda admits the requested fraction") {
  const TorusGrid g(32);
  const ZeroMeanFlags flags{false, false, true};
  const double lambda = calibrate_lambda(g, 0.3, flags, 40, 0.9);
  int below = 0;
  for (int s = 0; s < 40; ++s) below += gate_statistic(sample(s, g, flags), 0.3, g) < lambda;
  CHECK(below == 36);
}

TEST_CASE("Young product check") {
  const TorusGrid g(64);
  const ScalarField one = ScalarField::constant(g, 1.0);
  const ScalarField w = noise_field(g, 2);
  CHECK(young_check(one, w, 0.5, -0.3) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(young_check(ScalarField(g, Representation::kPhysical), w, 0.5, -0.3),
                  std::domain_error);
  CHECK_THROWS_AS(young_check(one, w, 0.2, -0.3), std::domain_error);
}
