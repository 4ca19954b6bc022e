#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "crspde/field.hpp"
#include "crspde/spectral.hpp"
#include "oracles.hpp"

using namespace crspde;

namespace {

constexpr Complex kI(0.0, 1.0);

ScalarField random_field(const TorusGrid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  ScalarField f(grid, Representation::kPhysical);
  for (auto& v : f.data()) v = Complex(d(rng), d(rng));
  return f;
}

// Smooth random field: a few hundred low modes with decaying amplitudes,
// Nyquist free.
ScalarField smooth_field(const TorusGrid& grid, std::uint64_t seed, int kmax = 12) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  ScalarField f(grid, Representation::kSpectral);
  for (int k1 = -kmax; k1 <= kmax; ++k1) {
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      const double amp = std::exp(-0.1 * (k1 * k1 + k2 * k2));
      f[grid.flat(grid.index_of(k1), grid.index_of(k2))] = amp * Complex(d(rng), d(rng));
    }
  }
  return f.to_physical();
}

}  // namespace

TEST_CASE("grid validation and layout") {
  CHECK_THROWS_AS(TorusGrid(8), std::invalid_argument);
  CHECK_THROWS_AS(TorusGrid(48), std::invalid_argument);
  CHECK_THROWS_AS(TorusGrid(0), std::invalid_argument);
  const TorusGrid g(16);
  CHECK(g.spacing() == doctest::Approx(2.0 * std::numbers::pi / 16));
  CHECK(g.coord(0) == doctest::Approx(-std::numbers::pi));
  CHECK(g.wavenumber(7) == 7);
  CHECK(g.wavenumber(8) == -8);
  CHECK(g.wavenumber(15) == -1);
  CHECK(g.index_of(-1) == 15);
  CHECK(g.flat_negated(1, 0) == g.flat(15, 0));
  CHECK(g.flat_negated(8, 8) == g.flat(8, 8));
}

TEST_CASE("constant field transforms to a single mean coefficient") {
  const TorusGrid g(16);
  const Complex c(2.5, -1.0);
  const ScalarField s = ScalarField::constant(g, c).to_spectral();
  CHECK(std::abs(s[0] - c) < 1e-14);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(std::abs(s[i]) < 1e-14);
}

TEST_CASE("plane wave has one coefficient, matching the direct DFT sum") {
  const TorusGrid g(16);
  const ScalarField f = ScalarField::from_function(g, [](double x1, double) {
    return std::polar(1.0, x1);
  });
  const ScalarField s = f.to_spectral();
  std::vector<Complex> values(f.data().begin(), f.data().end());
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 16; ++b) {
      const int k1 = g.wavenumber(a), k2 = g.wavenumber(b);
      const Complex direct = oracle::dft_coefficient(values, 16, k1, k2);
      CHECK(std::abs(s[g.flat(a, b)] - direct) < 1e-12);
      const Complex expected = (k1 == 1 && k2 == 0) ? 1.0 : 0.0;
      CHECK(std::abs(s[g.flat(a, b)] - expected) < 1e-12);
    }
  }
}

TEST_CASE("random field: transform matches the direct DFT and round trips") {
  const TorusGrid g(16);
  const ScalarField f = random_field(g, 7);
  const ScalarField s = f.to_spectral();
  std::vector<Complex> values(f.data().begin(), f.data().end());
  for (auto [k1, k2] : {std::pair{0, 0}, {3, -5}, {-8, 2}, {7, 7}, {-1, -8}}) {
    const Complex c = s[g.flat(g.index_of(k1), g.index_of(k2))];
    CHECK(std::abs(c - oracle::dft_coefficient(values, 16, k1, k2)) < 1e-12);
  }
  const ScalarField back = s.to_physical();
  CHECK(relative_l2(back, f) < 1e-12);
  CHECK(std::abs(f.evaluate(g.coord(3), g.coord(11)) - f[g.flat(3, 11)]) < 1e-11);
}

TEST_CASE("multiplier symbols") {
  CHECK(symbol(Multiplier::kDx, 3, 4) == Complex(0, 3));
  CHECK(symbol(Multiplier::kDy, 3, 4) == Complex(0, 4));
  CHECK(symbol(Multiplier::kDz, 3, 4) == Complex(2.0, 1.5));
  CHECK(symbol(Multiplier::kDzbar, 3, 4) == Complex(-2.0, 1.5));
  CHECK(symbol(Multiplier::kD1, 3, 4) == symbol(Multiplier::kDx, 3, 4));
  CHECK(symbol(Multiplier::kD2, 3, 4) == symbol(Multiplier::kDy, 3, 4));
  CHECK(std::abs(symbol(Multiplier::kK, 3, 4) - 1.0 / 25) < 1e-16);
  CHECK(symbol(Multiplier::kK, 0, 0) == Complex(0, 0));
  CHECK(symbol(Multiplier::kG, 0, 0) == Complex(0, 0));
  CHECK(symbol(Multiplier::kLaplacian, 3, 4) == Complex(-25, 0));
  for (int k1 = -5; k1 <= 5; ++k1) {
    for (int k2 = -5; k2 <= 5; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      const double k2n = k1 * k1 + k2 * k2;
      CHECK(std::abs(symbol(Multiplier::kG, k1, k2) - Complex(k2, k1) / k2n) < 1e-15);
      CHECK(std::abs(symbol(Multiplier::kGbar, k1, k2) - Complex(-k2, k1) / k2n) < 1e-15);
      CHECK(std::abs(-2.0 * symbol(Multiplier::kDzbar, k1, k2) * symbol(Multiplier::kG, k1, k2) -
                     1.0) < 1e-15);
      CHECK(std::abs(symbol(Multiplier::kG1, k1, k2) - kI * double(k1) / k2n) < 1e-15);
      // conj symmetry of the real-preserving multipliers
      for (auto m : {Multiplier::kK, Multiplier::kD1, Multiplier::kD2, Multiplier::kG1}) {
        CHECK(std::abs(symbol(m, -k1, -k2) - std::conj(symbol(m, k1, k2))) < 1e-15);
      }
    }
  }
}

TEST_CASE("apply_multiplier examples") {
  const TorusGrid g(32);
  const ScalarField e1 = ScalarField::from_function(g, [](double x1, double) {
    return std::polar(1.0, x1);
  });
  CHECK(relative_l2(apply_multiplier(e1, Multiplier::kK).to_physical(), e1) < 1e-13);

  const ScalarField e2 = ScalarField::from_function(g, [](double, double x2) {
    return std::polar(1.0, x2);
  });
  const ScalarField dz = apply_multiplier(e2, Multiplier::kDzbar).to_physical();
  CHECK(relative_l2(dz, -0.5 * e2) < 1e-13);

  // Independent check of the same derivative: 4th-order central differences
  // of the analytic function, on a refined grid, applied to dzbar = (dx + i dy)/2.
  const TorusGrid fine(128);
  const double h = 1e-3;
  const ScalarField e2f = ScalarField::from_function(fine, [](double, double x2) {
    return std::polar(1.0, x2);
  });
  const ScalarField spectral = apply_multiplier(e2f, Multiplier::kDzbar).to_physical();
  const ScalarField fd = ScalarField::from_function(fine, [h](double, double x2) {
    auto f = [](double y) { return std::polar(1.0, y); };
    const Complex dy = (-f(x2 + 2 * h) + 8.0 * f(x2 + h) - 8.0 * f(x2 - h) + f(x2 - 2 * h)) / (12 * h);
    return 0.5 * kI * dy;
  });
  CHECK(relative_l2(spectral, fd) < 1e-9);

  const ScalarField c = ScalarField::constant(g, Complex(3, 1));
  CHECK(apply_multiplier(c, Multiplier::kG).max_abs() < 1e-15);
}

TEST_CASE("mean and zero-mean projection") {
  const TorusGrid g(16);
  const ScalarField c = ScalarField::constant(g, Complex(3, 2));
  CHECK(std::abs(mean(c) - Complex(3, 2)) < 1e-14);
  CHECK(project_zero_mean(c).max_abs() < 1e-14);
  const ScalarField e1 = ScalarField::from_function(g, [](double x1, double) {
    return std::polar(1.0, x1);
  });
  CHECK(std::abs(mean(e1)) < 1e-14);
  const ScalarField f = ScalarField::constant(g, 2.0) + e1;
  CHECK(relative_l2(project_zero_mean(f).to_physical(), e1) < 1e-14);
}

TEST_CASE("Green identity -2 dzbar (G f) = f - [f]") {
  const TorusGrid g(64);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ScalarField f = smooth_field(g, seed);
    const ScalarField lhs =
        -2.0 * apply_multiplier(apply_multiplier(f, Multiplier::kG), Multiplier::kDzbar);
    const ScalarField rhs = f - ScalarField::constant(g, mean(f));
    CHECK((lhs - rhs).max_abs() <= 1e-10 * f.max_abs());
  }
}

TEST_CASE("multiplier algebra: commutativity, realness, G decomposition") {
  const TorusGrid g(32);
  const ScalarField f = random_field(g, 3);
  const ScalarField kd = apply_multiplier(apply_multiplier(f, Multiplier::kK), Multiplier::kD1);
  const ScalarField dk = apply_multiplier(apply_multiplier(f, Multiplier::kD1), Multiplier::kK);
  CHECK(relative_l2(kd, dk) < 1e-15);

  const ScalarField real = smooth_field(g, 11).real_part();
  for (auto m : {Multiplier::kK, Multiplier::kD1, Multiplier::kD2}) {
    const ScalarField out = apply_multiplier(real, m).to_physical();
    CHECK(out.max_abs_imag() <= 1e-12 * std::max(1.0, out.max_abs()));
  }

  const ScalarField gf = apply_multiplier(f, Multiplier::kG);
  const ScalarField decomposed =
      apply_multiplier(f, Multiplier::kG1) - kI * apply_multiplier(f, Multiplier::kG2);
  CHECK(relative_l2(decomposed, gf) < 1e-12);
}

TEST_CASE("truncate_modes keeps the symmetric block") {
  const TorusGrid g(16);
  const ScalarField f = random_field(g, 5).to_spectral();
  const ScalarField t = truncate_modes(f, 3);
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 16; ++b) {
      const bool kept = std::abs(g.wavenumber(a)) <= 3 && std::abs(g.wavenumber(b)) <= 3;
      CHECK(t[g.flat(a, b)] == (kept ? f[g.flat(a, b)] : Complex(0, 0)));
    }
  }
}

TEST_CASE("spectral conjugation matches physical conjugation") {
  const TorusGrid g(16);
  const ScalarField f = random_field(g, 9);
  CHECK(relative_l2(f.to_spectral().conj().to_physical(), f.conj()) < 1e-13);
}
