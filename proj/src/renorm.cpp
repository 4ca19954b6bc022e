#include "crspde/renorm.hpp"

#include "crspde/spectral.hpp"

namespace crspde {

namespace {

constexpr Complex kI(0.0, 1.0);

// Cyclic successor of a component index: 0 -> 1 -> 2 -> 0.
int next(int j) { return (j + 1) % 3; }

}  // namespace

XiParts build_xi(const VectorField3& w) {
  XiParts out{VectorField3::zeros(w.grid(), Representation::kSpectral), {w[0], w[1], w[2]},
              {w[0], w[1], w[2]}};
  for (int j = 0; j < 3; ++j) {
    out.xi1[j] = 2.0 * apply_multiplier(w[j], Multiplier::kG1);
    out.xi2[j] = 2.0 * apply_multiplier(w[j], Multiplier::kG2);
    out.xi[j] = out.xi2[j] + kI * out.xi1[j];
  }
  return out;
}

XiParts build_xi(const NoiseRealization& noise, const TorusGrid& grid, double eps) {
  return build_xi(realize(noise, grid, eps));
}

VectorField3 theta_direct(const VectorField3& xi, ProductRule rule) {
  return cross(xi, xi.conj(), rule);
}

VectorField3 theta_renormalized(const VectorField3& w, ProductRule rule,
                                std::optional<std::array<int, 2>> shift) {
  const XiParts parts = build_xi(w);
  VectorField3 out = VectorField3::zeros(w.grid(), Representation::kSpectral);
  for (int j = 0; j < 3; ++j) {
    const int p = next(j), q = next(p);
    ScalarField u = apply_multiplier(w[p], Multiplier::kK);
    if (shift) {
      const ScalarField phys = u.to_physical();
      u[0] -= phys[w.grid().flat((*shift)[0], (*shift)[1])];
    }
    const ScalarField a = apply_multiplier(multiply(u, parts.xi2[q], rule), Multiplier::kD1);
    const ScalarField b = apply_multiplier(multiply(u, parts.xi1[q], rule), Multiplier::kD2);
    out[j] = Complex(0.0, 4.0) * (a - b);
  }
  return out;
}

VectorField3 theta_renormalized(const NoiseRealization& noise, const TorusGrid& grid, double eps,
                                ProductRule rule, std::optional<std::array<int, 2>> shift) {
  return theta_renormalized(realize(noise, grid, eps), rule, shift);
}

VectorField3 build_zeta(const VectorField3& theta) {
  return 2.0 * apply_multiplier(theta, Multiplier::kG);
}

StochasticObjects build_objects(const NoiseRealization& noise, const TorusGrid& grid, double eps,
                                ProductRule rule, Diagnostics* diagnostics) {
  VectorField3 w = realize(noise, grid, eps, diagnostics);
  XiParts parts = build_xi(w);
  VectorField3 theta = theta_direct(parts.xi, rule);
  VectorField3 zeta = build_zeta(theta);
  return StochasticObjects{eps,           noise.seed(),     rule, std::move(w), std::move(parts),
                           std::move(theta), std::move(zeta)};
}

}  // namespace crspde
