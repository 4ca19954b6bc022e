#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "crspde/field.hpp"
#include "crspde/noise.hpp"
#include "crspde/products.hpp"

namespace crspde {

/// xi_k = 2i G * v_k together with its real parts: xi_k = xi2[k] + i xi1[k],
/// xi1[k] = 2 G1 * v_k and xi2[k] = 2 G2 * v_k.
struct XiParts {
  VectorField3 xi;
  std::array<ScalarField, 3> xi1;
  std::array<ScalarField, 3> xi2;
};

XiParts build_xi(const VectorField3& w);
XiParts build_xi(const NoiseRealization& noise, const TorusGrid& grid, double eps);

/// theta = xi x conj(xi), formed pointwise under `rule`.
VectorField3 theta_direct(const VectorField3& xi, ProductRule rule);

/// theta through the derivative-of-product form
///   theta_1 = 4i (d1[(K*W_2) xi2[3]] - d2[(K*W_2) xi1[3]])
/// and its cyclic permutations (2 -> 3 -> 1). With `shift` set to a grid
/// index (a, b), the value (K*W_j)(x_ab) is subtracted from K*W_j first.
VectorField3 theta_renormalized(const VectorField3& w, ProductRule rule,
                                std::optional<std::array<int, 2>> shift = std::nullopt);
VectorField3 theta_renormalized(const NoiseRealization& noise, const TorusGrid& grid, double eps,
                                ProductRule rule,
                                std::optional<std::array<int, 2>> shift = std::nullopt);

/// zeta = 2 G * theta, componentwise.
VectorField3 build_zeta(const VectorField3& theta);

/// Everything the solver needs at one mollification scale.
struct StochasticObjects {
  double eps = 0.0;
  std::uint64_t seed = 0;
  ProductRule rule = ProductRule::kExact;
  VectorField3 w;      // mollified noise, spectral
  XiParts parts;       // xi and its real parts
  VectorField3 theta;  // direct product
  VectorField3 zeta;

  const VectorField3& xi() const { return parts.xi; }
};

StochasticObjects build_objects(const NoiseRealization& noise, const TorusGrid& grid, double eps,
                                ProductRule rule, Diagnostics* diagnostics = nullptr);

}  // namespace crspde
