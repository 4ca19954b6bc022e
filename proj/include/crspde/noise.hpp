#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "crspde/field.hpp"

namespace crspde {

using ZeroMeanFlags = std::array<bool, 3>;

/// Free-form warnings collected along a computation and reported in JSON.
struct Diagnostics {
  std::vector<std::string> warnings;
  void warn(std::string message) { warnings.push_back(std::move(message)); }
};

/// Gaussian Fourier coefficients of a 3D white noise on the 2-torus:
///   v_j = eta0_j + Re sum_{k != 0} eta_{kj} exp(i(k, x)).
///
/// eta0_j ~ N(0, 1); Re and Im of eta_{kj} are independent N(0, 1/2), so
/// E|eta_{kj}|^2 = 1. Coefficients for k and -k are independent. Modes are
/// kept on the symmetric lattice |k_i| <= truncation() and drawn shell by
/// shell (shell = max(|k1|, |k2|)), so a realization sampled with a smaller
/// truncation is an exact prefix of one sampled with a larger truncation.
class NoiseRealization {
 public:
  NoiseRealization(std::uint64_t seed, int truncation, ZeroMeanFlags flags);

  std::uint64_t seed() const { return seed_; }
  int truncation() const { return kmax_; }
  const ZeroMeanFlags& zero_mean_flags() const { return flags_; }

  double eta0(int j) const { return eta0_[j]; }
  void set_eta0(int j, double value) { eta0_[j] = value; }
  /// eta_{kj}; zero outside the truncation and at k = 0.
  Complex eta(int k1, int k2, int j) const;
  void set_eta(int k1, int k2, int j, Complex value);

  bool operator==(const NoiseRealization&) const = default;

 private:
  std::size_t slot(int k1, int k2) const;

  std::uint64_t seed_;
  int kmax_;
  ZeroMeanFlags flags_;
  std::array<double, 3> eta0_{};
  std::array<std::vector<Complex>, 3> eta_;  // (2 kmax + 1)^2 entries each
};

/// Draws a realization truncated to the Nyquist-free modes of `grid`.
NoiseRealization sample(std::uint64_t seed, const TorusGrid& grid, ZeroMeanFlags flags);
/// All coefficients zero (for identities that must vanish).
NoiseRealization zero_noise(const TorusGrid& grid, ZeroMeanFlags flags = {true, true, true});

/// Realizes the mollified noise W^eps on `grid` (real-valued fields, spectral).
/// eps = 0 keeps the truncated series unmollified. Warns when eps is below
/// the grid spacing.
VectorField3 realize(const NoiseRealization& noise, const TorusGrid& grid, double eps,
                     Diagnostics* diagnostics = nullptr);

/// Spectral coefficient of the unmollified component j at k on the grid:
/// eta0_j at k = 0, (eta_{kj} + conj(eta_{-k,j}))/2 otherwise.
Complex noise_coefficient(const NoiseRealization& noise, int k1, int k2, int j);

}  // namespace crspde
