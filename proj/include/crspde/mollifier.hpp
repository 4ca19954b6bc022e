#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace crspde {

/// Raised when a numerical procedure cannot reach its stated accuracy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The standard mollifier rho(y) = C exp(-1/(1 - |y|^2)) on the unit disc of
/// R^2, normalised to unit mass.
///
/// The radial Fourier transform F(t) = int rho(y) exp(-i t y_1) dy is computed
/// from the projection P(x) = int rho(x, y) dy, which is smooth and flat at
/// x = +-1, so the trapezoidal rule converges spectrally. Each evaluation is
/// cross-checked against the half-resolution rule.
class StandardBump {
 public:
  static const StandardBump& instance();

  /// rho at radius r (zero for r >= 1).
  double density(double r) const;
  /// 1 / int exp(-1/(1-|y|^2)) dy.
  double normalization() const { return normalization_; }
  /// F(t); real and even. Throws NumericalError if the two quadrature
  /// resolutions disagree by more than 1e-10.
  double transform(double t) const;

 private:
  StandardBump();

  static constexpr int kIntervals = 2048;
  double normalization_ = 0.0;
  std::vector<double> projection_;  // P at x_i = i / kIntervals, already normalised
};

/// rho_eps^(k) = F(eps |k|) for the mollifier rho_eps(y) = eps^-2 rho(y/eps).
double mollifier_hat(double eps, int k1, int k2);

/// F(eps |k|) sampled on the wrapped mode layout of an n-grid.
class MollifierTable {
 public:
  MollifierTable(double eps, int n);

  double eps() const { return eps_; }
  int n() const { return n_; }
  const std::vector<double>& values() const { return hat_; }
  double at(int k1, int k2) const;

 private:
  double eps_;
  int n_;
  std::vector<double> hat_;
};

/// Shared, lazily built table for (eps, n).
std::shared_ptr<const MollifierTable> mollifier_table(double eps, int n);

}  // namespace crspde
