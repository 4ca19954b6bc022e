#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace crspde {

using Complex = std::complex<double>;

/// Uniform n x n grid on the torus [-pi, pi)^2.
///
/// Point (a, b) sits at (-pi + a*h, -pi + b*h) with h = 2*pi/n. Storage is
/// row-major with the first coordinate as the slow index. Wavenumbers use the
/// wrapped layout: index i holds k = i for i < n/2 and k = i - n otherwise, so
/// the Nyquist mode -n/2 is the only unpaired one.
class TorusGrid {
 public:
  /// Throws std::invalid_argument unless n is a power of two and n >= 16.
  explicit TorusGrid(int n);

  int n() const { return n_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }
  double spacing() const { return 2.0 * std::numbers::pi / n_; }
  double coord(int index) const { return -std::numbers::pi + index * spacing(); }

  int wavenumber(int index) const { return index < n_ / 2 ? index : index - n_; }
  int index_of(int k) const { return k >= 0 ? k : k + n_; }
  std::size_t flat(int a, int b) const {
    return static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b);
  }
  /// Flat index of the wrapped mode -k (the Nyquist mode maps to itself).
  std::size_t flat_negated(int a, int b) const {
    return flat((n_ - a) % n_, (n_ - b) % n_);
  }
  /// Largest |k_i| kept by the symmetric (Nyquist-free) mode set.
  int resolved_kmax() const { return n_ / 2 - 1; }

  bool operator==(const TorusGrid&) const = default;

 private:
  int n_;
};

enum class Representation { kPhysical, kSpectral };

/// Complex scalar field on a TorusGrid, held either as grid samples or as
/// Fourier coefficients.
///
/// Spectral coefficients c(k) satisfy f(x) = sum_k c(k) exp(i(k, x)) at the
/// grid points, so the forward transform carries the 1/n^2 factor and c(0) is
/// the mean. Fields are values: conversions return new fields.
class ScalarField {
 public:
  ScalarField(TorusGrid grid, Representation rep);
  ScalarField(TorusGrid grid, Representation rep, std::vector<Complex> data);

  static ScalarField constant(TorusGrid grid, Complex value);
  static ScalarField from_function(TorusGrid grid,
                                   const std::function<Complex(double, double)>& f);

  const TorusGrid& grid() const { return grid_; }
  Representation representation() const { return rep_; }
  bool is_spectral() const { return rep_ == Representation::kSpectral; }

  std::span<const Complex> data() const { return data_; }
  std::span<Complex> data() { return data_; }
  Complex operator[](std::size_t i) const { return data_[i]; }
  Complex& operator[](std::size_t i) { return data_[i]; }

  ScalarField to_spectral() const;
  ScalarField to_physical() const;

  /// Spectral coefficient at wavenumber (k1, k2); converts if needed.
  Complex coefficient(int k1, int k2) const;
  /// Evaluates the trigonometric interpolant at an arbitrary point.
  Complex evaluate(double x1, double x2) const;

  /// Pointwise complex conjugate; in spectral form c(k) -> conj(c(-k)).
  ScalarField conj() const;
  ScalarField real_part() const;
  ScalarField imag_part() const;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(Complex s);

  /// Largest absolute grid value.
  double max_abs() const;
  double max_abs_real() const;
  double max_abs_imag() const;
  /// Root-mean-square of grid values (discrete L2 norm normalized by area).
  double rms() const;

 private:
  TorusGrid grid_;
  Representation rep_;
  std::vector<Complex> data_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(Complex s, ScalarField a);

/// Ordered triple of scalar fields (the C^3-valued unknowns).
struct VectorField3 {
  std::array<ScalarField, 3> c;

  static VectorField3 zeros(TorusGrid grid, Representation rep);
  static VectorField3 constant(TorusGrid grid, const std::array<Complex, 3>& value);

  ScalarField& operator[](int j) { return c[j]; }
  const ScalarField& operator[](int j) const { return c[j]; }
  const TorusGrid& grid() const { return c[0].grid(); }

  VectorField3 to_spectral() const;
  VectorField3 to_physical() const;
  VectorField3 conj() const;
  /// Componentwise scaling (gamma * xi in the solver).
  VectorField3 scaled(const std::array<double, 3>& s) const;

  VectorField3& operator+=(const VectorField3& other);
  VectorField3& operator-=(const VectorField3& other);

  double max_abs() const;
};

VectorField3 operator+(VectorField3 a, const VectorField3& b);
VectorField3 operator-(VectorField3 a, const VectorField3& b);
VectorField3 operator*(Complex s, VectorField3 a);

/// Relative discrete L2 distance ||a - b|| / ||b|| (||b|| = 0 gives ||a||).
double relative_l2(const ScalarField& a, const ScalarField& b);
double relative_l2(const VectorField3& a, const VectorField3& b);

}  // namespace crspde
