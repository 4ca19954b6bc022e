#include "crspde/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "crspde/kernels.hpp"
#include "crspde/spectral.hpp"

namespace crspde {

TorusGrid::TorusGrid(int n) : n_(n) {
  if (n < 16 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("TorusGrid: n must be a power of two >= 16, got " +
                                std::to_string(n));
  }
}

ScalarField::ScalarField(TorusGrid grid, Representation rep)
    : grid_(grid), rep_(rep), data_(grid.size(), Complex(0.0, 0.0)) {}

ScalarField::ScalarField(TorusGrid grid, Representation rep, std::vector<Complex> data)
    : grid_(grid), rep_(rep), data_(std::move(data)) {
  if (data_.size() != grid_.size()) {
    throw std::invalid_argument("ScalarField: data size does not match grid");
  }
}

ScalarField ScalarField::constant(TorusGrid grid, Complex value) {
  return ScalarField(grid, Representation::kPhysical, std::vector<Complex>(grid.size(), value));
}

ScalarField ScalarField::from_function(TorusGrid grid,
                                       const std::function<Complex(double, double)>& f) {
  ScalarField out(grid, Representation::kPhysical);
  for (int a = 0; a < grid.n(); ++a) {
    for (int b = 0; b < grid.n(); ++b) out[grid.flat(a, b)] = f(grid.coord(a), grid.coord(b));
  }
  return out;
}

ScalarField ScalarField::to_spectral() const { return crspde::to_spectral(*this); }
ScalarField ScalarField::to_physical() const { return crspde::to_physical(*this); }

Complex ScalarField::coefficient(int k1, int k2) const {
  const int half = grid_.n() / 2;
  if (k1 < -half || k1 >= half || k2 < -half || k2 >= half) return 0.0;
  const std::size_t idx = grid_.flat(grid_.index_of(k1), grid_.index_of(k2));
  return is_spectral() ? data_[idx] : to_spectral()[idx];
}

Complex ScalarField::evaluate(double x1, double x2) const {
  const ScalarField s = to_spectral();
  Complex sum(0.0, 0.0);
  const int n = grid_.n();
  for (int a = 0; a < n; ++a) {
    const int k1 = grid_.wavenumber(a);
    for (int b = 0; b < n; ++b) {
      const Complex c = s[grid_.flat(a, b)];
      if (c == Complex(0.0, 0.0)) continue;
      sum += c * std::polar(1.0, k1 * x1 + grid_.wavenumber(b) * x2);
    }
  }
  return sum;
}

ScalarField ScalarField::conj() const {
  ScalarField out(grid_, rep_);
  if (!is_spectral()) {
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = std::conj(data_[i]);
    return out;
  }
  const int n = grid_.n();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      out.data_[grid_.flat(a, b)] = std::conj(data_[grid_.flat_negated(a, b)]);
    }
  }
  return out;
}

ScalarField ScalarField::real_part() const {
  ScalarField p = to_physical();
  for (auto& v : p.data_) v = Complex(v.real(), 0.0);
  return p;
}

ScalarField ScalarField::imag_part() const {
  ScalarField p = to_physical();
  for (auto& v : p.data_) v = Complex(v.imag(), 0.0);
  return p;
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  if (!(other.grid_ == grid_)) throw std::invalid_argument("ScalarField: grid mismatch");
  const ScalarField rhs = is_spectral() ? other.to_spectral() : other.to_physical();
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  if (!(other.grid_ == grid_)) throw std::invalid_argument("ScalarField: grid mismatch");
  const ScalarField rhs = is_spectral() ? other.to_spectral() : other.to_physical();
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(Complex s) {
  for (auto& v : data_) v *= s;
  return *this;
}

double ScalarField::max_abs() const { return kernels::max_abs(to_physical().data_); }

double ScalarField::max_abs_real() const {
  const ScalarField p = to_physical();
  double best = 0.0;
  for (const auto& v : p.data_) best = std::max(best, std::abs(v.real()));
  return best;
}

double ScalarField::max_abs_imag() const {
  const ScalarField p = to_physical();
  double best = 0.0;
  for (const auto& v : p.data_) best = std::max(best, std::abs(v.imag()));
  return best;
}

double ScalarField::rms() const {
  const ScalarField p = to_physical();
  double sum = 0.0;
  for (const auto& v : p.data_) sum += std::norm(v);
  return std::sqrt(sum / static_cast<double>(p.data_.size()));
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(Complex s, ScalarField a) { return a *= s; }

VectorField3 VectorField3::zeros(TorusGrid grid, Representation rep) {
  return VectorField3{{ScalarField(grid, rep), ScalarField(grid, rep), ScalarField(grid, rep)}};
}

VectorField3 VectorField3::constant(TorusGrid grid, const std::array<Complex, 3>& value) {
  return VectorField3{{ScalarField::constant(grid, value[0]),
                       ScalarField::constant(grid, value[1]),
                       ScalarField::constant(grid, value[2])}};
}

VectorField3 VectorField3::to_spectral() const {
  return VectorField3{{c[0].to_spectral(), c[1].to_spectral(), c[2].to_spectral()}};
}

VectorField3 VectorField3::to_physical() const {
  return VectorField3{{c[0].to_physical(), c[1].to_physical(), c[2].to_physical()}};
}

VectorField3 VectorField3::conj() const {
  return VectorField3{{c[0].conj(), c[1].conj(), c[2].conj()}};
}

VectorField3 VectorField3::scaled(const std::array<double, 3>& s) const {
  VectorField3 out = *this;
  for (int j = 0; j < 3; ++j) out.c[j] *= s[j];
  return out;
}

VectorField3& VectorField3::operator+=(const VectorField3& other) {
  for (int j = 0; j < 3; ++j) c[j] += other.c[j];
  return *this;
}

VectorField3& VectorField3::operator-=(const VectorField3& other) {
  for (int j = 0; j < 3; ++j) c[j] -= other.c[j];
  return *this;
}

double VectorField3::max_abs() const {
  return std::max({c[0].max_abs(), c[1].max_abs(), c[2].max_abs()});
}

VectorField3 operator+(VectorField3 a, const VectorField3& b) { return a += b; }
VectorField3 operator-(VectorField3 a, const VectorField3& b) { return a -= b; }
VectorField3 operator*(Complex s, VectorField3 a) {
  for (auto& f : a.c) f *= s;
  return a;
}

double relative_l2(const ScalarField& a, const ScalarField& b) {
  const double denom = b.rms();
  const double diff = (a - b).rms();
  return denom > 0.0 ? diff / denom : diff;
}

double relative_l2(const VectorField3& a, const VectorField3& b) {
  double num = 0.0, den = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double d = (a[j] - b[j]).rms();
    const double r = b[j].rms();
    num += d * d;
    den += r * r;
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace crspde
