#include "crspde/products.hpp"

#include <cstdlib>
#include <stdexcept>
#include <utility>

#include "crspde/kernels.hpp"
#include "crspde/spectral.hpp"

namespace crspde {

const char* product_rule_name(ProductRule rule) {
  return rule == ProductRule::kExact ? "exact" : "two_thirds";
}

ProductSpace::ProductSpace(TorusGrid grid, ProductRule rule)
    : grid_(grid),
      rule_(rule),
      m_(rule == ProductRule::kExact ? 3 * grid.n() / 2 : grid.n()),
      kmax_(rule == ProductRule::kExact ? grid.n() / 2 - 1 : (grid.n() - 1) / 3) {}

std::vector<Complex> ProductSpace::lift(const ScalarField& f) const {
  if (!(f.grid() == grid_)) throw std::invalid_argument("ProductSpace: grid mismatch");
  const ScalarField s = to_spectral(f);
  std::vector<Complex> out(static_cast<std::size_t>(m_) * m_, Complex(0.0, 0.0));
  const int n = grid_.n();
  for (int a = 0; a < n; ++a) {
    const int k1 = grid_.wavenumber(a);
    if (std::abs(k1) > kmax_) continue;
    const std::size_t row = static_cast<std::size_t>(k1 >= 0 ? k1 : k1 + m_) * m_;
    for (int b = 0; b < n; ++b) {
      const int k2 = grid_.wavenumber(b);
      if (std::abs(k2) > kmax_) continue;
      out[row + (k2 >= 0 ? k2 : k2 + m_)] = s[grid_.flat(a, b)];
    }
  }
  kernels::scale_alternating(out, m_, 1.0);
  fft_inverse(out, m_);
  return out;
}

ScalarField ProductSpace::lower(std::vector<Complex> values) const {
  if (values.size() != static_cast<std::size_t>(m_) * m_) {
    throw std::invalid_argument("ProductSpace::lower: wrong buffer size");
  }
  fft_forward(values, m_);
  kernels::scale_alternating(values, m_, 1.0 / (static_cast<double>(m_) * m_));
  ScalarField out(grid_, Representation::kSpectral);
  const int n = grid_.n();
  for (int a = 0; a < n; ++a) {
    const int k1 = grid_.wavenumber(a);
    if (std::abs(k1) > kmax_) continue;
    const std::size_t row = static_cast<std::size_t>(k1 >= 0 ? k1 : k1 + m_) * m_;
    for (int b = 0; b < n; ++b) {
      const int k2 = grid_.wavenumber(b);
      if (std::abs(k2) > kmax_) continue;
      out[grid_.flat(a, b)] = values[row + (k2 >= 0 ? k2 : k2 + m_)];
    }
  }
  return out;
}

ScalarField multiply(const ScalarField& f, const ScalarField& g, ProductRule rule) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("multiply: grid mismatch");
  const ProductSpace space(f.grid(), rule);
  const auto lf = space.lift(f);
  const auto lg = space.lift(g);
  std::vector<Complex> prod(lf.size());
  kernels::pointwise_product(lf, lg, prod);
  return space.lower(std::move(prod));
}

VectorField3 cross(const VectorField3& a, const VectorField3& b, ProductRule rule) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("cross: grid mismatch");
  const ProductSpace space(a.grid(), rule);
  std::array<std::vector<Complex>, 3> la, lb, out;
  for (int j = 0; j < 3; ++j) {
    la[j] = space.lift(a[j]);
    lb[j] = space.lift(b[j]);
    out[j].resize(la[j].size());
  }
  kernels::cross({la[0], la[1], la[2]}, {lb[0], lb[1], lb[2]}, {out[0], out[1], out[2]});
  return VectorField3{{space.lower(std::move(out[0])), space.lower(std::move(out[1])),
                       space.lower(std::move(out[2]))}};
}

}  // namespace crspde
