#pragma once

#include <array>
#include <vector>

#include "crspde/field.hpp"

namespace crspde {

/// How quadratic products are formed pseudospectrally.
///
/// kExact: inputs restricted to the symmetric mode set |k_i| <= n/2 - 1, the
/// product is formed on a 3n/2 grid where it is alias free, and the result is
/// projected back onto that set. Bilinear identities such as the product rule
/// then hold to rounding.
/// kTwoThirds: the classic 2/3 rule, inputs and output truncated to
/// |k_i| <= (n - 1)/3 and the product formed on the n grid.
enum class ProductRule { kExact, kTwoThirds };

const char* product_rule_name(ProductRule rule);

/// Physical samples of fields lifted to the product grid of a given rule.
class ProductSpace {
 public:
  ProductSpace(TorusGrid grid, ProductRule rule);

  const TorusGrid& grid() const { return grid_; }
  ProductRule rule() const { return rule_; }
  int lifted_size() const { return m_; }
  int kept_kmax() const { return kmax_; }

  /// Values of f on the m x m product grid (only kept modes contribute).
  std::vector<Complex> lift(const ScalarField& f) const;
  /// Projects product-grid values back to a spectral field on the n grid.
  ScalarField lower(std::vector<Complex> values) const;

 private:
  TorusGrid grid_;
  ProductRule rule_;
  int m_;
  int kmax_;
};

ScalarField multiply(const ScalarField& f, const ScalarField& g, ProductRule rule);
/// (a x b)_1 = a_2 b_3 - a_3 b_2 and cyclic; spectral result.
VectorField3 cross(const VectorField3& a, const VectorField3& b, ProductRule rule);

}  // namespace crspde
