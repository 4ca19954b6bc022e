#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crspde/field.hpp"
#include "crspde/noise.hpp"

namespace crspde {

/// Test functions for the pairings f(phi^lambda_x), with
/// phi^lambda_x(y) = lambda^-2 phi((y - x)/lambda).
///
/// kBump uses the standard mollifier profile itself (unit integral). kD1 and
/// kD2 use its first partial derivatives; they integrate to zero and serve as
/// a second family for comparison.
enum class BumpVariant { kBump, kD1, kD2 };

/// Dyadic scales lambda = 2^-m, m = m_min..m_max, restricted to the resolved
/// window [4 h, 1]. An unset m_max means "as fine as the grid allows".
struct ScaleWindow {
  int m_min = 0;
  std::optional<int> m_max;

  std::vector<double> scales(const TorusGrid& grid) const;
};

/// Largest m with 2^-m >= 4 h.
int finest_resolved_level(const TorusGrid& grid);

/// Pairings of f with phi^lambda_x at every grid centre x (physical field),
/// computed spectrally as sum_k f^(k) phi^(lambda k) e^{i(k, x)}.
/// Requires lambda >= 2 h.
ScalarField pair_all(const ScalarField& f, double lambda, BumpVariant variant = BumpVariant::kBump);

struct NormReport {
  double alpha = 0.0;
  std::vector<double> scales;     // lambda values, or |h| for Hölder reports
  std::vector<double> per_scale;  // the quantity maximised over
  double sup_norm = 0.0;          // Hölder reports only
  double estimate = 0.0;
};

/// max over dyadic lambda of lambda^-alpha sup_x |f(phi^lambda_x)|, for
/// -2 < alpha < 0.
NormReport norm_neg(const ScalarField& f, double alpha, const ScaleWindow& window = {},
                    BumpVariant variant = BumpVariant::kBump);

/// ||f||_inf + max over offsets h of sup_x |f(x + h) - f(x)| / |h|^alpha.
/// Offsets are 2^j grid cells along (1,0), (0,1), (1,1), (1,-1) with |h| <= 1.
NormReport norm_holder(const ScalarField& f, double alpha);

/// Root-sum-square of the component estimates.
struct VectorNormReport {
  std::array<NormReport, 3> components;
  double estimate = 0.0;
};

VectorNormReport norm_neg(const VectorField3& f, double alpha, const ScaleWindow& window = {},
                          BumpVariant variant = BumpVariant::kBump);
VectorNormReport norm_holder(const VectorField3& f, double alpha);

struct GateResult {
  bool pass = false;
  double measured = 0.0;
  double sigma_budget = 0.0;  // sigma^2 / (16 Lambda)
};

/// ||W||_{-1-kappa} + |eta_1| + |eta_2| < Lambda, with W the grid-truncated
/// (unmollified) noise.
GateResult event_gate(const NoiseRealization& noise, double kappa, double lambda,
                      const TorusGrid& grid, double sigma);

/// The measured gate statistic of `event_gate`.
double gate_statistic(const NoiseRealization& noise, double kappa, const TorusGrid& grid);

/// Empirical quantile of the gate statistic over seeds 0..samples-1.
double calibrate_lambda(const TorusGrid& grid, double kappa, ZeroMeanFlags flags,
                        int samples = 100, double quantile = 0.95,
                        std::uint64_t first_seed = 0);

/// norm_neg(f g, beta) / (norm_holder(f, alpha) norm_neg(g, beta)).
/// Throws std::domain_error when the denominator vanishes or alpha + beta <= 0.
double young_check(const ScalarField& f, const ScalarField& g, double alpha, double beta,
                   const ScaleWindow& window = {});

}  // namespace crspde
