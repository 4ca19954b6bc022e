#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crspde/field.hpp"
#include "crspde/noise.hpp"
#include "crspde/products.hpp"
#include "crspde/renorm.hpp"

namespace crspde {

enum class AbcMode { kStandard, kZero };

const char* abc_mode_name(AbcMode mode);

struct SolverParams {
  double kappa = 0.3;
  double sigma = 0.25;
  std::array<double, 3> gamma{0.0, 0.0, 0.0};
  double eps = 0.1;
  double lambda = 0.0;  // event-gate threshold; <= 0 skips the gate
  double tol = 1e-12;   // on the sup norm of the Picard increment
  int max_iter = 50;
  AbcMode abc_mode = AbcMode::kStandard;
  ProductRule rule = ProductRule::kTwoThirds;
  bool override_gate = false;

  std::array<double, 3> gamma_tilde() const {
    return {gamma[1] * gamma[2], gamma[0] * gamma[2], gamma[0] * gamma[1]};
  }
  double gamma_norm() const;
};

/// (a, b, c): c = sigma/4, a = i gamma_2 eta_2 / (2c), b = -i gamma_1 eta_1 / (2c)
/// in standard mode; all zero in zero mode. Throws std::invalid_argument for
/// standard mode with sigma = 0.
std::array<Complex, 3> constants_abc(const SolverParams& params, const NoiseRealization& noise);

/// The fixed-point map
///   Gamma(R) = -2G * (R x R^ - (gamma xi) x R^ - R x (gamma xi^)) - gamma~ zeta + (a, b, c)
/// with products formed under the objects' rule. gamma xi is lifted once.
class GammaMap {
 public:
  GammaMap(const StochasticObjects& objects, const SolverParams& params,
           const std::array<Complex, 3>& abc);

  VectorField3 operator()(const VectorField3& r) const;

 private:
  ProductSpace space_;
  std::array<std::vector<Complex>, 3> lifted_noise_;
  VectorField3 affine_;  // -gamma~ zeta + (a, b, c), spectral
};

VectorField3 gamma_map(const VectorField3& r, const StochasticObjects& objects,
                       const SolverParams& params, const std::array<Complex, 3>& abc);

enum class SolveStatus { kConverged, kMaxIter, kDiverged, kRejected };

const char* solve_status_name(SolveStatus status);

struct SolveResult {
  explicit SolveResult(const TorusGrid& grid)
      : big_r(VectorField3::zeros(grid, Representation::kSpectral)),
        r(VectorField3::zeros(grid, Representation::kSpectral)) {}

  SolveStatus status = SolveStatus::kMaxIter;
  VectorField3 big_r;  // R
  VectorField3 r;      // r = R - gamma xi
  std::array<Complex, 3> abc{};
  int iterations = 0;  // applications of the map
  std::vector<double> increment_history;
  /// max over n >= 1 of increment[n+1] / increment[n]; 0 when undefined.
  double contraction_ratio = 0.0;
  double gate_measured = 0.0;

  bool converged() const { return status == SolveStatus::kConverged; }
};

/// Picard iteration from R_0 = 0 until the sup-norm increment drops below
/// tol, max_iter is reached, or the increment grows three times in a row.
/// When params.lambda > 0 the event gate is checked first and a failing
/// realization is rejected unless override_gate is set.
SolveResult solve_fixed_point(const SolverParams& params, const NoiseRealization& noise,
                              const StochasticObjects& objects);
SolveResult solve_fixed_point(const SolverParams& params, const NoiseRealization& noise,
                              const TorusGrid& grid);

/// Relative L2 distance between r and -2G * (r x r^) - gamma xi + (a, b, c).
double closure_error(const SolveResult& result, const StochasticObjects& objects,
                     const SolverParams& params);

struct ComponentResidual {
  double relative_l2 = 0.0;
  double sup = 0.0;
};

struct ResidualReport {
  std::array<ComponentResidual, 3> components;
  double max_relative() const;
};

/// d_zbar r - (r x r^ + i gamma W), products under `rule`. Each relative
/// norm is taken against the largest of the three terms.
ResidualReport residual_mcr(const VectorField3& r, const VectorField3& w,
                            const std::array<double, 3>& gamma, ProductRule rule);

class BacklundError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// B = 2i Gbar * r. Throws BacklundError when some |mean r_j| > 1e-8.
VectorField3 backlund_b(const VectorField3& r);

struct LlgReport {
  ResidualReport residual;  // Delta B - 2 dx B x dy B - 4 gamma W
  double imag_ratio = 0.0;  // ||Im B||_inf / ||B||_inf
  double b_sup = 0.0;
};

LlgReport residual_llg(const VectorField3& b, const VectorField3& w,
                       const std::array<double, 3>& gamma, ProductRule rule);

}  // namespace crspde
