#include "crspde/solver.hpp"

#include <algorithm>
#include <cmath>

#include "crspde/kernels.hpp"
#include "crspde/norms.hpp"
#include "crspde/spectral.hpp"

namespace crspde {

namespace {

constexpr Complex kI(0.0, 1.0);

ComponentResidual compare(const ScalarField& residual, double scale_rms) {
  const ScalarField phys = residual.to_physical();
  ComponentResidual out;
  out.sup = phys.max_abs();
  out.relative_l2 = scale_rms > 0.0 ? phys.rms() / scale_rms : phys.rms();
  return out;
}

double largest_rms(std::initializer_list<const ScalarField*> terms) {
  double best = 0.0;
  for (const ScalarField* t : terms) best = std::max(best, t->to_physical().rms());
  return best;
}

}  // namespace

const char* abc_mode_name(AbcMode mode) { return mode == AbcMode::kStandard ? "standard" : "zero"; }

const char* solve_status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::kConverged: return "converged";
    case SolveStatus::kMaxIter: return "max_iter";
    case SolveStatus::kDiverged: return "diverged";
    case SolveStatus::kRejected: return "rejected";
  }
  return "unknown";
}

double SolverParams::gamma_norm() const {
  return std::sqrt(gamma[0] * gamma[0] + gamma[1] * gamma[1] + gamma[2] * gamma[2]);
}

std::array<Complex, 3> constants_abc(const SolverParams& params, const NoiseRealization& noise) {
  if (params.abc_mode == AbcMode::kZero) return {0.0, 0.0, 0.0};
  if (!(params.sigma > 0.0)) throw std::invalid_argument("constants_abc: standard mode needs sigma > 0");
  const double c = params.sigma / 4.0;
  const Complex a = kI * params.gamma[1] * noise.eta0(1) / (2.0 * c);
  const Complex b = -kI * params.gamma[0] * noise.eta0(0) / (2.0 * c);
  return {a, b, c};
}

GammaMap::GammaMap(const StochasticObjects& objects, const SolverParams& params,
                   const std::array<Complex, 3>& abc)
    : space_(objects.w.grid(), objects.rule),
      affine_(VectorField3::constant(objects.w.grid(), abc).to_spectral()) {
  const VectorField3 g = objects.xi().scaled(params.gamma);
  for (int j = 0; j < 3; ++j) lifted_noise_[j] = space_.lift(g[j]);
  const auto gt = params.gamma_tilde();
  for (int j = 0; j < 3; ++j) affine_[j] -= gt[j] * objects.zeta[j];
}

VectorField3 GammaMap::operator()(const VectorField3& r) const {
  std::array<std::vector<Complex>, 3> lr, out;
  for (int j = 0; j < 3; ++j) {
    lr[j] = space_.lift(r[j]);
    out[j].resize(lr[j].size());
  }
  kernels::fixed_point_bracket({lr[0], lr[1], lr[2]},
                               {lifted_noise_[0], lifted_noise_[1], lifted_noise_[2]},
                               {out[0], out[1], out[2]});
  VectorField3 bracket{{space_.lower(std::move(out[0])), space_.lower(std::move(out[1])),
                        space_.lower(std::move(out[2]))}};
  VectorField3 result = -2.0 * apply_multiplier(bracket, Multiplier::kG);
  result += affine_;
  return result;
}

VectorField3 gamma_map(const VectorField3& r, const StochasticObjects& objects,
                       const SolverParams& params, const std::array<Complex, 3>& abc) {
  return GammaMap(objects, params, abc)(r);
}

SolveResult solve_fixed_point(const SolverParams& params, const NoiseRealization& noise,
                              const StochasticObjects& objects) {
  if (params.max_iter < 1) throw std::invalid_argument("solve_fixed_point: max_iter must be >= 1");
  if (params.abc_mode == AbcMode::kZero) {
    const auto& flags = noise.zero_mean_flags();
    if (!(flags[0] && flags[1] && flags[2])) {
      throw std::invalid_argument("solve_fixed_point: abc = zero needs all-zero-mean noise");
    }
  }
  const TorusGrid& grid = objects.w.grid();
  SolveResult result(grid);
  result.abc = constants_abc(params, noise);
  if (params.lambda > 0.0) {
    const GateResult gate = event_gate(noise, params.kappa, params.lambda, grid, params.sigma);
    result.gate_measured = gate.measured;
    if (!gate.pass && !params.override_gate) {
      result.status = SolveStatus::kRejected;
      result.r = result.big_r - objects.xi().scaled(params.gamma);
      return result;
    }
  }

  const GammaMap map(objects, params, result.abc);
  int growth = 0;
  for (int it = 0; it < params.max_iter; ++it) {
    VectorField3 next = map(result.big_r);
    const double inc = (next - result.big_r).to_physical().max_abs();
    result.big_r = std::move(next);
    result.iterations = it + 1;
    const bool grew = !result.increment_history.empty() && inc > result.increment_history.back();
    result.increment_history.push_back(inc);
    if (!std::isfinite(inc)) {
      result.status = SolveStatus::kDiverged;
      break;
    }
    if (inc < params.tol) {
      result.status = SolveStatus::kConverged;
      break;
    }
    growth = grew ? growth + 1 : 0;
    if (growth >= 3) {
      result.status = SolveStatus::kDiverged;
      break;
    }
    result.status = SolveStatus::kMaxIter;
  }
  const auto& h = result.increment_history;
  for (std::size_t n = 1; n + 1 < h.size(); ++n) {
    if (h[n] > 0.0) result.contraction_ratio = std::max(result.contraction_ratio, h[n + 1] / h[n]);
  }
  result.r = result.big_r - objects.xi().scaled(params.gamma);
  return result;
}

SolveResult solve_fixed_point(const SolverParams& params, const NoiseRealization& noise,
                              const TorusGrid& grid) {
  return solve_fixed_point(params, noise, build_objects(noise, grid, params.eps, params.rule));
}

double closure_error(const SolveResult& result, const StochasticObjects& objects,
                     const SolverParams& params) {
  const TorusGrid& grid = objects.w.grid();
  VectorField3 rhs = -2.0 * apply_multiplier(cross(result.r, result.r.conj(), objects.rule),
                                             Multiplier::kG);
  rhs -= objects.xi().scaled(params.gamma);
  rhs += VectorField3::constant(grid, result.abc);
  return relative_l2(result.r, rhs);
}

double ResidualReport::max_relative() const {
  double best = 0.0;
  for (const auto& c : components) best = std::max(best, c.relative_l2);
  return best;
}

ResidualReport residual_mcr(const VectorField3& r, const VectorField3& w,
                            const std::array<double, 3>& gamma, ProductRule rule) {
  const VectorField3 dr = apply_multiplier(r, Multiplier::kDzbar);
  const VectorField3 nl = cross(r, r.conj(), rule);
  ResidualReport report;
  for (int j = 0; j < 3; ++j) {
    const ScalarField forcing = Complex(0.0, gamma[j]) * w[j].to_spectral();
    const ScalarField res = dr[j] - nl[j] - forcing;
    report.components[j] = compare(res, largest_rms({&dr[j], &nl[j], &forcing}));
  }
  return report;
}

VectorField3 backlund_b(const VectorField3& r) {
  for (int j = 0; j < 3; ++j) {
    if (std::abs(mean(r[j])) > 1e-8) {
      throw BacklundError("backlund_b: r has a nonzero mean; the transform needs zero-mean r");
    }
  }
  return Complex(0.0, 2.0) * apply_multiplier(r, Multiplier::kGbar);
}

LlgReport residual_llg(const VectorField3& b, const VectorField3& w,
                       const std::array<double, 3>& gamma, ProductRule rule) {
  const VectorField3 lap = apply_multiplier(b, Multiplier::kLaplacian);
  const VectorField3 bx = apply_multiplier(b, Multiplier::kDx);
  const VectorField3 by = apply_multiplier(b, Multiplier::kDy);
  const VectorField3 nl = 2.0 * cross(bx, by, rule);
  LlgReport report;
  for (int j = 0; j < 3; ++j) {
    const ScalarField forcing = Complex(4.0 * gamma[j], 0.0) * w[j].to_spectral();
    const ScalarField res = lap[j] - nl[j] - forcing;
    report.residual.components[j] = compare(res, largest_rms({&lap[j], &nl[j], &forcing}));
  }
  const VectorField3 phys = b.to_physical();
  double imag = 0.0;
  for (int j = 0; j < 3; ++j) {
    imag = std::max(imag, phys[j].max_abs_imag());
    report.b_sup = std::max(report.b_sup, phys[j].max_abs());
  }
  report.imag_ratio = report.b_sup > 0.0 ? imag / report.b_sup : imag;
  return report;
}

}  // namespace crspde
