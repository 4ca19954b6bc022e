#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "crspde/noise.hpp"
#include "crspde/norms.hpp"
#include "crspde/products.hpp"
#include "crspde/solver.hpp"

namespace crspde {

inline constexpr int kSchemaVersion = 1;
const char* code_version();

/// Parameters shared by every subcommand. A config file holds one
/// `key = value` pair per line (`#` starts a comment); the keys are those of
/// `apply_setting`. Command-line flags are applied afterwards and win.
struct ExperimentConfig {
  std::string subcommand;
  int n = 256;
  double kappa = 0.3;
  double sigma = 0.25;
  /// Unset: |gamma| = sigma^2 / (32 Lambda) along (1, 1, 1)/sqrt(3).
  std::optional<std::array<double, 3>> gamma;
  double eps = 0.1;  // single-scale runs
  std::vector<double> eps_list{0.4, 0.2, 0.1, 0.05, 0.025};
  std::vector<std::uint64_t> seed_list{0};
  AbcMode abc_mode = AbcMode::kStandard;
  std::optional<double> lambda;  // unset = calibrate ("auto")
  bool dealias = true;
  std::string output_dir;
  std::vector<std::string> formats{"json"};
  ZeroMeanFlags zero_mean{false, false, true};
  double tol = 1e-12;
  int max_iter = 50;
  int calibration_samples = 100;
  bool override_gate = false;
  double calibration_quantile = 0.95;

  ProductRule rule() const { return dealias ? ProductRule::kTwoThirds : ProductRule::kExact; }
  bool wants(const std::string& format) const;
};

/// Sets one key (n, kappa, sigma, gamma, eps, eps_list, seeds, abc, lambda,
/// dealias, out, formats, zero_mean, tol, max_iter, calibration_samples,
/// calibration_quantile, override_gate). Throws std::invalid_argument on unknown keys or
/// malformed values.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);
void load_config_file(ExperimentConfig& config, const std::filesystem::path& path);
/// Checks the documented invariants; `need_eps_list` adds the eps_list rules
/// (strictly decreasing, each >= 2h, at least three entries).
void validate(const ExperimentConfig& config, bool need_eps_list);

/// "1,2,5" or "a:b" (half open) or a mix such as "0:3,10".
std::vector<std::uint64_t> parse_seed_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

nlohmann::ordered_json to_json(const ExperimentConfig& config);

/// Lambda from the config, or the calibrated quantile of the gate statistic.
double resolve_lambda(const ExperimentConfig& config);
/// Solver parameters for one scale; the gate-scaled gamma is used when the
/// config leaves gamma unset.
SolverParams solver_params(const ExperimentConfig& config, double eps, double lambda);

struct RateFit {
  std::vector<std::pair<double, double>> points;  // (eps, error)
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::string reference;
  /// The slope is only meaningful with three or more points.
  bool enough_points() const { return points.size() >= 3; }
};

/// Least squares of log(error) against log(eps). Needs two or more points
/// with positive eps and error.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points, std::string reference = {});

struct RateRow {
  double eps = 0.0;
  double xi_error = 0.0;
  double zeta_error = 0.0;
  std::optional<double> r_error;
  double zeta_norm = 0.0;  // ||zeta^eps||_{1-kappa}
  std::string solve_status;
};

struct RateStudy {
  std::uint64_t seed = 0;
  double reference_eps = 0.0;
  std::vector<RateRow> rows;  // coarse to fine, reference excluded
  double reference_zeta_norm = 0.0;
  RateFit xi;
  RateFit zeta;
  std::optional<RateFit> r;  // absent when a solve did not converge
  std::string r_abort_reason;
};

/// One realization shared by every eps; errors against the finest eps.
RateStudy run_rate_study(const ExperimentConfig& config, std::uint64_t seed, double lambda);
std::vector<RateStudy> run_rate_studies(const ExperimentConfig& config);

struct EnsembleRecord {
  std::uint64_t seed = 0;
  GateResult gate;
  std::string status;
  int iterations = 0;
  double contraction_ratio = 0.0;
  double closure_error = 0.0;
  double r_holder_norm = 0.0;  // ||R||_{1-kappa} proxy
  std::optional<double> mcr_residual;
  std::string error;
};

struct EnsembleSummary {
  std::vector<EnsembleRecord> records;  // sorted by seed
  double lambda = 0.0;
  double pass_fraction = 0.0;
  int converged = 0;
  double max_contraction_ratio = 0.0;
  double gate_median = 0.0;
  double gate_q95 = 0.0;
};

/// Gate, solve and diagnostics for every seed at config.eps.
EnsembleSummary run_ensemble(const ExperimentConfig& config);

/// {schema_version, kind, code_version, params} with no timestamps.
nlohmann::ordered_json report_envelope(const std::string& kind, const ExperimentConfig& config);
nlohmann::ordered_json to_json(const RateFit& fit);
nlohmann::ordered_json to_json(const RateStudy& study);
nlohmann::ordered_json to_json(const EnsembleSummary& summary);

/// Structural check of a report; returns the list of violations.
std::vector<std::string> validate_report(const nlohmann::json& report);

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& report);
void write_rate_csv(const std::filesystem::path& path, const std::vector<RateStudy>& studies);
void write_ensemble_csv(const std::filesystem::path& path, const EnsembleSummary& summary);

}  // namespace crspde
