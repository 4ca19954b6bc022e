#include "crspde/experiments.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "crspde/kernels.hpp"
#include "crspde/norms.hpp"
#include "crspde/renorm.hpp"

#ifndef CRSPDE_VERSION
#define CRSPDE_VERSION "unknown"
#endif

namespace crspde {

const char* code_version() { return CRSPDE_VERSION; }

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw std::invalid_argument("config: '" + key + "' expects a number, got '" + text + "'");
  }
  return v;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& text) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("config: '" + key + "' expects an integer, got '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "1" || t == "true" || t == "on" || t == "yes") return true;
  if (t == "0" || t == "false" || t == "off" || t == "no") return false;
  throw std::invalid_argument("config: '" + key + "' expects a boolean, got '" + text + "'");
}

double quantile_of(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * values.size()));
  return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
}

template <typename T>
nlohmann::ordered_json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

bool ExperimentConfig::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      out.push_back(parse_int<std::uint64_t>("seeds", item));
      continue;
    }
    const auto lo = parse_int<std::uint64_t>("seeds", trim(item.substr(0, colon)));
    const auto hi = parse_int<std::uint64_t>("seeds", trim(item.substr(colon + 1)));
    if (hi <= lo) throw std::invalid_argument("config: empty seed range '" + item + "'");
    for (auto s = lo; s < hi; ++s) out.push_back(s);
  }
  if (out.empty()) throw std::invalid_argument("config: seed list is empty");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_double("list", item));
  return out;
}

void apply_setting(ExperimentConfig& config, const std::string& key_in, const std::string& value_in) {
  const std::string key = trim(key_in);
  const std::string value = trim(value_in);
  if (key == "n") {
    config.n = parse_int<int>(key, value);
  } else if (key == "kappa") {
    config.kappa = parse_double(key, value);
  } else if (key == "sigma") {
    config.sigma = parse_double(key, value);
  } else if (key == "gamma") {
    if (value == "auto") {
      config.gamma.reset();
    } else {
      const auto g = parse_double_list(value);
      if (g.size() != 3) throw std::invalid_argument("config: gamma needs three components");
      config.gamma = std::array<double, 3>{g[0], g[1], g[2]};
    }
  } else if (key == "eps") {
    config.eps = parse_double(key, value);
  } else if (key == "eps_list") {
    config.eps_list = parse_double_list(value);
  } else if (key == "seeds") {
    config.seed_list = parse_seed_list(value);
  } else if (key == "abc") {
    if (value == "standard") {
      config.abc_mode = AbcMode::kStandard;
    } else if (value == "zero") {
      config.abc_mode = AbcMode::kZero;
    } else {
      throw std::invalid_argument("config: abc must be 'standard' or 'zero'");
    }
  } else if (key == "lambda") {
    if (value == "auto") {
      config.lambda.reset();
    } else {
      config.lambda = parse_double(key, value);
    }
  } else if (key == "dealias") {
    config.dealias = parse_bool(key, value);
  } else if (key == "out") {
    config.output_dir = value;
  } else if (key == "formats") {
    config.formats = split(value, ',');
  } else if (key == "zero_mean") {
    const auto parts = split(value, ',');
    if (parts.size() != 3) throw std::invalid_argument("config: zero_mean needs three booleans");
    for (int j = 0; j < 3; ++j) config.zero_mean[j] = parse_bool(key, parts[j]);
  } else if (key == "tol") {
    config.tol = parse_double(key, value);
  } else if (key == "max_iter") {
    config.max_iter = parse_int<int>(key, value);
  } else if (key == "calibration_samples") {
    config.calibration_samples = parse_int<int>(key, value);
  } else if (key == "override_gate") {
    config.override_gate = parse_bool(key, value);
  } else if (key == "calibration_quantile") {
    config.calibration_quantile = parse_double(key, value);
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

void load_config_file(ExperimentConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path.string());
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(number) + " has no '='");
    }
    apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
  }
}

void validate(const ExperimentConfig& config, bool need_eps_list) {
  const TorusGrid grid(config.n);
  if (!(config.kappa > 0.0 && config.kappa < 0.5)) {
    throw std::invalid_argument("config: kappa must lie in (0, 1/2)");
  }
  if (!(config.sigma > 0.0)) throw std::invalid_argument("config: sigma must be positive");
  if (config.seed_list.empty()) throw std::invalid_argument("config: seed list is empty");
  if (config.lambda && !(*config.lambda > 0.0)) {
    throw std::invalid_argument("config: lambda must be positive or auto");
  }
  if (!(config.eps >= 0.0)) throw std::invalid_argument("config: eps must be >= 0");
  if (!(config.tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
  if (config.max_iter < 1) throw std::invalid_argument("config: max_iter must be >= 1");
  if (config.calibration_samples < 1) {
    throw std::invalid_argument("config: calibration_samples must be >= 1");
  }
  for (const auto& f : config.formats) {
    if (f != "json" && f != "csv" && f != "crf1") {
      throw std::invalid_argument("config: unknown format '" + f + "'");
    }
  }
  if (config.abc_mode == AbcMode::kZero &&
      !(config.zero_mean[0] && config.zero_mean[1] && config.zero_mean[2])) {
    throw std::invalid_argument("config: abc = zero requires zero_mean = true,true,true");
  }
  if (!need_eps_list) return;
  if (config.eps_list.size() < 3) {
    throw std::invalid_argument("config: eps_list needs at least three values");
  }
  for (std::size_t i = 0; i < config.eps_list.size(); ++i) {
    if (config.eps_list[i] < 2.0 * grid.spacing()) {
      throw std::invalid_argument("config: eps_list entries must be >= 2h");
    }
    if (i > 0 && !(config.eps_list[i] < config.eps_list[i - 1])) {
      throw std::invalid_argument("config: eps_list must be strictly decreasing");
    }
  }
}

nlohmann::ordered_json to_json(const ExperimentConfig& config) {
  nlohmann::ordered_json j;
  j["subcommand"] = config.subcommand;
  j["n"] = config.n;
  j["kappa"] = config.kappa;
  j["sigma"] = config.sigma;
  j["gamma"] = config.gamma ? nlohmann::ordered_json(*config.gamma) : nlohmann::ordered_json("auto");
  j["eps"] = config.eps;
  j["eps_list"] = config.eps_list;
  j["seeds"] = config.seed_list;
  j["abc"] = abc_mode_name(config.abc_mode);
  j["lambda"] = config.lambda ? nlohmann::ordered_json(*config.lambda) : nlohmann::ordered_json("auto");
  j["dealias"] = config.dealias;
  j["product_rule"] = product_rule_name(config.rule());
  j["formats"] = config.formats;
  j["zero_mean"] = {config.zero_mean[0], config.zero_mean[1], config.zero_mean[2]};
  j["tol"] = config.tol;
  j["max_iter"] = config.max_iter;
  j["calibration_samples"] = config.calibration_samples;
  j["calibration_quantile"] = config.calibration_quantile;
  j["override_gate"] = config.override_gate;
  return j;
}

double resolve_lambda(const ExperimentConfig& config) {
  if (config.lambda) return *config.lambda;
  return calibrate_lambda(TorusGrid(config.n), config.kappa, config.zero_mean,
                          config.calibration_samples, config.calibration_quantile);
}

SolverParams solver_params(const ExperimentConfig& config, double eps, double lambda) {
  SolverParams p;
  p.kappa = config.kappa;
  p.sigma = config.sigma;
  p.eps = eps;
  p.lambda = lambda;
  p.tol = config.tol;
  p.max_iter = config.max_iter;
  p.abc_mode = config.abc_mode;
  p.rule = config.rule();
  p.override_gate = config.override_gate;
  if (config.gamma) {
    p.gamma = *config.gamma;
  } else {
    const double g = config.sigma * config.sigma / (32.0 * lambda) / std::sqrt(3.0);
    p.gamma = {g, g, g};
  }
  return p;
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& points, std::string reference) {
  if (points.size() < 2) throw std::invalid_argument("fit_rate: need at least two points");
  RateFit fit;
  fit.points = points;
  fit.reference = std::move(reference);
  double sx = 0.0, sy = 0.0;
  std::vector<double> xs, ys;
  for (const auto& [eps, err] : points) {
    if (!(eps > 0.0) || !(err > 0.0)) {
      throw std::invalid_argument("fit_rate: eps and error must be positive");
    }
    xs.push_back(std::log(eps));
    ys.push_back(std::log(err));
    sx += xs.back();
    sy += ys.back();
  }
  const double m = static_cast<double>(xs.size());
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_rate: eps values must differ");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += e * e;
  }
  fit.r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

RateStudy run_rate_study(const ExperimentConfig& config, std::uint64_t seed, double lambda) {
  const TorusGrid grid(config.n);
  const NoiseRealization noise = sample(seed, grid, config.zero_mean);
  const ProductRule rule = config.rule();
  const double kappa = config.kappa;

  RateStudy study;
  study.seed = seed;
  study.reference_eps = config.eps_list.back();

  const GateResult gate = event_gate(noise, kappa, lambda, grid, config.sigma);
  bool solve_ok = gate.pass;
  if (!gate.pass) study.r_abort_reason = "event gate rejected the realization";

  SolverParams params = solver_params(config, study.reference_eps, lambda);
  params.lambda = 0.0;  // gate already evaluated
  const StochasticObjects ref = build_objects(noise, grid, study.reference_eps, rule);
  study.reference_zeta_norm = norm_holder(ref.zeta, 1.0 - kappa).estimate;
  std::optional<SolveResult> ref_solve;
  if (solve_ok) {
    ref_solve = solve_fixed_point(params, noise, ref);
    if (!ref_solve->converged()) {
      solve_ok = false;
      study.r_abort_reason = std::string("reference solve ") + solve_status_name(ref_solve->status);
    }
  }

  std::vector<std::pair<double, double>> xi_pts, zeta_pts, r_pts;
  for (std::size_t i = 0; i + 1 < config.eps_list.size(); ++i) {
    const double eps = config.eps_list[i];
    const StochasticObjects obj = build_objects(noise, grid, eps, rule);
    RateRow row;
    row.eps = eps;
    row.xi_error = norm_neg(obj.xi() - ref.xi(), -kappa).estimate;
    row.zeta_error = norm_holder(obj.zeta - ref.zeta, 1.0 - kappa).estimate;
    row.zeta_norm = norm_holder(obj.zeta, 1.0 - kappa).estimate;
    if (solve_ok) {
      params.eps = eps;
      const SolveResult res = solve_fixed_point(params, noise, obj);
      row.solve_status = solve_status_name(res.status);
      if (res.converged()) {
        row.r_error = norm_neg(res.r - ref_solve->r, -kappa).estimate;
      } else {
        solve_ok = false;
        study.r_abort_reason = "solve at eps = " + std::to_string(eps) + " " + row.solve_status;
      }
    }
    xi_pts.emplace_back(eps, row.xi_error);
    zeta_pts.emplace_back(eps, row.zeta_error);
    if (row.r_error) r_pts.emplace_back(eps, *row.r_error);
    study.rows.push_back(std::move(row));
  }
  const std::string reference = "finest eps = " + std::to_string(study.reference_eps);
  study.xi = fit_rate(xi_pts, reference);
  study.zeta = fit_rate(zeta_pts, reference);
  if (solve_ok) study.r = fit_rate(r_pts, reference);
  return study;
}

std::vector<RateStudy> run_rate_studies(const ExperimentConfig& config) {
  validate(config, true);
  const double lambda = resolve_lambda(config);
  std::vector<RateStudy> out(config.seed_list.size());
  std::vector<std::string> errors(config.seed_list.size());
#pragma omp parallel for schedule(dynamic) num_threads(kernels::thread_count())
  for (std::size_t i = 0; i < config.seed_list.size(); ++i) {
    try {
      out[i] = run_rate_study(config, config.seed_list[i], lambda);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw std::runtime_error("rate study failed: " + e);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.seed < b.seed; });
  return out;
}

EnsembleSummary run_ensemble(const ExperimentConfig& config) {
  validate(config, false);
  const TorusGrid grid(config.n);
  EnsembleSummary summary;
  summary.lambda = resolve_lambda(config);
  SolverParams params = solver_params(config, config.eps, summary.lambda);
  params.lambda = 0.0;  // the gate is evaluated per record below

  std::vector<EnsembleRecord> records(config.seed_list.size());
#pragma omp parallel for schedule(dynamic) num_threads(kernels::thread_count())
  for (std::size_t i = 0; i < records.size(); ++i) {
    EnsembleRecord& rec = records[i];
    rec.seed = config.seed_list[i];
    try {
      const NoiseRealization noise = sample(rec.seed, grid, config.zero_mean);
      rec.gate = event_gate(noise, config.kappa, summary.lambda, grid, config.sigma);
      if (!rec.gate.pass) {
        rec.status = solve_status_name(SolveStatus::kRejected);
        continue;
      }
      const StochasticObjects obj = build_objects(noise, grid, config.eps, params.rule);
      const SolveResult res = solve_fixed_point(params, noise, obj);
      rec.status = solve_status_name(res.status);
      rec.iterations = res.iterations;
      rec.contraction_ratio = res.contraction_ratio;
      rec.closure_error = closure_error(res, obj, params);
      rec.r_holder_norm = norm_holder(res.big_r, 1.0 - config.kappa).estimate;
      if (config.abc_mode == AbcMode::kZero) {
        rec.mcr_residual = residual_mcr(res.r, obj.w, params.gamma, params.rule).max_relative();
      }
    } catch (const std::exception& e) {
      rec.status = "error";
      rec.error = e.what();
    }
  }
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.seed < b.seed; });

  std::vector<double> measured;
  int passed = 0;
  for (const auto& rec : records) {
    measured.push_back(rec.gate.measured);
    if (rec.gate.pass) ++passed;
    if (rec.status == solve_status_name(SolveStatus::kConverged)) {
      ++summary.converged;
      summary.max_contraction_ratio = std::max(summary.max_contraction_ratio, rec.contraction_ratio);
    }
  }
  summary.pass_fraction = records.empty() ? 0.0 : static_cast<double>(passed) / records.size();
  summary.gate_median = quantile_of(measured, 0.5);
  summary.gate_q95 = quantile_of(measured, 0.95);
  summary.records = std::move(records);
  return summary;
}

nlohmann::ordered_json report_envelope(const std::string& kind, const ExperimentConfig& config) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  j["code_version"] = code_version();
  j["params"] = to_json(config);
  return j;
}

nlohmann::ordered_json to_json(const RateFit& fit) {
  nlohmann::ordered_json j;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["r2"] = fit.r2;
  j["enough_points"] = fit.enough_points();
  j["reference"] = fit.reference;
  auto pts = nlohmann::ordered_json::array();
  for (const auto& [eps, err] : fit.points) pts.push_back({{"eps", eps}, {"error", err}});
  j["points"] = pts;
  return j;
}

nlohmann::ordered_json to_json(const RateStudy& study) {
  nlohmann::ordered_json j;
  j["seed"] = study.seed;
  j["reference_eps"] = study.reference_eps;
  j["reference_zeta_norm"] = study.reference_zeta_norm;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : study.rows) {
    nlohmann::ordered_json r;
    r["eps"] = row.eps;
    r["xi_error"] = row.xi_error;
    r["zeta_error"] = row.zeta_error;
    r["r_error"] = optional_json(row.r_error);
    r["zeta_norm"] = row.zeta_norm;
    r["solve_status"] = row.solve_status;
    rows.push_back(r);
  }
  j["rows"] = rows;
  nlohmann::ordered_json fits;
  fits["xi"] = to_json(study.xi);
  fits["zeta"] = to_json(study.zeta);
  fits["r"] = study.r ? to_json(*study.r) : nlohmann::ordered_json(nullptr);
  j["fits"] = fits;
  j["r_abort_reason"] = study.r_abort_reason;
  return j;
}

nlohmann::ordered_json to_json(const EnsembleSummary& summary) {
  nlohmann::ordered_json j;
  j["lambda"] = summary.lambda;
  j["count"] = summary.records.size();
  j["pass_fraction"] = summary.pass_fraction;
  j["converged"] = summary.converged;
  j["max_contraction_ratio"] = summary.max_contraction_ratio;
  j["gate_median"] = summary.gate_median;
  j["gate_q95"] = summary.gate_q95;
  auto records = nlohmann::ordered_json::array();
  for (const auto& rec : summary.records) {
    nlohmann::ordered_json r;
    r["seed"] = rec.seed;
    r["gate_pass"] = rec.gate.pass;
    r["gate_measured"] = rec.gate.measured;
    r["sigma_budget"] = rec.gate.sigma_budget;
    r["status"] = rec.status;
    r["iterations"] = rec.iterations;
    r["contraction_ratio"] = rec.contraction_ratio;
    r["closure_error"] = rec.closure_error;
    r["r_holder_norm"] = rec.r_holder_norm;
    r["mcr_residual"] = optional_json(rec.mcr_residual);
    r["error"] = rec.error;
    records.push_back(r);
  }
  j["records"] = records;
  return j;
}

std::vector<std::string> validate_report(const nlohmann::json& report) {
  static const std::set<std::string> kinds{"sample",    "solve", "renorm-check", "rate-study",
                                           "norms",     "backlund", "ensemble"};
  std::vector<std::string> errors;
  auto require = [&](const nlohmann::json& obj, const std::string& key, auto&& is_type,
                     const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
      errors.push_back(where + ": missing '" + key + "'");
      return false;
    }
    if (!is_type(obj.at(key))) {
      errors.push_back(where + ": '" + key + "' has the wrong type");
      return false;
    }
    return true;
  };
  const auto is_int = [](const nlohmann::json& v) { return v.is_number_integer(); };
  const auto is_num = [](const nlohmann::json& v) { return v.is_number() || v.is_null(); };
  const auto is_str = [](const nlohmann::json& v) { return v.is_string(); };
  const auto is_obj = [](const nlohmann::json& v) { return v.is_object(); };
  const auto is_arr = [](const nlohmann::json& v) { return v.is_array(); };
  const auto is_any = [](const nlohmann::json& v) { return v.is_object() || v.is_array(); };

  if (!report.is_object()) return {"report is not an object"};
  if (require(report, "schema_version", is_int, "report") &&
      report.at("schema_version").get<int>() != kSchemaVersion) {
    errors.push_back("report: unsupported schema_version");
  }
  std::string kind;
  if (require(report, "kind", is_str, "report")) {
    kind = report.at("kind").get<std::string>();
    if (!kinds.contains(kind)) errors.push_back("report: unknown kind '" + kind + "'");
  }
  require(report, "code_version", is_str, "report");
  if (require(report, "params", is_obj, "report")) {
    const auto& p = report.at("params");
    require(p, "n", is_int, "params");
    require(p, "kappa", is_num, "params");
    require(p, "seeds", is_arr, "params");
  }
  if (!require(report, "results", is_any, "report")) return errors;
  const auto& results = report.at("results");
  if (kind == "rate-study") {
    if (!results.is_array()) {
      errors.push_back("results: rate-study expects an array");
      return errors;
    }
    for (const auto& s : results) {
      require(s, "seed", is_int, "study");
      require(s, "rows", is_arr, "study");
      if (require(s, "fits", is_obj, "study")) {
        for (const char* name : {"xi", "zeta"}) {
          if (require(s.at("fits"), name, is_obj, "fits")) {
            const auto& f = s.at("fits").at(name);
            require(f, "slope", is_num, name);
            require(f, "r2", is_num, name);
            require(f, "points", is_arr, name);
          }
        }
      }
    }
  } else if (kind == "ensemble") {
    require(results, "pass_fraction", is_num, "results");
    require(results, "lambda", is_num, "results");
    if (require(results, "records", is_arr, "results")) {
      for (const auto& r : results.at("records")) {
        require(r, "seed", is_int, "record");
        require(r, "status", is_str, "record");
      }
    }
  }
  return errors;
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& report) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << report.dump(2) << '\n';
}

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::ofstream open_csv(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

void write_rate_csv(const std::filesystem::path& path, const std::vector<RateStudy>& studies) {
  auto out = open_csv(path);
  out << "seed,eps,xi_error,zeta_error,r_error,zeta_norm,solve_status\n";
  for (const auto& s : studies) {
    for (const auto& row : s.rows) {
      out << s.seed << ',' << fmt(row.eps) << ',' << fmt(row.xi_error) << ','
          << fmt(row.zeta_error) << ',' << (row.r_error ? fmt(*row.r_error) : "") << ','
          << fmt(row.zeta_norm) << ',' << row.solve_status << '\n';
    }
  }
}

void write_ensemble_csv(const std::filesystem::path& path, const EnsembleSummary& summary) {
  auto out = open_csv(path);
  out << "seed,gate_pass,gate_measured,status,iterations,contraction_ratio,closure_error,"
         "r_holder_norm,mcr_residual\n";
  for (const auto& r : summary.records) {
    out << r.seed << ',' << (r.gate.pass ? 1 : 0) << ',' << fmt(r.gate.measured) << ','
        << r.status << ',' << r.iterations << ',' << fmt(r.contraction_ratio) << ','
        << fmt(r.closure_error) << ',' << fmt(r.r_holder_norm) << ','
        << (r.mcr_residual ? fmt(*r.mcr_residual) : "") << '\n';
  }
}

}  // namespace crspde
