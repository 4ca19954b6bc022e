// Command-line front end. Every subcommand prints its JSON report on stdout
// and, with --out, also writes it (plus CSV/CRF1 files per --formats).
//
// Exit codes: 0 pass, 1 assertion failure, 2 usage error, 3 numerical divergence.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "crspde/experiments.hpp"
#include "crspde/io.hpp"
#include "crspde/mollifier.hpp"
#include "crspde/norms.hpp"
#include "crspde/renorm.hpp"
#include "crspde/solver.hpp"
#include "crspde/spectral.hpp"

namespace fs = std::filesystem;
using namespace crspde;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitAssert = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDiverged = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw option values, applied to the config in file-then-flags order.
struct CommonOptions {
  std::string config_file;
  std::map<std::string, std::string> values;
  bool dealias = true;
  bool dealias_given = false;
};

void add_common(CLI::App* sub, CommonOptions& opts) {
  sub->add_option("--config", opts.config_file, "key = value configuration file");
  const std::vector<std::pair<std::string, std::string>> flags{
      {"--n", "n"},
      {"--kappa", "kappa"},
      {"--sigma", "sigma"},
      {"--gamma", "gamma"},
      {"--eps", "eps"},
      {"--eps-list", "eps_list"},
      {"--seed,--seeds", "seeds"},
      {"--abc", "abc"},
      {"--lambda", "lambda"},
      {"--out", "out"},
      {"--formats", "formats"},
      {"--zero-mean", "zero_mean"},
      {"--tol", "tol"},
      {"--max-iter", "max_iter"},
      {"--calibration-samples", "calibration_samples"},
  };
  for (const auto& [flag, key] : flags) {
    sub->add_option_function<std::string>(
        flag, [&opts, key = key](const std::string& v) { opts.values[key] = v; },
        "overrides config key '" + key + "'");
  }
  sub->add_flag_function(
      "--dealias,!--no-dealias",
      [&opts](std::int64_t count) {
        opts.dealias = count > 0;
        opts.dealias_given = true;
      },
      "2/3-rule products (default on)");
  sub->add_flag_function(
      "--override-gate", [&opts](std::int64_t) { opts.values["override_gate"] = "true"; },
      "solve even when the event gate rejects the realization");
}

ExperimentConfig make_config(const std::string& name, const CommonOptions& opts,
                             const std::map<std::string, std::string>& defaults = {}) {
  ExperimentConfig config;
  config.subcommand = name;
  try {
    for (const auto& [k, v] : defaults) apply_setting(config, k, v);
    if (!opts.config_file.empty()) load_config_file(config, opts.config_file);
    for (const auto& [k, v] : opts.values) apply_setting(config, k, v);
    if (opts.dealias_given) config.dealias = opts.dealias;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return config;
}

void check_config(const ExperimentConfig& config, bool need_eps_list) {
  try {
    validate(config, need_eps_list);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void emit(const ExperimentConfig& config, const std::string& stem, const json& report) {
  std::cout << report.dump(2) << '\n';
  if (config.output_dir.empty() || !config.wants("json")) return;
  write_json(fs::path(config.output_dir) / (stem + ".json"), report);
}

bool write_fields(const ExperimentConfig& config) {
  return !config.output_dir.empty() && config.wants("crf1");
}

json residual_json(const ResidualReport& r) {
  json out = json::array();
  for (const auto& c : r.components) out.push_back({{"relative_l2", c.relative_l2}, {"sup", c.sup}});
  return out;
}

json norm_json(const NormReport& r) {
  return {{"alpha", r.alpha},
          {"scales", r.scales},
          {"per_scale", r.per_scale},
          {"sup_norm", r.sup_norm},
          {"estimate", r.estimate}};
}

json solve_json(const SolveResult& res, const SolverParams& p) {
  json j;
  j["status"] = solve_status_name(res.status);
  j["iterations"] = res.iterations;
  j["increment_history"] = res.increment_history;
  j["contraction_ratio"] = res.contraction_ratio;
  j["gate_measured"] = res.gate_measured;
  j["gamma"] = p.gamma;
  j["gamma_tilde"] = p.gamma_tilde();
  json abc = json::array();
  for (const auto& v : res.abc) abc.push_back({v.real(), v.imag()});
  j["abc"] = abc;
  j["lambda"] = p.lambda;
  j["sigma_budget"] = p.lambda > 0.0 ? p.sigma * p.sigma / (16.0 * p.lambda) : 0.0;
  return j;
}

int run_sample(const ExperimentConfig& config) {
  check_config(config, false);
  const TorusGrid grid(config.n);
  json results = json::array();
  for (auto seed : config.seed_list) {
    const NoiseRealization noise = sample(seed, grid, config.zero_mean);
    Diagnostics diag;
    const VectorField3 w = realize(noise, grid, config.eps, &diag).to_physical();
    double imag = 0.0, scale = 0.0;
    for (int j = 0; j < 3; ++j) {
      imag = std::max(imag, w[j].max_abs_imag());
      scale = std::max(scale, w[j].max_abs());
    }
    json r;
    r["seed"] = seed;
    r["eta0"] = {noise.eta0(0), noise.eta0(1), noise.eta0(2)};
    r["max_abs"] = scale;
    r["max_abs_imag"] = imag;
    r["warnings"] = diag.warnings;
    if (write_fields(config)) {
      const fs::path dir(config.output_dir);
      fs::create_directories(dir);
      const std::string stem = "noise_seed" + std::to_string(seed);
      io::write_noise(dir / (stem + ".crf1"), dir / (stem + ".json"), noise, grid, config.eps);
      io::write_crf1(dir / ("W_seed" + std::to_string(seed) + ".crf1"), w);
    }
    results.push_back(r);
  }
  json report = report_envelope("sample", config);
  report["results"] = results;
  emit(config, "sample", report);
  return kExitPass;
}

int run_solve(const ExperimentConfig& config, bool with_backlund) {
  check_config(config, false);
  const TorusGrid grid(config.n);
  const double lambda = resolve_lambda(config);
  SolverParams params = solver_params(config, config.eps, lambda);
  json results = json::array();
  bool ok = true, diverged = false;
  for (auto seed : config.seed_list) {
    const NoiseRealization noise = sample(seed, grid, config.zero_mean);
    Diagnostics diag;
    const StochasticObjects obj = build_objects(noise, grid, config.eps, params.rule, &diag);
    const SolveResult res = solve_fixed_point(params, noise, obj);
    json r = solve_json(res, params);
    r["seed"] = seed;
    r["warnings"] = diag.warnings;
    if (res.status == SolveStatus::kDiverged) diverged = true;
    if (!res.converged()) ok = false;
    if (res.converged()) {
      r["closure_error"] = closure_error(res, obj, params);
      r["R_holder_norm"] = norm_holder(res.big_r, 1.0 - config.kappa).estimate;
      if (config.abc_mode == AbcMode::kZero) {
        r["mcr_residual"] = residual_json(residual_mcr(res.r, obj.w, params.gamma, params.rule));
      }
    }
    std::optional<VectorField3> b;
    if (with_backlund && res.converged()) {
      try {
        b = backlund_b(res.r);
        const LlgReport llg = residual_llg(*b, obj.w, params.gamma, params.rule);
        r["llg_residual"] = residual_json(llg.residual);
        r["imag_ratio"] = llg.imag_ratio;
        if (!(llg.imag_ratio <= 1e-8) || !(llg.residual.max_relative() <= 1e-5)) ok = false;
      } catch (const BacklundError& e) {
        r["backlund_error"] = e.what();
        ok = false;
      }
    }
    if (write_fields(config)) {
      const fs::path dir(config.output_dir);
      fs::create_directories(dir);
      const std::string tag = "_seed" + std::to_string(seed) + ".crf1";
      io::write_crf1(dir / ("R" + tag), res.big_r);
      io::write_crf1(dir / ("r" + tag), res.r);
      if (b) io::write_crf1(dir / ("B" + tag), *b);
    }
    results.push_back(r);
  }
  json report = report_envelope(with_backlund ? "backlund" : "solve", config);
  report["results"] = results;
  emit(config, with_backlund ? "backlund" : "solve", report);
  if (diverged) return kExitDiverged;
  return ok ? kExitPass : kExitAssert;
}

int run_renorm_check(const ExperimentConfig& config) {
  check_config(config, false);
  const TorusGrid grid(config.n);
  const ProductRule rule = config.rule();
  json results = json::array();
  bool ok = true;
  for (auto seed : config.seed_list) {
    const NoiseRealization noise = sample(seed, grid, config.zero_mean);
    Diagnostics diag;
    const VectorField3 w = realize(noise, grid, config.eps, &diag);
    const XiParts parts = build_xi(w);
    const VectorField3 direct = theta_direct(parts.xi, rule);
    const VectorField3 renorm = theta_renormalized(w, rule, std::array<int, 2>{config.n / 2, config.n / 2});
    const VectorField3 shifted =
        theta_renormalized(w, rule, std::array<int, 2>{config.n / 2, 3 * config.n / 4});
    const VectorField3 zeta = build_zeta(direct);
    const double relerr = relative_l2(renorm, direct);
    const double shift = relative_l2(shifted, renorm);
    const VectorField3 phys = direct.to_physical();
    double re = 0.0, scale = 0.0, mean_abs = 0.0;
    for (int j = 0; j < 3; ++j) {
      re = std::max(re, phys[j].max_abs_real());
      scale = std::max(scale, phys[j].max_abs());
      mean_abs = std::max(mean_abs, std::abs(mean(direct[j])));
    }
    const auto zn = norm_holder(zeta, 1.0 - config.kappa);
    json r;
    r["seed"] = seed;
    r["eps"] = config.eps;
    r["direct_vs_renorm_relerr"] = relerr;
    r["shift_invariance_err"] = shift;
    r["theta_max_abs_real_ratio"] = scale > 0.0 ? re / scale : re;
    r["theta_max_abs_mean"] = mean_abs;
    r["zeta_norms"] = {zn.components[0].estimate, zn.components[1].estimate,
                       zn.components[2].estimate, zn.estimate};
    r["warnings"] = diag.warnings;
    if (!(relerr <= 1e-8) || !(shift <= 1e-10) || !(re <= 1e-10 * scale) || !(mean_abs <= 1e-10)) {
      ok = false;
    }
    if (write_fields(config)) {
      const fs::path dir(config.output_dir);
      fs::create_directories(dir);
      const std::string tag = "_seed" + std::to_string(seed) + ".crf1";
      io::write_crf1(dir / ("xi" + tag), parts.xi.to_physical());
      io::write_crf1(dir / ("theta" + tag), phys);
      io::write_crf1(dir / ("zeta" + tag), zeta.to_physical());
    }
    results.push_back(r);
  }
  json report = report_envelope("renorm-check", config);
  report["results"] = results;
  emit(config, "renorm-check", report);
  return ok ? kExitPass : kExitAssert;
}

int run_rate_study_cmd(const ExperimentConfig& config) {
  check_config(config, true);
  const auto studies = run_rate_studies(config);
  json results = json::array();
  bool ok = true;
  const double k = config.kappa;
  for (const auto& s : studies) {
    results.push_back(to_json(s));
    const bool pass = s.xi.slope >= k / 2 - 0.1 && s.xi.r2 >= 0.9 && s.zeta.slope >= k / 8 - 0.05 &&
                      s.zeta.r2 >= 0.9 && s.r && s.r->slope >= k / 8 - 0.05 && s.r->r2 >= 0.9;
    if (!pass) ok = false;
  }
  json report = report_envelope("rate-study", config);
  report["results"] = results;
  emit(config, "rate-study", report);
  if (!config.output_dir.empty() && config.wants("csv")) {
    write_rate_csv(fs::path(config.output_dir) / "rate-study.csv", studies);
  }
  return ok ? kExitPass : kExitAssert;
}

int run_norms(const ExperimentConfig& config, const std::string& input, double order,
              const std::string& scales, bool spectral_input) {
  if (input.empty()) throw UsageError("norms: --in is required");
  if (!(order != 0.0 && order > -2.0 && order < 1.0)) {
    throw UsageError("norms: --order must lie in (-2, 0) or (0, 1)");
  }
  ScaleWindow window;
  if (!scales.empty()) {
    const auto colon = scales.find(':');
    try {
      if (colon == std::string::npos) {
        window.m_max = std::stoi(scales);
      } else {
        window.m_min = std::stoi(scales.substr(0, colon));
        window.m_max = std::stoi(scales.substr(colon + 1));
      }
    } catch (const std::exception&) {
      throw UsageError("norms: --scales expects M or MMIN:MMAX");
    }
  }
  const auto comps =
      io::read_crf1(input, spectral_input ? Representation::kSpectral : Representation::kPhysical);
  json results = json::array();
  double rss = 0.0;
  for (const auto& f : comps) {
    const NormReport r = order < 0.0 ? norm_neg(f, order, window) : norm_holder(f, order);
    rss += r.estimate * r.estimate;
    results.push_back(norm_json(r));
  }
  json report = report_envelope("norms", config);
  report["input"] = input;
  report["results"] = {{"components", results}, {"rss_estimate", std::sqrt(rss)}};
  emit(config, "norms", report);
  return kExitPass;
}

int run_ensemble_cmd(const ExperimentConfig& config) {
  check_config(config, false);
  const EnsembleSummary summary = run_ensemble(config);
  json report = report_envelope("ensemble", config);
  report["results"] = to_json(summary);
  emit(config, "ensemble", report);
  if (!config.output_dir.empty() && config.wants("csv")) {
    write_ensemble_csv(fs::path(config.output_dir) / "ensemble.csv", summary);
  }
  int passing = 0, good = 0;
  for (const auto& r : summary.records) {
    if (!r.gate.pass) continue;
    ++passing;
    if (r.status == "converged" && r.contraction_ratio < 1.0 && r.closure_error <= 1e-9) ++good;
  }
  return passing == 0 || 100 * good >= 95 * passing ? kExitPass : kExitAssert;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral solver and verification harness for the stochastic Cauchy-Riemann system"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(code_version()));

  CommonOptions sample_opts, solve_opts, renorm_opts, rate_opts, norms_opts, backlund_opts,
      ensemble_opts;
  auto* sample_cmd = app.add_subcommand("sample", "draw noise realizations and optionally save them");
  add_common(sample_cmd, sample_opts);
  auto* solve_cmd = app.add_subcommand("solve", "run the fixed-point solver");
  add_common(solve_cmd, solve_opts);
  auto* renorm_cmd = app.add_subcommand("renorm-check", "compare direct and renormalized theta");
  add_common(renorm_cmd, renorm_opts);
  auto* rate_cmd = app.add_subcommand("rate-study", "Cauchy rate fits against the finest eps");
  add_common(rate_cmd, rate_opts);
  auto* norms_cmd = app.add_subcommand("norms", "estimate norms of a CRF1 field");
  add_common(norms_cmd, norms_opts);
  std::string norms_in, norms_scales;
  double norms_order = -0.3;
  bool norms_spectral = false;
  norms_cmd->add_option("--in", norms_in, "input CRF1 file")->required();
  norms_cmd->add_option("--order", norms_order, "order alpha, in (-2, 0) or (0, 1)");
  norms_cmd->add_option("--scales", norms_scales, "dyadic levels M or MMIN:MMAX");
  norms_cmd->add_flag("--spectral", norms_spectral, "the file holds spectral coefficients");
  auto* backlund_cmd = app.add_subcommand("backlund", "solve with abc = zero and check the LLG form");
  add_common(backlund_cmd, backlund_opts);
  auto* ensemble_cmd = app.add_subcommand("ensemble", "gate and solve over many seeds");
  add_common(ensemble_cmd, ensemble_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*sample_cmd) return run_sample(make_config("sample", sample_opts));
    if (*solve_cmd) return run_solve(make_config("solve", solve_opts), false);
    if (*renorm_cmd) {
      return run_renorm_check(make_config("renorm-check", renorm_opts, {{"dealias", "off"}}));
    }
    if (*rate_cmd) return run_rate_study_cmd(make_config("rate-study", rate_opts, {{"n", "512"}}));
    if (*norms_cmd) {
      return run_norms(make_config("norms", norms_opts), norms_in, norms_order, norms_scales,
                       norms_spectral);
    }
    if (*backlund_cmd) {
      return run_solve(make_config("backlund", backlund_opts,
                                   {{"abc", "zero"}, {"zero_mean", "true,true,true"}}),
                       true);
    }
    if (*ensemble_cmd) {
      return run_ensemble_cmd(make_config("ensemble", ensemble_opts, {{"seeds", "0:100"}}));
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitAssert;
  }
  return kExitUsage;
}
