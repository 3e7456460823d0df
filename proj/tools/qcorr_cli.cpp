// qcorr: two-qubit correlation engine.
//
// Subcommands: eval, scan-werner, optimize, regions, sample, lhv-check.
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include "qcorr/correlations.hpp"
#include "qcorr/hv_models.hpp"
#include "qcorr/json_io.hpp"
#include "qcorr/optimizer.hpp"
#include "qcorr/qubit_algebra.hpp"
#include "qcorr/sampler.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace qcorr;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-")
    std::cout << content;
  else
    write_text_file(out_path, content);
}

Objective parse_objective(const std::string& name) {
  if (name == "sum-of-squares" || name == "sum_of_squares") return Objective::SumOfSquares;
  if (name == "max-abs-pm" || name == "max_abs_pm") return Objective::MaxAbsPm;
  if (name == "abs-x" || name == "abs_x") return Objective::AbsX;
  throw std::invalid_argument("unknown objective \"" + name +
                              "\" (expected sum-of-squares, max-abs-pm or abs-x)");
}

const char* objective_formula(Objective o) {
  switch (o) {
    case Objective::SumOfSquares: return "X^2 + Y^2";
    case Objective::MaxAbsPm: return "max|X +- Y|";
    case Objective::AbsX: return "|X|";
  }
  return "?";
}

DensityMatrix load_state(const std::string& path) {
  return StateSpec::from_json(load_json_file(path)).to_density_matrix();
}

SettingsSpec load_settings(const std::string& path) {
  return SettingsSpec::from_json(load_json_file(path));
}

void print_human_report(std::ostream& os, const HierarchyReport& rep) {
  os.precision(17);
  os << "X = " << rep.xy.x << "\n"
     << "Y = " << rep.xy.y << "\n";
  auto line = [&](const char* label, const char* formula, const BoundRecord& b) {
    os << "  " << label << "  " << formula << ": achieved " << b.achieved << ", margin "
       << b.margin << (b.satisfied ? "  [satisfied]" : "  [VIOLATED]") << "\n";
  };
  line("QM    ", "X^2 + Y^2 <= 4        ", rep.qm);
  line("RT    ", "|X| <= 2 and |Y| <= 2 ", rep.rt);
  line("LT/LRT", "|X +- Y| <= 2         ", rep.lt);
  line("LQT   ", "X^2 + Y^2 <= 1        ", rep.lqt);
  os << "region: " << region_name(rep.region) << "\n"
     << "hidden qunonlocality: " << (rep.hidden_qunonlocality ? "yes" : "no") << "\n";
}

// ----------------------------------------------------------------- eval ----

struct EvalArgs {
  std::string state_path, settings_path;
  double tol = kDefaultBoundTol;
  bool as_json = false;
};

int run_eval(const EvalArgs& args) {
  const DensityMatrix rho = load_state(args.state_path);
  const SettingsSpec settings = load_settings(args.settings_path);
  const XYPoint xy = xy_quantities(rho, settings.pair_a(), settings.pair_b());
  const HierarchyReport rep = classify(xy, args.tol);
  if (args.as_json)
    std::cout << report_to_json(rep).dump(2) << "\n";
  else
    print_human_report(std::cout, rep);
  return 0;
}

// ---------------------------------------------------------- scan-werner ----

struct ScanArgs {
  int steps = 21;
  std::string objective = "sum-of-squares";
  std::string out_path;
  double tol = kDefaultBoundTol;
  int restarts = 16;
  std::uint64_t seed = 1;
  bool as_json = false;  // accepted for interface uniformity; output is CSV either way
};

int run_scan_werner(const ScanArgs& args) {
  if (args.steps < 2) throw std::invalid_argument("scan-werner: --steps must be >= 2");
  const Objective selected = parse_objective(args.objective);
  OptimizerConfig cfg;
  cfg.restarts = args.restarts;
  cfg.seed = args.seed;

  std::ostringstream csv;
  csv << "x,max_value,violates_qm,violates_rt,violates_chsh,violates_lqt,ppt\n";
  for (int i = 0; i < args.steps; ++i) {
    const double x = double(i) / double(args.steps - 1);
    const DensityMatrix rho = make_werner(x);
    const double ss = maximize(rho, Objective::SumOfSquares, cfg).best_value;
    const double pm = maximize(rho, Objective::MaxAbsPm, cfg).best_value;
    const double ax = maximize(rho, Objective::AbsX, cfg).best_value;
    const double max_value = selected == Objective::SumOfSquares ? ss
                             : selected == Objective::MaxAbsPm   ? pm
                                                                 : ax;
    csv << fmt17(x) << ',' << fmt17(max_value) << ',' << (ss > 4.0 + args.tol ? 1 : 0) << ','
        << (ax > 2.0 + args.tol ? 1 : 0) << ',' << (pm > 2.0 + args.tol ? 1 : 0) << ','
        << (ss > 1.0 + args.tol ? 1 : 0) << ',' << (is_separable_ppt(rho) ? 1 : 0) << "\n";
  }
  emit(args.out_path, csv.str());
  return 0;
}

// ------------------------------------------------------------- optimize ----

struct OptimizeArgs {
  std::string state_path;
  std::string objective = "sum-of-squares";
  int restarts = 64;
  int max_iters = 400;
  std::uint64_t seed = 1;
  bool as_json = false;
};

int run_optimize(const OptimizeArgs& args) {
  const DensityMatrix rho = load_state(args.state_path);
  const Objective obj = parse_objective(args.objective);
  OptimizerConfig cfg;
  cfg.restarts = args.restarts;
  cfg.max_iters = args.max_iters;
  cfg.seed = args.seed;
  const OptimizeResult result = maximize(rho, obj, cfg);
  if (args.as_json) {
    std::cout << optimize_result_to_json(result, obj).dump(2) << "\n";
  } else {
    std::cout.precision(17);
    std::cout << "objective " << objective_formula(obj) << "\n"
              << "best value  " << result.best_value << "\n"
              << "evaluations " << result.evaluations << "\n"
              << "converged   " << (result.converged ? "yes" : "no") << "\n"
              << "a      = [" << result.best_a.main().transpose() << "]\n"
              << "a_perp = [" << result.best_a.perp().transpose() << "]\n"
              << "b      = [" << result.best_b.main().transpose() << "]\n"
              << "b_perp = [" << result.best_b.perp().transpose() << "]\n";
  }
  return 0;
}

// -------------------------------------------------------------- regions ----

struct RegionsArgs {
  int resolution = 64;
  std::string out_path;
  bool as_json = true;
};

json closed_circle(double radius, int resolution) {
  json pts = json::array();
  for (int k = 0; k <= resolution; ++k) {
    const double t = 2.0 * std::numbers::pi * double(k % resolution) / double(resolution);
    pts.push_back(json::array({radius * std::cos(t), radius * std::sin(t)}));
  }
  return pts;
}

json closed_polygon(const std::vector<std::pair<double, double>>& corners, int resolution) {
  const int per_edge = std::max(2, resolution / int(corners.size()));
  json pts = json::array();
  for (std::size_t e = 0; e < corners.size(); ++e) {
    const auto& [x0, y0] = corners[e];
    const auto& [x1, y1] = corners[(e + 1) % corners.size()];
    for (int k = 0; k < per_edge; ++k) {
      const double t = double(k) / double(per_edge);
      pts.push_back(json::array({x0 + t * (x1 - x0), y0 + t * (y1 - y0)}));
    }
  }
  pts.push_back(pts[0]);
  return pts;
}

json achievable_point(const StateSpec& state, const SettingsSpec& settings, const char* family) {
  const XYPoint xy =
      xy_quantities(state.to_density_matrix(), settings.pair_a(), settings.pair_b());
  return json{{"x", xy.x},
              {"y", xy.y},
              {"family", family},
              {"state", state.to_json()},
              {"settings", settings.to_json()}};
}

int run_regions(const RegionsArgs& args) {
  if (args.resolution < 8) throw std::invalid_argument("regions: --resolution must be >= 8");
  const int r = args.resolution;

  json boundaries{{"qm_circle", closed_circle(2.0, r)},
                  {"rt_square", closed_polygon({{2, 2}, {-2, 2}, {-2, -2}, {2, -2}}, r)},
                  {"lt_diamond", closed_polygon({{2, 0}, {0, 2}, {-2, 0}, {0, -2}}, r)},
                  {"lqt_circle", closed_circle(1.0, r)}};

  // Achievable families: sweeps of actual states and settings whose X/Y points
  // trace the outer circle (singlet), the LQT circle (Werner x = 1/2) and the
  // unit circle again via pure product states.
  json achievable = json::array();
  for (int k = 0; k < r; ++k) {
    const double beta = 2.0 * std::numbers::pi * double(k) / double(r);
    SettingsSpec sweep;
    sweep.a = Vector3(1, 0, 0);
    sweep.a_perp = Vector3(0, 1, 0);
    sweep.b = Vector3(std::cos(beta), std::sin(beta), 0);
    sweep.b_perp = Vector3(std::sin(beta), -std::cos(beta), 0);
    achievable.push_back(achievable_point(StateSpec::singlet(), sweep, "singlet"));
    achievable.push_back(achievable_point(StateSpec::werner(0.5), sweep, "werner_half"));

    SettingsSpec prod;
    prod.a = Vector3(std::sin(beta), 0, std::cos(beta));
    prod.a_perp = Vector3(std::cos(beta), 0, -std::sin(beta));
    prod.b = Vector3(0, 0, 1);
    prod.b_perp = Vector3(1, 0, 0);
    achievable.push_back(
        achievable_point(StateSpec::product(Vector3(0, 0, 1), Vector3(0, 0, 1)), prod, "product_zz"));
  }

  const json out{{"resolution", r}, {"boundaries", boundaries}, {"achievable", achievable}};
  emit(args.out_path, out.dump(2) + "\n");
  return 0;
}

// --------------------------------------------------------------- sample ----

struct SampleArgs {
  std::string state_path, settings_path;
  long long shots = 100000;
  std::uint64_t seed = 1;
  std::string counts_out;
  bool as_json = false;
};

struct BoundVerdict {
  const char* name;
  double achieved, bound, sigma;
  std::string verdict;  // violated / not_violated / inconclusive
};

std::vector<BoundVerdict> bound_verdicts(const EmpiricalXY& e) {
  const double x = e.xy.x, y = e.xy.y;
  const double ss = x * x + y * y;
  const double ss_sigma = std::hypot(2.0 * x * e.se_x, 2.0 * y * e.se_y);
  const double box = std::max(std::abs(x), std::abs(y));
  const double box_sigma = std::abs(x) >= std::abs(y) ? e.se_x : e.se_y;
  const double diamond = std::max(std::abs(x + y), std::abs(x - y));
  const double diamond_sigma = std::hypot(e.se_x, e.se_y);

  auto verdict = [](double achieved, double bound, double sigma) -> std::string {
    if (achieved > bound + 5.0 * sigma) return "violated";
    if (achieved < bound - 5.0 * sigma) return "not_violated";
    return "inconclusive";
  };
  return {
      {"qm", ss, 4.0, ss_sigma, verdict(ss, 4.0, ss_sigma)},
      {"rt", box, 2.0, box_sigma, verdict(box, 2.0, box_sigma)},
      {"lt_lrt", diamond, 2.0, diamond_sigma, verdict(diamond, 2.0, diamond_sigma)},
      {"lqt", ss, 1.0, ss_sigma, verdict(ss, 1.0, ss_sigma)},
  };
}

int run_sample(const SampleArgs& args) {
  const DensityMatrix rho = load_state(args.state_path);
  const SettingsSpec settings = load_settings(args.settings_path);
  const EmpiricalXY e =
      empirical_xy(rho, settings.pair_a(), settings.pair_b(), args.shots, args.seed);
  const HierarchyReport point_report = classify(e.xy);
  const auto verdicts = bound_verdicts(e);

  if (!args.counts_out.empty()) {
    static const char* kComboNames[4] = {"ab", "ab_perp", "a_perp_b", "a_perp_b_perp"};
    std::ostringstream csv;
    csv << "setting,outcome_a,outcome_b,count\n";
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          csv << kComboNames[k] << ',' << (i == 0 ? "+1" : "-1") << ',' << (j == 0 ? "+1" : "-1")
              << ',' << e.per_setting[k].counts[i][j] << "\n";
    write_text_file(args.counts_out, csv.str());
  }

  if (args.as_json) {
    json jv = json::object();
    for (const auto& v : verdicts)
      jv[v.name] = json{{"achieved", v.achieved},
                        {"bound", v.bound},
                        {"sigma", v.sigma},
                        {"verdict", v.verdict}};
    json out = empirical_to_json(e);
    out["shots_per_setting"] = args.shots;
    out["seed"] = args.seed;
    out["point_estimate"] = report_to_json(point_report);
    out["verdicts"] = std::move(jv);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout.precision(17);
    std::cout << "X_hat = " << e.xy.x << " (se " << e.se_x << ")\n"
              << "Y_hat = " << e.xy.y << " (se " << e.se_y << ")\n";
    for (const auto& v : verdicts)
      std::cout << "  " << v.name << ": achieved " << v.achieved << " vs bound " << v.bound
                << " (sigma " << v.sigma << ") -> " << v.verdict << "\n";
    std::cout << "point-estimate region: " << region_name(point_report.region) << "\n";
  }
  return 0;
}

// ------------------------------------------------------------ lhv-check ----

struct LhvArgs {
  std::string model_path, state_path, settings_path;
  double tol = 1e-9;
  bool as_json = false;
};

int run_lhv_check(const LhvArgs& args) {
  const AnyModel model = model_from_json(load_json_file(args.model_path));
  const DensityMatrix rho = load_state(args.state_path);
  const SettingsSpec settings = load_settings(args.settings_path);
  const std::vector<std::pair<Vector3, Vector3>> combos = {
      {settings.a, settings.b},
      {settings.a, settings.b_perp},
      {settings.a_perp, settings.b},
      {settings.a_perp, settings.b_perp},
  };

  json out{{"tol", args.tol}};
  bool pass = false;
  double locality_dev = 0.0, corr_dev = 0.0;
  if (const auto* ccm = std::get_if<CommonCauseModel>(&model)) {
    const LocalityVerdict lv =
        verify_locality_condition(*ccm, quantum_joint_source(rho), combos, args.tol);
    for (const auto& [a, b] : combos)
      corr_dev = std::max(corr_dev, std::abs(model_correlation(*ccm, a, b) - correlation(rho, a, b)));
    locality_dev = lv.max_deviation;
    pass = lv.local && corr_dev <= args.tol;
    out["model"] = json{{"type", "common_cause"}, {"variant", model_variant_name(ccm->variant())}};
    out["locality"] = json{{"max_deviation", lv.max_deviation}, {"pass", lv.local}};
  } else {
    const auto& rt = std::get<NonlocalRealisticModel>(model);
    for (const auto& [a, b] : combos)
      corr_dev = std::max(corr_dev, std::abs(rt_model_correlation(rt, a, b) - correlation(rho, a, b)));
    pass = corr_dev <= args.tol;
    out["model"] = json{{"type", "nonlocal_realistic"}};
    out["locality"] = nullptr;  // no factorization claim to check
  }
  out["correlations"] = json{{"max_deviation", corr_dev}, {"pass", corr_dev <= args.tol}};
  out["pass"] = pass;

  if (args.as_json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout.precision(17);
    if (std::holds_alternative<CommonCauseModel>(model))
      std::cout << "locality factorization: max deviation " << locality_dev << "\n";
    std::cout << "correlation match: max deviation " << corr_dev << "\n"
              << "result: " << (pass ? "PASS" : "FAIL") << " (tol " << args.tol << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcorr: two-qubit correlation engine for locality and realism bounds"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Classify a state at given settings in the X-Y plane");
  eval->add_option("state", eval_args.state_path, "state JSON file")->required();
  eval->add_option("settings", eval_args.settings_path, "settings JSON file")->required();
  eval->add_option("--tol", eval_args.tol, "bound comparison tolerance");
  eval->add_flag("--json", eval_args.as_json, "machine-readable output");

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan-werner", "Scan the Werner family and report violations");
  scan->add_option("--steps", scan_args.steps, "grid points in [0,1]")->required();
  scan->add_option("--objective", scan_args.objective, "max_value column objective");
  scan->add_option("--out", scan_args.out_path, "CSV output path (default stdout)");
  scan->add_option("--tol", scan_args.tol, "violation tolerance");
  scan->add_option("--restarts", scan_args.restarts, "optimizer restarts per grid point");
  scan->add_option("--seed", scan_args.seed, "optimizer seed");
  scan->add_flag("--json", scan_args.as_json, "accepted for uniformity (output stays CSV)");

  OptimizeArgs opt_args;
  auto* opt = app.add_subcommand("optimize", "Maximize a violation quantity over settings");
  opt->add_option("state", opt_args.state_path, "state JSON file")->required();
  opt->add_option("--objective", opt_args.objective, "sum-of-squares | max-abs-pm | abs-x");
  opt->add_option("--restarts", opt_args.restarts, "multi-start count");
  opt->add_option("--max-iters", opt_args.max_iters, "Nelder-Mead iterations per restart");
  opt->add_option("--seed", opt_args.seed, "restart seed");
  opt->add_flag("--json", opt_args.as_json, "machine-readable output");

  RegionsArgs regions_args;
  auto* regions = app.add_subcommand("regions", "Emit X-Y plane region boundaries and witnesses");
  regions->add_option("--resolution", regions_args.resolution, "points per boundary (>= 8)");
  regions->add_option("--out", regions_args.out_path, "JSON output path (default stdout)");
  regions->add_flag("--json", regions_args.as_json, "accepted for uniformity (output is JSON)");

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "Monte Carlo simulation of the Bell experiment");
  sample->add_option("state", sample_args.state_path, "state JSON file")->required();
  sample->add_option("settings", sample_args.settings_path, "settings JSON file")->required();
  sample->add_option("--shots", sample_args.shots, "shots per setting combination");
  sample->add_option("--seed", sample_args.seed, "sampler seed");
  sample->add_option("--counts-out", sample_args.counts_out, "write per-setting counts CSV");
  sample->add_flag("--json", sample_args.as_json, "machine-readable output");

  LhvArgs lhv_args;
  auto* lhv = app.add_subcommand("lhv-check", "Verify a hidden-variable model against a state");
  lhv->add_option("model", lhv_args.model_path, "model JSON file")->required();
  lhv->add_option("state", lhv_args.state_path, "state JSON file")->required();
  lhv->add_option("settings", lhv_args.settings_path, "settings JSON file")->required();
  lhv->add_option("--tol", lhv_args.tol, "acceptance tolerance");
  lhv->add_flag("--json", lhv_args.as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(eval)) return run_eval(eval_args);
    if (app.got_subcommand(scan)) return run_scan_werner(scan_args);
    if (app.got_subcommand(opt)) return run_optimize(opt_args);
    if (app.got_subcommand(regions)) return run_regions(regions_args);
    if (app.got_subcommand(sample)) return run_sample(sample_args);
    if (app.got_subcommand(lhv)) return run_lhv_check(lhv_args);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: invalid JSON: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
