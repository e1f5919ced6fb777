// Command-line driver: evolve | check | metrics | equilibrium | radial-ode | sweep
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "drop/field.hpp"
#include "drop/flow.hpp"
#include "drop/io.hpp"
#include "drop/metrics.hpp"
#include "drop/par.hpp"
#include "drop/reflection.hpp"
#include "drop/shape.hpp"
#include "drop/velocity.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace drop;

namespace {

struct EvolveConfig {
  SchemeParams scheme;
  double T = 4.0;
  json initial = {{"kind", "ball"}, {"R", 0.0}};  // R = 0 means r_star(V)
  json velocity = {{"kind", "capped_power"}, {"p", 2.0}, {"M", 5.0}};
  std::string out = "drop_out";
  size_t snapshot_stride = 10;
  uint64_t seed = 0;
  bool monitor_dissipation = false;
};

VelocityLaw parse_velocity(const json& v) {
  const std::string kind = v.value("kind", "power");
  if (kind == "power") return VelocityLaw::power(v.value("p", 2.0));
  if (kind == "capped_power") return VelocityLaw::capped_power(v.value("p", 2.0), v.value("M", 5.0));
  if (kind == "table") {
    std::vector<double> s = v.at("s").get<std::vector<double>>();
    std::vector<double> F = v.at("F").get<std::vector<double>>();
    return VelocityLaw::table(std::move(s), std::move(F));
  }
  throw std::invalid_argument("config: unknown velocity kind '" + kind + "'");
}

EvolveConfig parse_evolve_config(const json& j) {
  EvolveConfig cfg;
  cfg.scheme.h = j.value("h", cfg.scheme.h);
  cfg.scheme.M = j.value("M", cfg.scheme.M);
  cfg.scheme.r0 = j.value("r0", cfg.scheme.r0);
  cfg.scheme.V = j.value("V", cfg.scheme.V);
  cfg.scheme.m = j.value("m", cfg.scheme.m);
  cfg.scheme.n_s = j.value("n_s", cfg.scheme.n_s);
  cfg.scheme.rho = j.value("rho", cfg.scheme.rho);
  cfg.scheme.rho_dirs = j.value("rho_dirs", cfg.scheme.rho_dirs);
  cfg.scheme.rho_strict = j.value("rho_strict", cfg.scheme.rho_strict);
  if (j.contains("opt")) {
    const json& o = j["opt"];
    cfg.scheme.opt.max_iter = o.value("max_iter", cfg.scheme.opt.max_iter);
    cfg.scheme.opt.step_tol_frac = o.value("step_tol_frac", cfg.scheme.opt.step_tol_frac);
    cfg.scheme.opt.sufficient_decrease =
        o.value("sufficient_decrease", cfg.scheme.opt.sufficient_decrease);
    cfg.scheme.opt.max_backtracks = o.value("max_backtracks", cfg.scheme.opt.max_backtracks);
    cfg.scheme.opt.pattern_top_k = o.value("pattern_top_k", cfg.scheme.opt.pattern_top_k);
  }
  cfg.T = j.value("T", cfg.T);
  if (j.contains("initial")) cfg.initial = j["initial"];
  if (j.contains("velocity")) cfg.velocity = j["velocity"];
  cfg.out = j.value("out", cfg.out);
  cfg.snapshot_stride = j.value("snapshot_stride", cfg.snapshot_stride);
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("monitor")) cfg.monitor_dissipation = j["monitor"].value("dissipation", false);
  return cfg;
}

RadialShape build_initial(const json& init, const EvolveConfig& cfg) {
  const std::string kind = init.value("kind", "ball");
  const size_t m = cfg.scheme.m;
  const double r_star = equilibrium_radius(cfg.scheme.V);
  if (kind == "ball") {
    double R = init.value("R", 0.0);
    if (R <= 0) R = r_star;
    return RadialShape::ball(R, m);
  }
  if (kind == "perturbed_ball") {
    double R = init.value("R", 0.0);
    if (R <= 0) R = r_star;
    return RadialShape::perturbed_ball(R, init.value("amp", 0.1), init.value("mode_k", 3), m);
  }
  if (kind == "offset_ball") {
    double R = init.value("R", 0.0);
    if (R <= 0) R = r_star;
    return RadialShape::offset_ball(R, init.value("d", 0.1), m);
  }
  if (kind == "file") {
    const std::string path = init.value("path", "");
    if (path.empty() || !fs::exists(path))
      throw std::invalid_argument("config: initial shape file not found: " + path);
    return read_shape_csv(path, m);
  }
  throw std::invalid_argument("config: unknown initial kind '" + kind + "'");
}

json load_config(const std::string& path) {
  if (!fs::exists(path)) throw std::invalid_argument("config file not found: " + path);
  std::ifstream f(path);
  return json::parse(f);
}

std::string vec2_json(Vec2 v) { return "[" + fmt_double(v.x) + "," + fmt_double(v.y) + "]"; }

// resolved-config echo (fixed key order, 17 significant digits)
std::string config_json(const EvolveConfig& cfg) {
  std::ostringstream os;
  os << "{\"h\":" << fmt_double(cfg.scheme.h) << ",\"M\":" << fmt_double(cfg.scheme.M)
     << ",\"r0\":" << fmt_double(cfg.scheme.r0) << ",\"V\":" << fmt_double(cfg.scheme.V)
     << ",\"m\":" << cfg.scheme.m << ",\"n_s\":" << cfg.scheme.n_s
     << ",\"rho\":" << fmt_double(cfg.scheme.rho) << ",\"rho_dirs\":" << cfg.scheme.rho_dirs
     << ",\"rho_strict\":" << (cfg.scheme.rho_strict ? "true" : "false")
     << ",\"T\":" << fmt_double(cfg.T) << ",\"opt\":{\"max_iter\":" << cfg.scheme.opt.max_iter
     << ",\"step_tol_frac\":" << fmt_double(cfg.scheme.opt.step_tol_frac)
     << ",\"sufficient_decrease\":" << fmt_double(cfg.scheme.opt.sufficient_decrease)
     << ",\"max_backtracks\":" << cfg.scheme.opt.max_backtracks
     << ",\"pattern_top_k\":" << cfg.scheme.opt.pattern_top_k << "}"
     << ",\"initial\":" << cfg.initial.dump() << ",\"velocity\":" << cfg.velocity.dump()
     << ",\"snapshot_stride\":" << cfg.snapshot_stride << ",\"seed\":" << cfg.seed << "}";
  return os.str();
}

FlowTrajectory run_evolve(const EvolveConfig& cfg, const std::string& outdir) {
  fs::create_directories(outdir);
  const RadialShape initial = build_initial(cfg.initial, cfg);
  parse_velocity(cfg.velocity);  // validated even though the scheme fixes F = s^2 - 1

  FlowTrajectory traj = run_flow(initial, cfg.scheme, cfg.T);
  write_trajectory_jsonl(traj, outdir + "/trajectory.jsonl");
  for (size_t k = 0; k < traj.steps.size(); k += cfg.snapshot_stride) {
    char name[64];
    std::snprintf(name, sizeof(name), "/shape_%06zu.csv", k);
    write_shape_csv(traj.steps[k].shape, outdir + name);
  }
  write_shape_csv(traj.steps.back().shape, outdir + "/shape_final.csv");

  const double r_star = equilibrium_radius(cfg.scheme.V);
  const BallFit fit = fit_ball(traj.steps.back().shape, r_star);
  double min_slack = 1e300;
  for (size_t k = 0; k + 1 < traj.steps.size(); ++k) {
    const double slack = traj.steps[k].energy - traj.steps[k + 1].energy -
                         traj.steps[k].pseudo_step_sq / cfg.scheme.h;
    min_slack = std::min(min_slack, slack);
  }

  std::ostringstream os;
  os << "{\"config\":" << config_json(cfg) << ",\"r_star\":" << fmt_double(r_star)
     << ",\"lambda_star\":" << fmt_double(equilibrium_lambda(cfg.scheme.V))
     << ",\"steps\":" << traj.steps.size() - 1
     << ",\"energy_initial\":" << fmt_double(traj.steps.front().energy)
     << ",\"energy_final\":" << fmt_double(traj.steps.back().energy)
     << ",\"energy_drop\":" << fmt_double(traj.steps.front().energy - traj.steps.back().energy)
     << ",\"final_hausdorff_to_ball\":" << fmt_double(fit.hausdorff)
     << ",\"fit_center\":" << vec2_json(fit.center)
     << ",\"fit_center_norm\":" << fmt_double(fit.center.norm())
     << ",\"min_energy_decay_slack\":" << fmt_double(min_slack)
     << ",\"aborted\":" << (traj.aborted ? "true" : "false") << ",\"abort_reason\":\""
     << traj.abort_reason << "\"}";
  std::ofstream f(outdir + "/summary.json");
  f << os.str() << "\n";

  if (cfg.monitor_dissipation) {
    std::ofstream d(outdir + "/dissipation.csv");
    d << "k,energy_rate,boundary_quadrature,relative_discrepancy\n";
    for (const DissipationRecord& rec : dissipation_check(traj))
      d << rec.k << "," << fmt_double(rec.energy_rate) << ","
        << fmt_double(rec.boundary_quadrature) << "," << fmt_double(rec.relative_discrepancy)
        << "\n";
  }
  return traj;
}

int cmd_evolve(const std::string& config_path, const std::string& out_override,
               int snapshot_override, int64_t seed_override) {
  json j = load_config(config_path);
  EvolveConfig cfg = parse_evolve_config(j);
  if (!out_override.empty()) cfg.out = out_override;
  if (snapshot_override > 0) cfg.snapshot_stride = static_cast<size_t>(snapshot_override);
  if (seed_override >= 0) cfg.seed = static_cast<uint64_t>(seed_override);
  run_evolve(cfg, cfg.out);
  std::ifstream back(cfg.out + "/summary.json");
  std::cout << back.rdbuf();
  return 0;
}

int cmd_check(const std::string& shape_path, double rho, size_t m, size_t dirs, bool recenter) {
  const RadialShape shape = read_shape_csv(shape_path, m);
  const ReflectionReport rep = check_rho_reflection(shape, rho, dirs);
  std::ostringstream os;
  os << "{\"star_radius\":" << fmt_double(star_radius(shape)) << ",\"rho_reflection\":{\"pass\":"
     << (rep.pass ? "true" : "false") << ",\"sup_smin\":" << fmt_double(rep.rho_reflection_radius)
     << ",\"ball_inside\":" << (rep.ball_radius_check ? "true" : "false") << "}"
     << ",\"annulus_width\":" << fmt_double(annulus_width(shape)) << ",\"implied_star_radius\":";
  if (rho < shape.min_radius())
    os << fmt_double(implied_star_radius_from_reflection(shape, rho));
  else
    os << "null";
  if (recenter) {
    const RecenterResult rc = recenter_search(shape, rho);
    os << ",\"recenter\":{\"offset\":" << vec2_json(rc.offset)
       << ",\"sup_smin\":" << fmt_double(rc.sup_s_min) << "}";
  }
  os << "}";
  std::cout << os.str() << "\n";
  return 0;
}

int cmd_metrics(const std::string& a_path, const std::string& b_path, size_t m) {
  const RadialShape a = read_shape_csv(a_path, m);
  const RadialShape b = read_shape_csv(b_path, m);
  std::ostringstream os;
  os << "{\"hausdorff\":" << fmt_double(hausdorff(a, b))
     << ",\"pseudo_dist_sq_ab\":" << fmt_double(pseudo_dist_sq(a, b))
     << ",\"pseudo_dist_sq_ba\":" << fmt_double(pseudo_dist_sq(b, a))
     << ",\"symm_diff\":" << fmt_double(symm_diff_area(a, b))
     << ",\"dtheta_l2\":" << fmt_double(std::sqrt(dtheta_l2_sq(a, b))) << "}";
  std::cout << os.str() << "\n";
  return 0;
}

int cmd_equilibrium(double V, int N) {
  std::ostringstream os;
  os << "{\"r_star\":" << fmt_double(equilibrium_radius(V, N))
     << ",\"lambda_star\":" << fmt_double(equilibrium_lambda(V, N))
     << ",\"rho_bound\":" << fmt_double(rho_bound(V, N))
     << ",\"rho_bound_strict\":" << fmt_double(rho_bound_strict(V, N)) << "}";
  std::cout << os.str() << "\n";
  return 0;
}

int cmd_radial_ode(const std::string& config_path, const std::string& out_path) {
  json j = load_config(config_path);
  RadialOdeParams p;
  p.initial_r = j.value("initial_r", 1.0);
  p.law = parse_velocity(j.value("law", json{{"kind", "power"}, {"p", 2.0}}));
  const std::string mode = j.value("mode", "volume_preserving");
  if (mode == "volume_preserving")
    p.mode = RadialOdeParams::Mode::volume_preserving;
  else if (mode == "fixed_lambda")
    p.mode = RadialOdeParams::Mode::fixed_lambda;
  else
    throw std::invalid_argument("config: unknown radial-ode mode '" + mode + "'");
  p.V = j.value("V", 1.0);
  p.lambda = j.value("lambda", 1.0);
  p.N = j.value("N", 2);
  p.t_end = j.value("t_end", 10.0);
  p.dt = j.value("dt", 1e-3);
  p.r_max = j.value("r_max", 1e6);
  const RadialOdeResult res = radial_ode(p);
  write_radial_ode_csv(res, out_path);
  const char* ev = res.event == RadialOdeResult::Event::blowup        ? "blowup"
                   : res.event == RadialOdeResult::Event::extinction  ? "extinction"
                   : res.event == RadialOdeResult::Event::equilibrium ? "equilibrium"
                                                                      : "none";
  std::cout << "{\"event\":\"" << ev << "\",\"t_lo\":" << fmt_double(res.event_t_lo)
            << ",\"t_hi\":" << fmt_double(res.event_t_hi) << ",\"samples\":" << res.t.size()
            << "}\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::vector<double>& values, const std::string& out_override) {
  if (param != "h" && param != "M")
    throw std::invalid_argument("sweep: parameter must be 'h' or 'M'");
  if (values.size() < 2) throw std::invalid_argument("sweep: need at least two values");
  json j = load_config(config_path);
  EvolveConfig base = parse_evolve_config(j);
  if (!out_override.empty()) base.out = out_override;
  fs::create_directories(base.out);

  std::vector<FlowTrajectory> runs;
  for (double v : values) {
    EvolveConfig cfg = base;
    if (param == "h")
      cfg.scheme.h = v;
    else
      cfg.scheme.M = v;
    std::ostringstream sub;
    sub << base.out << "/" << param << "_" << v;
    runs.push_back(run_evolve(cfg, sub.str()));
  }

  // sup over time of d_H between consecutive runs, on the piecewise-constant
  // interpolants evaluated at the finer run's step times
  std::ostringstream os;
  os << "{\"param\":\"" << param << "\",\"values\":[";
  for (size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << fmt_double(values[i]);
  os << "],\"pairwise_sup_dH\":[";
  for (size_t i = 0; i + 1 < runs.size(); ++i) {
    const FlowTrajectory& a = runs[i];
    const FlowTrajectory& b = runs[i + 1];
    auto shape_at = [](const FlowTrajectory& tr, double t) -> const RadialShape& {
      const double h = tr.params.h;
      size_t k = static_cast<size_t>(std::floor(t / h + 1e-12));
      k = std::min(k, tr.steps.size() - 1);
      return tr.steps[k].shape;
    };
    double sup = 0.0;
    const FlowTrajectory& finer = a.params.h <= b.params.h ? a : b;
    for (const StepRecord& rec : finer.steps)
      sup = std::max(sup, hausdorff(shape_at(a, rec.t), shape_at(b, rec.t)));
    os << (i ? "," : "") << fmt_double(sup);
  }
  os << "]}";
  std::ofstream f(base.out + "/sweep_summary.json");
  f << os.str() << "\n";
  std::cout << os.str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-static capillary drop flows on star-shaped wetted sets"};
  app.require_subcommand(1);
  bool serial = false;
  app.add_flag("--serial", serial, "run all kernels on the serial reference path");

  std::string config_path, out_dir, shape_a, shape_b;
  int snapshot_stride = -1;
  int64_t seed = -1;

  CLI::App* evolve = app.add_subcommand("evolve", "run the minimizing-movement flow");
  evolve->add_option("--config", config_path, "config JSON")->required();
  evolve->add_option("--out", out_dir, "output directory (overrides config)");
  evolve->add_option("--snapshot-stride", snapshot_stride, "snapshot every K steps");
  evolve->add_option("--seed", seed, "seed echoed into the summary");

  double rho = 0.1;
  size_t m = 256, dirs = 256;
  bool recenter = false;
  CLI::App* check = app.add_subcommand("check", "geometric report for a shape file");
  check->add_option("shape", shape_a, "shape CSV")->required();
  check->add_option("--rho", rho, "reflection radius")->required();
  check->add_option("--m", m, "resample resolution");
  check->add_option("--dirs", dirs, "direction grid size");
  check->add_flag("--recenter", recenter, "search over centers (diagnostic)");

  CLI::App* metrics_cmd = app.add_subcommand("metrics", "distances between two shape files");
  metrics_cmd->add_option("a", shape_a, "first shape CSV")->required();
  metrics_cmd->add_option("b", shape_b, "second shape CSV")->required();
  metrics_cmd->add_option("--m", m, "resample resolution");

  double V = 1.0;
  int N = 2;
  CLI::App* equil = app.add_subcommand("equilibrium", "equilibrium radius and bounds");
  equil->add_option("--V", V, "drop volume");
  equil->add_option("--N", N, "dimension");

  std::string ode_out = "radial_ode.csv";
  CLI::App* ode = app.add_subcommand("radial-ode", "radial reference dynamics");
  ode->add_option("--config", config_path, "config JSON")->required();
  ode->add_option("--out", ode_out, "output CSV path");

  std::string sweep_param = "h";
  std::vector<double> sweep_values;
  CLI::App* sweep = app.add_subcommand("sweep", "refinement sweep over h or M");
  sweep->add_option("--config", config_path, "base config JSON")->required();
  sweep->add_option("--param", sweep_param, "h or M")->required();
  sweep->add_option("--values", sweep_values, "parameter values")->required()->delimiter(',');
  sweep->add_option("--out", out_dir, "output directory (overrides config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (serial) par::set_enabled(false);

  try {
    if (app.got_subcommand(evolve)) return cmd_evolve(config_path, out_dir, snapshot_stride, seed);
    if (app.got_subcommand(check)) return cmd_check(shape_a, rho, m, dirs, recenter);
    if (app.got_subcommand(metrics_cmd)) return cmd_metrics(shape_a, shape_b, m);
    if (app.got_subcommand(equil)) return cmd_equilibrium(V, N);
    if (app.got_subcommand(ode)) return cmd_radial_ode(config_path, ode_out);
    if (app.got_subcommand(sweep)) return cmd_sweep(config_path, sweep_param, sweep_values, out_dir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "{\"error\":\"validation\",\"message\":\"" << e.what() << "\"}\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "{\"error\":\"validation\",\"message\":\"" << e.what() << "\"}\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "{\"error\":\"numerical\",\"message\":\"" << e.what() << "\"}\n";
    return 3;
  }
  return 0;
}
