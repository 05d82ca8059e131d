// permachk: permanence analysis of discrete-time two-species interaction maps.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "permachk/permachk.hpp"

namespace {

using namespace permachk;

constexpr std::size_t kMaxSteps = 100000000;   // 1e8
constexpr std::size_t kMaxGridPoints = 1000000;  // 1e6

unsigned jobs_from_env() {
  if (const char* env = std::getenv("PERMACHK_JOBS")) {
    const long v = std::atol(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 0;  // auto
}

struct Common {
  std::string model_path;
  std::string out_path;
  unsigned jobs = jobs_from_env();
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--model", c.model_path, "model config JSON")->required();
  cmd->add_option("--out", c.out_path, "output file path")->required();
  cmd->add_option("--jobs", c.jobs, "worker threads (0 = auto)");
}

std::pair<double, double> parse_pair(const std::string& s, char sep, const char* what) {
  const auto pos = s.find(sep);
  if (pos == std::string::npos)
    throw InvalidParameter(std::string("expected '<a>") + sep + "<b>' for " + what);
  return {std::stod(s.substr(0, pos)), std::stod(s.substr(pos + 1))};
}

int run_simulate(const Common& c, const std::string& ic, std::size_t steps) {
  if (steps > kMaxSteps) throw InvalidParameter("steps exceeds the documented bound 1e8");
  const ModelConfig cfg = load_model_config(c.model_path);
  const GrowthModel m = cfg.build();
  const auto [x0, y0] = parse_pair(ic, ',', "--ic");
  const Orbit o = iterate(m, x0, y0, steps);
  std::string csv = "# permachk " + std::string(kVersion) + " config " +
                    config_digest(cfg.source_text) + "\n";
  csv += orbit_csv(m, o);
  atomic_write(c.out_path, csv);
  std::cout << "simulate: " << steps << " steps from (" << x0 << ", " << y0
            << "), final (" << o.x.back() << ", " << o.y.back() << ") -> " << c.out_path
            << "\n";
  return 0;
}

int run_check(const Common& c, const std::string& route, const std::string& variant) {
  const ModelConfig cfg = load_model_config(c.model_path);
  const GrowthModel m = cfg.build();
  CheckOptions opts;
  if (route == "general") opts.route = Route::General;
  else if (route == "predprey") opts.route = Route::PredPrey;
  else if (route != "auto") throw InvalidParameter("--route must be auto|general|predprey");
  if (variant == "point") opts.variant = CondVariant::Point;
  else if (variant == "integral") opts.variant = CondVariant::Integral;
  else if (variant != "auto") throw InvalidParameter("--variant must be point|integral|auto");
  const PermanenceVerdict v = theorem_verdict(m, opts);
  ojson j = to_json(v);
  j["provenance"] = provenance(cfg);
  write_json(c.out_path, j);
  std::cout << "check: " << (v.permanent ? "Permanent" : "NotEstablished") << " (basis "
            << v.basis << ") -> " << c.out_path << "\n";
  return v.permanent ? 0 : 2;
}

int run_invade(const Common& c, const std::string& axis_s, double ic, std::size_t steps,
               std::size_t burn_in, std::size_t window, const std::string& method) {
  if (steps > kMaxSteps) throw InvalidParameter("steps exceeds the documented bound 1e8");
  const ModelConfig cfg = load_model_config(c.model_path);
  const GrowthModel m = cfg.build();
  const Axis axis = axis_s == "x" ? Axis::X : Axis::Y;
  if (axis_s != "x" && axis_s != "y") throw InvalidParameter("--axis must be x|y");
  ojson ests = ojson::array();
  double shown = 0.0;
  if (method == "direct" || method == "both") {
    const auto e = external_exponent_direct(m, axis, ic, steps, burn_in, window);
    ests.push_back(to_json(e));
    shown = e.value;
  }
  if (method == "decomp" || method == "both") {
    const auto fps = find_boundary_fixed_points(m, axis, 1e-6, m.cap(axis));
    bool done = false;
    ExponentEstimate best;
    for (const auto& p : fps) {
      if (p.slope == 0.0) continue;
      try {
        const auto e = external_exponent_decomposed(m, axis, p.coord, ic, steps, burn_in,
                                                    window);
        if (!done || e.value > best.value) best = e;
        done = true;
      } catch (const InapplicableCase&) {
      }
    }
    if (!done)
      throw InvalidParameter("no usable expansion point for the decomposition on this axis");
    ests.push_back(to_json(best));
    shown = best.value;
  }
  if (method != "direct" && method != "decomp" && method != "both")
    throw InvalidParameter("--method must be direct|decomp|both");
  ojson j{{"estimates", ests}, {"provenance", provenance(cfg)}};
  write_json(c.out_path, j);
  std::cout << "invade: axis " << axis_s << ", exponent " << shown << " -> " << c.out_path
            << "\n";
  return 0;
}

int run_verify(const Common& c, const std::string& grid, const std::string& range,
               std::size_t steps, std::size_t burn_in) {
  if (steps > kMaxSteps) throw InvalidParameter("steps exceeds the documented bound 1e8");
  const ModelConfig cfg = load_model_config(c.model_path);
  const GrowthModel m = cfg.build();
  const auto [nx_d, ny_d] = parse_pair(grid, ',', "--grid");
  const std::size_t nx = static_cast<std::size_t>(nx_d), ny = static_cast<std::size_t>(ny_d);
  if (nx * ny > kMaxGridPoints)
    throw InvalidParameter("grid exceeds the documented bound 1e6 points");
  const auto comma = range.find(',');
  if (comma == std::string::npos)
    throw InvalidParameter("--range must be xmin:xmax,ymin:ymax");
  const auto [x_lo, x_hi] = parse_pair(range.substr(0, comma), ':', "--range x");
  const auto [y_lo, y_hi] = parse_pair(range.substr(comma + 1), ':', "--range y");
  const SweepResult r =
      empirical_verify(m, nx, ny, x_lo, x_hi, y_lo, y_hi, steps, burn_in, c.jobs);
  std::string csv = "# permachk " + std::string(kVersion) + " config " +
                    config_digest(cfg.source_text) + "\n";
  csv += sweep_csv(r);
  atomic_write(c.out_path, csv);
  std::cout << "verify: b_hat " << r.b_hat << ", B_hat " << r.B_hat << ", persistent "
            << (r.persistent ? "true" : "false") << " -> " << c.out_path << "\n";
  return 0;
}

int run_scan(const Common& c, const std::string& p1, const std::string& p2,
             std::size_t steps, std::size_t burn_in, const std::string& grid) {
  if (steps > kMaxSteps) throw InvalidParameter("steps exceeds the documented bound 1e8");
  const ModelConfig cfg = load_model_config(c.model_path);
  // Each --param is name=lo:hi:n.
  auto parse_sweep = [](const std::string& s) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw InvalidParameter("--param must be name=lo:hi:n");
    const std::string name = s.substr(0, eq);
    const std::string rest = s.substr(eq + 1);
    const auto c1 = rest.find(':'), c2 = rest.rfind(':');
    if (c1 == std::string::npos || c2 == c1)
      throw InvalidParameter("--param must be name=lo:hi:n");
    const double lo = std::stod(rest.substr(0, c1));
    const double hi = std::stod(rest.substr(c1 + 1, c2 - c1 - 1));
    const std::size_t n = static_cast<std::size_t>(std::stoul(rest.substr(c2 + 1)));
    if (n < 1 || n > kMaxGridPoints) throw InvalidParameter("--param count out of bounds");
    return std::tuple<std::string, std::vector<double>>{name, linspace(lo, hi, n)};
  };
  const auto [name1, vals1] = parse_sweep(p1);
  std::string name2;
  std::vector<double> vals2{0.0};
  const bool two = !p2.empty();
  if (two) std::tie(name2, vals2) = parse_sweep(p2);
  if (vals1.size() * vals2.size() > kMaxGridPoints)
    throw InvalidParameter("scan grid exceeds the documented bound 1e6 points");
  const auto [gx, gy] = parse_pair(grid, ',', "--grid");

  std::string csv = "# permachk " + std::string(kVersion) + " config " +
                    config_digest(cfg.source_text) + "\n";
  csv += name1 + (two ? "," + name2 : std::string()) +
         ",conclusion,basis,persistent,b_hat\n";
  for (double v1 : vals1)
    for (double v2 : vals2) {
      ModelConfig point = cfg;
      point.params[name1] = v1;
      if (two) point.params[name2] = v2;
      const GrowthModel m = point.build();
      const PermanenceVerdict verdict = theorem_verdict(m);
      const SweepResult sweep = empirical_verify(
          m, static_cast<std::size_t>(gx), static_cast<std::size_t>(gy), 1e-3, 3.0, 1e-3,
          3.0, steps, burn_in, c.jobs);
      csv += csv_num(v1);
      if (two) csv += "," + csv_num(v2);
      csv += std::string(",") + (verdict.permanent ? "Permanent" : "NotEstablished") + "," +
             verdict.basis + "," + (sweep.persistent ? "1" : "0") + "," +
             csv_num(sweep.b_hat) + "\n";
    }
  atomic_write(c.out_path, csv);
  std::cout << "scan: " << vals1.size() * (two ? vals2.size() : 1) << " points -> "
            << c.out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permanence analysis of discrete-time two-species maps"};
  app.require_subcommand(1);

  Common c_sim, c_chk, c_inv, c_ver, c_scn;
  std::string ic = "0.5,0.5", route = "auto", variant = "auto", axis = "x";
  std::string method = "both", grid = "20,20", range = "1e-3:3,1e-3:3";
  std::string param1, param2, scan_grid = "10,10";
  double inv_ic = 0.5;
  std::size_t steps = 100000, burn_in = 10000, window = 1000;
  std::size_t v_steps = 100000, v_burn = 10000, s_steps = 20000, s_burn = 2000;

  auto* sim = app.add_subcommand("simulate", "iterate an orbit and write t,x,y,F,G CSV");
  add_common(sim, c_sim);
  sim->add_option("--ic", ic, "initial condition x,y");
  sim->add_option("--steps", steps, "horizon");

  auto* chk = app.add_subcommand("check", "evaluate permanence conditions and verdict");
  add_common(chk, c_chk);
  chk->add_option("--route", route, "auto|general|predprey");
  chk->add_option("--variant", variant, "point|integral|auto");

  auto* inv = app.add_subcommand("invade", "estimate the external Lyapunov exponent");
  add_common(inv, c_inv);
  inv->add_option("--axis", axis, "x|y");
  inv->add_option("--ic", inv_ic, "resident initial density");
  inv->add_option("--steps", steps, "horizon");
  inv->add_option("--burn-in", burn_in, "burn-in steps");
  inv->add_option("--window", window, "tail window length");
  inv->add_option("--method", method, "direct|decomp|both");

  auto* ver = app.add_subcommand("verify", "interior initial-condition sweep");
  add_common(ver, c_ver);
  ver->add_option("--grid", grid, "nx,ny");
  ver->add_option("--range", range, "xmin:xmax,ymin:ymax");
  ver->add_option("--steps", v_steps, "horizon");
  ver->add_option("--burn-in", v_burn, "burn-in steps");

  auto* scn = app.add_subcommand("scan", "parameter sweep of verdict + persistence");
  add_common(scn, c_scn);
  scn->add_option("--param", param1, "first sweep: name=lo:hi:n")->required();
  scn->add_option("--param2", param2, "optional second sweep: name=lo:hi:n");
  scn->add_option("--steps", s_steps, "persistence horizon per point");
  scn->add_option("--burn-in", s_burn, "persistence burn-in per point");
  scn->add_option("--grid", scan_grid, "persistence grid nx,ny per point");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return run_simulate(c_sim, ic, steps);
    if (chk->parsed()) return run_check(c_chk, route, variant);
    if (inv->parsed()) return run_invade(c_inv, axis, inv_ic, steps, burn_in, window, method);
    if (ver->parsed()) return run_verify(c_ver, grid, range, v_steps, v_burn);
    if (scn->parsed()) return run_scan(c_scn, param1, param2, s_steps, s_burn, scan_grid);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
