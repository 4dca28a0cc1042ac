#include "fracplap/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "fracplap/io.hpp"
#include "fracplap/report.hpp"

namespace fs = std::filesystem;

namespace fracplap {

namespace {

struct Setup {
  std::shared_ptr<NonlocalProblem> problem;
  GridFunction g;
};

Setup build(const RunConfig& cfg) {
  Grid grid = Grid::build(cfg.solve.grid);
  GridFunction g = make_exterior(grid, cfg.solve.exterior);
  auto prob = std::make_shared<NonlocalProblem>(std::move(grid), make_field(cfg.solve.field),
                                                cfg.solve.s);
  return {std::move(prob), std::move(g)};
}

fs::path out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  return fs::path(cfg.out_dir) / name;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path.string(), path.string());
  f << j.dump(2) << '\n';
}

GridFunction load_input(const RunConfig& cfg, const Setup& setup, std::ostream& out,
                        json& meta) {
  if (!cfg.input.empty()) {
    meta["input"] = cfg.input;
    return read_grid_function(cfg.input, setup.problem->grid());
  }
  auto res = minimize(*setup.problem, setup.g, cfg.solve.options);
  meta["input"] = nullptr;
  meta["solve_iterations"] = res.iterations;
  meta["solve_residual"] = res.final_residual;
  (void)out;
  return std::move(res.u);
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const Setup setup = build(cfg);
  const Grid& grid = setup.problem->grid();
  SolveResult res;
  bool converged = true;
  std::string failure;
  try {
    res = minimize(*setup.problem, setup.g, cfg.solve.options);
  } catch (const ConvergenceError& e) {
    res = e.partial();
    converged = false;
    failure = e.what();
  }
  const auto sol = out_path(cfg, "solution.csv");
  const auto hist = out_path(cfg, "energy_history.csv");
  write_grid_function(sol.string(), grid, res.u);
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < res.energy_history.size(); ++k)
    rows.push_back({static_cast<double>(k), res.energy_history[k]});
  write_csv(hist.string(), {"step", "energy"}, rows);

  const auto cmp = comparison_check(grid, res, setup.g);
  bool exterior_exact = true;
  for (auto j : grid.exterior()) exterior_exact = exterior_exact && res.u[j] == setup.g[j];
  json j{{"iterations", res.iterations},
         {"final_residual", res.final_residual},
         {"final_gradient", res.final_gradient},
         {"converged", converged},
         {"energy", res.energy_history.empty() ? 0.0 : res.energy_history.back()},
         {"energy_history_path", hist.string()},
         {"solution_path", sol.string()},
         {"exterior_exact", exterior_exact},
         {"comparison", to_json(cmp)}};
  if (!converged) j["failure"] = failure;
  write_json(out_path(cfg, "solve.json"), j);
  out << j.dump(2) << '\n';
  if (!converged) throw ConvergenceError(failure, res);
  return cmp.pass && exterior_exact ? 0 : 2;
}

int cmd_norms(const RunConfig& cfg, std::ostream& out) {
  if (cfg.input.empty()) throw ArgumentError("norms needs an input CSV (--input)", "run.input");
  const Grid grid = Grid::build(cfg.solve.grid);
  const ExponentField field = make_field(cfg.solve.field);
  const GridFunction u = read_grid_function(cfg.input, grid);
  const auto region = grid.interior();
  const double s = cfg.solve.s, tol = cfg.diagnostics.norm_tol;
  auto entry = [](const ModularResult& m, const NormResult& n) {
    json j = to_json(n);
    j["modular"] = m.value;
    return j;
  };
  json j{{"input", cfg.input},
         {"lebesgue", entry(lebesgue_modular(u, field, grid, region),
                            lebesgue_norm(u, field, grid, region, tol))},
         {"gagliardo", entry(gagliardo_modular(u, field, s, grid, region, region),
                             sobolev_seminorm(u, field, s, grid, region, tol))},
         {"combined", entry(combined_modular(u, field, s, grid, region),
                            combined_norm(u, field, s, grid, region, tol))}};
  write_json(out_path(cfg, "norms.json"), j);
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_diagnose(const RunConfig& cfg, std::ostream& out) {
  const Setup setup = build(cfg);
  const NonlocalProblem& prob = *setup.problem;
  const Grid& grid = prob.grid();
  const DiagnosticsConfig& d = cfg.diagnostics;
  json j;
  const GridFunction u = load_input(cfg, setup, out, j);

  std::vector<double> levels = d.levels;
  if (levels.empty()) levels = ball_quantiles(grid, u, d.x0, d.radius, {0.25, 0.5, 0.75});

  bool ok = true;
  json cac = json::array();
  for (double k : levels) {
    const auto rep = caccioppoli_report(prob, u, d.x0, d.radius * d.r_ratio, d.radius, k);
    ok = ok && rep.satisfied;
    cac.push_back(to_json(rep));
  }
  j["caccioppoli"] = cac;
  j["tail"] = to_json(prob.tail(u, d.x0, d.radius, TailSign::plus));
  j["sup_bound"] = to_json(
      sup_bound_check(prob, u, d.x0, d.sup_radius, cfg.solve.sigma, cfg.solve.q, d.sup_C));

  GrowthScenario sc;
  sc.H = d.growth_H;
  sc.gamma = d.growth_gamma;
  sc.R = d.growth_radius;
  sc.x0 = d.x0;
  sc.sigma = cfg.solve.sigma;
  sc.q = d.sublevel_q;
  const auto cal = calibrate_growth_delta(prob, u, sc);
  json growth = to_json(cal.report);
  growth["delta"] = cal.delta;
  growth["delta_found"] = cal.found;
  ok = ok && cal.report.pass;
  j["growth"] = growth;

  const double level = d.sublevel_level > 0.0 ? d.sublevel_level
                                           : ball_quantiles(grid, u, d.x0, d.radius, {0.5})[0];
  j["sublevel"] = to_json(sublevel_energy_check(prob, u, d.x0, d.radius, level, cfg.solve.sigma,
                                                d.sublevel_q));
  j["sublevel"]["level"] = level;
  j["holder"] = to_json(holder_exponent_fit(grid, u, d.x0, d.holder_radius, d.holder_jmax),
                        grid.dim());
  j["hard_assertions_pass"] = ok;
  write_json(out_path(cfg, "diagnostics.json"), j);
  out << j.dump(2) << '\n';
  return ok ? 0 : 2;
}

int cmd_iterate(const RunConfig& cfg, const IterateArgs& args, std::ostream& out, bool to_file) {
  const auto res = degiorgi_iterate(args.params, args.j_max);
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < res.Y.size(); ++j)
    rows.push_back({static_cast<double>(j), static_cast<double>(res.Y[j]),
                    static_cast<double>(res.bound[j])});
  out << "j,Y,bound\n";
  for (const auto& r : rows)
    out << static_cast<long>(r[0]) << ',' << format_double(r[1]) << ',' << format_double(r[2]) << '\n';
  if (to_file) {
    write_csv(out_path(cfg, "iterate.csv").string(), {"j", "Y", "bound"}, rows);
    write_json(out_path(cfg, "iterate.json"),
               {{"threshold", static_cast<double>(res.threshold)},
                {"threshold_met", res.threshold_met},
                {"bound_holds", res.bound_holds},
                {"max_relative_excess", static_cast<double>(res.max_relative_excess)}});
  }
  return !res.threshold_met || res.bound_holds ? 0 : 2;
}

int cmd_check_exponent(const RunConfig& cfg, const CheckExponentArgs& args, std::ostream& out) {
  FieldSpec fs = cfg.solve.field;
  if (!args.preset.empty()) fs.kind = parse_exponent_kind(args.preset);
  const ExponentField field = make_field(fs);
  const GridSpec& spec = cfg.solve.grid;
  const Grid grid = Grid::build(spec);
  const DiagnosticsConfig& d = cfg.diagnostics;
  const int dim = grid.dim();
  json j{{"field", field.name()},
         {"p_min", field.p_min()},
         {"p_max", field.p_max()},
         {"P1", to_json(check_P1(field, spec, d.p_radii, d.p_centers, d.p_refinements), dim)},
         {"P2", to_json(check_P2(field, grid, d.p_radii, d.p_centers), dim)},
         {"logHolder", to_json(check_log_holder(field, grid, d.log_scales), dim)}};
  write_json(out_path(cfg, "exponent.json"), j);
  out << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int run_suite(Command command, const RunConfig& config, std::ostream& out,
              const IterateArgs& iterate, const CheckExponentArgs& check) {
  switch (command) {
    case Command::solve: return cmd_solve(config, out);
    case Command::norms: return cmd_norms(config, out);
    case Command::diagnose: return cmd_diagnose(config, out);
    case Command::iterate: return cmd_iterate(config, iterate, out, true);
    case Command::check_exponent: return cmd_check_exponent(config, check, out);
  }
  return 1;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variable-exponent fractional p-Laplacian laboratory", "fracplap"};
  app.require_subcommand(1);
  std::string config_path, out_dir, input;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "Configuration file");
  app.add_option("--out", out_dir, "Output directory");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized data");

  auto* solve = app.add_subcommand("solve", "Minimize the discrete energy");
  auto* norms = app.add_subcommand("norms", "Modulars and norms of a grid function");
  norms->add_option("--input", input, "Grid function CSV (x[,y],u)");
  auto* diagnose = app.add_subcommand("diagnose", "Regularity diagnostics of a solution");
  diagnose->add_option("--input", input, "Solution CSV; solved in-process when omitted");

  IterateArgs it;
  std::string betas = "1";
  auto* iterate = app.add_subcommand("iterate", "Simulate the level-set recursion");
  iterate->add_option("--C", it.params.C, "C >= 1")->capture_default_str();
  iterate->add_option("--b", it.params.b, "b > 1")->capture_default_str();
  iterate->add_option("--betas", betas, "Comma-separated, non-increasing")->capture_default_str();
  iterate->add_option("--y0", it.params.Y0, "Y_0 >= 0")->capture_default_str();
  iterate->add_option("--jmax", it.j_max, "Last index")->capture_default_str();

  CheckExponentArgs ce;
  auto* check = app.add_subcommand("check-exponent", "Exponent conditions P1, P2, log-Hoelder");
  check->add_option("--preset", ce.preset, "constant | remark_i | remark_ii | affine");

  for (auto* sub : {solve, norms, diagnose, iterate, check}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : parse_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!input.empty()) cfg.input = input;
    if (*seed_opt) {
      cfg.seed = seed;
      cfg.solve.seed = seed;
      cfg.solve.exterior.seed = seed;
    }
    validate(cfg);

    if (*iterate) {
      it.params.betas.clear();
      std::stringstream ss(betas);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          it.params.betas.push_back(std::stod(item));
        } catch (const std::exception&) {
          throw ArgumentError("betas must be comma-separated numbers", "betas");
        }
      }
      return cmd_iterate(cfg, it, out, !out_dir.empty());
    }
    if (*solve) return run_suite(Command::solve, cfg, out);
    if (*norms) return run_suite(Command::norms, cfg, out);
    if (*diagnose) return run_suite(Command::diagnose, cfg, out);
    return run_suite(Command::check_exponent, cfg, out, {}, ce);
  } catch (const Error& e) {
    err << error_json(e).dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << json{{"code", "internal"}, {"field", ""}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
}

}  // namespace fracplap
