#include "fracplap/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fracplap/errors.hpp"
#include "fracplap/io.hpp"

namespace pt = boost::property_tree;

namespace fracplap {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

bool to_double(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  try {
    std::size_t used = 0;
    out = std::stod(t, &used);
    return used == t.size() && std::isfinite(out);
  } catch (const std::exception&) {
    return false;
  }
}

bool to_int(const std::string& text, long long& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  try {
    std::size_t used = 0;
    out = std::stoll(t, &used);
    return used == t.size();
  } catch (const std::exception&) {
    return false;
  }
}

bool to_doubles(const std::string& text, std::vector<double>& out) {
  out.clear();
  if (trim(text).empty()) return true;
  for (const auto& item : split(text, ',')) {
    double v;
    if (!to_double(item, v)) return false;
    out.push_back(v);
  }
  return true;
}

// dim outside {1, 2} accepts either form; dim itself is reported separately.
bool to_point(const std::string& text, Point& out, int dim) {
  std::vector<double> v;
  if (!to_doubles(text, v) || v.empty() || v.size() > 2) return false;
  if ((dim == 1 || dim == 2) && static_cast<int>(v.size()) != dim) return false;
  out = {v[0], v.size() > 1 ? v[1] : 0.0};
  return true;
}

class Reader {
 public:
  Reader(const pt::ptree& tree, std::vector<ConfigIssue>& issues) : tree_(tree), issues_(issues) {}

  template <class F>
  void with(const std::string& section, const std::string& key, const char* expected, F parse) {
    known_.insert(section + "." + key);
    const auto sec = tree_.get_child_optional(section);
    if (!sec) return;
    const auto node = sec->get_child_optional(pt::ptree::path_type(key, '\0'));
    if (!node) return;
    if (!parse(node->data()))
      issues_.push_back({section + "." + key, std::string("expected ") + expected + ", got '" +
                                                  node->data() + "'"});
  }

  void real(const std::string& sec, const std::string& key, double& out) {
    with(sec, key, "a finite number", [&](const std::string& t) { return to_double(t, out); });
  }
  void integer(const std::string& sec, const std::string& key, int& out) {
    with(sec, key, "an integer", [&](const std::string& t) {
      long long v;
      if (!to_int(t, v) || v < INT32_MIN || v > INT32_MAX) return false;
      out = static_cast<int>(v);
      return true;
    });
  }
  void text(const std::string& sec, const std::string& key, std::string& out) {
    with(sec, key, "text", [&](const std::string& t) {
      out = trim(t);
      return true;
    });
  }
  void reals(const std::string& sec, const std::string& key, std::vector<double>& out) {
    with(sec, key, "a comma-separated list of numbers",
         [&](const std::string& t) { return to_doubles(t, out); });
  }
  void point(const std::string& sec, const std::string& key, Point& out, int dim) {
    with(sec, key, "one coordinate per grid dimension, comma-separated",
         [&](const std::string& t) { return to_point(t, out, dim); });
  }
  void points(const std::string& sec, const std::string& key, std::vector<Point>& out,
              int dim) {
    with(sec, key, "points separated by ';'", [&](const std::string& t) {
      out.clear();
      for (const auto& item : split(t, ';')) {
        Point p;
        if (!to_point(item, p, dim)) return false;
        out.push_back(p);
      }
      return !out.empty();
    });
  }

  void flag_unknown() {
    static const std::set<std::string> sections{"run", "grid", "field", "solve", "exterior",
                                                "diagnostics"};
    for (const auto& [name, sec] : tree_) {
      if (!sections.count(name)) {
        issues_.push_back({name, sec.empty() && !sec.data().empty()
                                     ? "keys must belong to a section"
                                     : "unknown section [" + name + "]"});
        continue;
      }
      for (const auto& [key, value] : sec)
        if (!known_.count(name + "." + key)) issues_.push_back({name + "." + key, "unknown key"});
    }
  }

 private:
  const pt::ptree& tree_;
  std::vector<ConfigIssue>& issues_;
  std::set<std::string> known_;
};

void read_all(const pt::ptree& tree, RunConfig& c, std::vector<ConfigIssue>& issues) {
  Reader r(tree, issues);
  r.with("run", "seed", "a nonnegative integer", [&](const std::string& t) {
    long long v;
    if (!to_int(t, v) || v < 0) return false;
    c.seed = static_cast<std::uint64_t>(v);
    return true;
  });
  r.text("run", "out", c.out_dir);
  r.text("run", "input", c.input);

  GridSpec& g = c.solve.grid;
  r.integer("grid", "dim", g.dim);
  r.point("grid", "center", g.center, g.dim);
  r.point("grid", "half_width", g.half_width, g.dim);
  r.real("grid", "r_trunc", g.r_trunc);
  r.integer("grid", "nodes", g.nodes);
  if (g.dim == 1) {
    g.center[1] = 0.0;
    g.half_width[1] = g.half_width[0];
  }

  FieldSpec& f = c.solve.field;
  r.with("field", "kind", "one of constant, remark_i, remark_ii, affine, tabulated",
         [&](const std::string& t) {
           try {
             f.kind = parse_exponent_kind(trim(t));
             return f.kind != ExponentKind::custom;
           } catch (const Error&) {
             return false;
           }
         });
  r.real("field", "p", f.p);
  r.real("field", "base", f.base);
  r.real("field", "slope", f.slope);
  r.real("field", "p_min", f.p_min);
  r.real("field", "p_max", f.p_max);
  r.text("field", "path", f.path);

  SolveConfig& s = c.solve;
  r.real("solve", "s", s.s);
  r.real("solve", "sigma", s.sigma);
  r.real("solve", "q", s.q);
  r.real("solve", "grad_tol", s.options.grad_tol);
  r.integer("solve", "max_iter", s.options.max_iter);
  r.real("solve", "step0", s.options.step0);
  r.real("solve", "backtrack", s.options.backtrack);
  r.real("solve", "armijo", s.options.armijo);
  r.integer("solve", "warm_steps", s.options.warm_steps);

  ExteriorSpec& e = c.solve.exterior;
  r.with("exterior", "kind", "one of constant, linear, sign, random, csv",
         [&](const std::string& t) {
           try {
             e.kind = parse_exterior_kind(trim(t));
             return true;
           } catch (const Error&) {
             return false;
           }
         });
  r.real("exterior", "value", e.value);
  r.real("exterior", "slope", e.slope);
  r.real("exterior", "amplitude", e.amplitude);
  r.integer("exterior", "modes", e.modes);
  r.text("exterior", "path", e.path);

  DiagnosticsConfig& d = c.diagnostics;
  r.point("diagnostics", "x0", d.x0, c.solve.grid.dim);
  r.real("diagnostics", "radius", d.radius);
  r.real("diagnostics", "r_ratio", d.r_ratio);
  r.reals("diagnostics", "levels", d.levels);
  r.real("diagnostics", "sup_radius", d.sup_radius);
  r.real("diagnostics", "sup_C", d.sup_C);
  r.real("diagnostics", "growth_H", d.growth_H);
  r.real("diagnostics", "growth_gamma", d.growth_gamma);
  r.real("diagnostics", "growth_radius", d.growth_radius);
  r.real("diagnostics", "sublevel_level", d.sublevel_level);
  r.real("diagnostics", "sublevel_q", d.sublevel_q);
  r.real("diagnostics", "holder_radius", d.holder_radius);
  r.integer("diagnostics", "holder_jmax", d.holder_jmax);
  r.real("diagnostics", "norm_tol", d.norm_tol);
  r.reals("diagnostics", "p_radii", d.p_radii);
  r.points("diagnostics", "p_centers", d.p_centers, c.solve.grid.dim);
  r.integer("diagnostics", "p_refinements", d.p_refinements);
  r.reals("diagnostics", "log_scales", d.log_scales);

  r.flag_unknown();
  c.solve.seed = c.seed;
  c.solve.exterior.seed = c.seed;
}

std::vector<ConfigIssue> check(const RunConfig& c) {
  std::vector<ConfigIssue> out;
  auto need = [&](bool ok, const char* field, const std::string& msg) {
    if (!ok) out.push_back({field, msg});
  };
  const GridSpec& g = c.solve.grid;
  need(g.dim == 1 || g.dim == 2, "grid.dim", "must be 1 or 2");
  need(g.nodes >= 9 && g.nodes % 2 == 1, "grid.nodes", "must be odd and at least 9");
  const int dim = (g.dim == 2) ? 2 : 1;
  double circ = 0.0;
  bool widths_ok = true;
  for (int k = 0; k < dim; ++k) {
    widths_ok = widths_ok && g.half_width[k] > 0.0;
    circ = std::hypot(circ, g.half_width[k]);
  }
  need(widths_ok, "grid.half_width", "must be positive");
  need(g.r_trunc > circ, "grid.r_trunc", "must exceed the domain circumradius");
  if (widths_ok && g.nodes >= 9 && g.r_trunc > circ) {
    for (int k = 0; k < dim; ++k) {
      const double h = 2.0 * g.half_width[k] / g.nodes;
      if (std::floor((g.r_trunc - g.half_width[k]) / h + 1e-9) < 1) {
        out.push_back({"grid.r_trunc", "leaves no exterior collar at this resolution"});
        break;
      }
    }
  }

  const FieldSpec& f = c.solve.field;
  switch (f.kind) {
    case ExponentKind::constant: need(f.p > 1.0, "field.p", "must exceed 1"); break;
    case ExponentKind::affine:
      need(f.p_min > 1.0, "field.p_min", "must exceed 1");
      need(f.p_max >= f.p_min, "field.p_max", "must be at least p_min");
      break;
    case ExponentKind::tabulated: need(!f.path.empty(), "field.path", "required for tabulated fields"); break;
    default: break;
  }

  const SolveConfig& s = c.solve;
  need(s.s > 0.0 && s.s < 1.0, "solve.s", "must lie in (0, 1)");
  need(s.sigma > 0.0 && s.sigma < s.s, "solve.sigma", "must lie in (0, s)");
  need(s.q >= 1.0, "solve.q", "must be at least 1");
  need(s.options.grad_tol > 0.0, "solve.grad_tol", "must be positive");
  need(s.options.max_iter >= 1, "solve.max_iter", "must be positive");
  need(s.options.step0 > 0.0, "solve.step0", "must be positive");
  need(s.options.backtrack > 0.0 && s.options.backtrack < 1.0, "solve.backtrack", "must lie in (0, 1)");
  need(s.options.armijo > 0.0 && s.options.armijo < 1.0, "solve.armijo", "must lie in (0, 1)");
  need(s.options.warm_steps >= 0, "solve.warm_steps", "must be nonnegative");

  const ExteriorSpec& e = c.solve.exterior;
  need(e.modes >= 1, "exterior.modes", "must be positive");
  if (e.kind == ExteriorKind::csv) need(!e.path.empty(), "exterior.path", "required for csv data");

  const DiagnosticsConfig& d = c.diagnostics;
  need(d.radius > 0.0, "diagnostics.radius", "must be positive");
  need(d.r_ratio > 0.0 && d.r_ratio < 1.0, "diagnostics.r_ratio", "must lie in (0, 1)");
  need(d.sup_radius > 0.0, "diagnostics.sup_radius", "must be positive");
  need(d.sup_C >= 0.0, "diagnostics.sup_C", "must be nonnegative");
  need(d.growth_H > 0.0, "diagnostics.growth_H", "must be positive");
  need(d.growth_gamma > 0.0 && d.growth_gamma < 1.0, "diagnostics.growth_gamma", "must lie in (0, 1)");
  need(d.growth_radius > 0.0 && d.growth_radius < 1.0, "diagnostics.growth_radius", "must lie in (0, 1)");
  need(d.sublevel_q >= 1.0, "diagnostics.sublevel_q", "must be at least 1");
  need(d.holder_radius > 0.0, "diagnostics.holder_radius", "must be positive");
  need(d.holder_jmax >= 2, "diagnostics.holder_jmax", "must be at least 2");
  need(d.norm_tol > 0.0, "diagnostics.norm_tol", "must be positive");
  bool radii_ok = !d.p_radii.empty();
  for (double r : d.p_radii) radii_ok = radii_ok && r > 0.0;
  need(radii_ok, "diagnostics.p_radii", "must be a nonempty list of positive radii");
  need(d.p_refinements >= 1, "diagnostics.p_refinements", "must be positive");
  bool scales_ok = d.log_scales.size() >= 2;
  for (double v : d.log_scales) scales_ok = scales_ok && v > 0.0 && v <= 0.5;
  need(scales_ok, "diagnostics.log_scales", "needs at least two scales in (0, 1/2]");
  return out;
}

std::string join_point(const Point& p, int dim) {
  return dim == 2 ? format_double(p[0]) + "," + format_double(p[1]) : format_double(p[0]);
}

std::string join_reals(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + format_double(v[k]);
  return s;
}

}  // namespace

ExponentKind parse_exponent_kind(const std::string& name) {
  if (name == "constant") return ExponentKind::constant;
  if (name == "remark_i") return ExponentKind::remark_i;
  if (name == "remark_ii") return ExponentKind::remark_ii;
  if (name == "affine") return ExponentKind::affine;
  if (name == "tabulated") return ExponentKind::tabulated;
  throw ArgumentError("unknown exponent kind '" + name + "'", "field.kind");
}

ExteriorKind parse_exterior_kind(const std::string& name) {
  if (name == "constant") return ExteriorKind::constant;
  if (name == "linear") return ExteriorKind::linear;
  if (name == "sign") return ExteriorKind::sign;
  if (name == "random") return ExteriorKind::random;
  if (name == "csv") return ExteriorKind::csv;
  throw ArgumentError("unknown exterior kind '" + name + "'", "exterior.kind");
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError({{"", origin + ":" + std::to_string(e.line()) + ": " + e.message()}});
  }
  RunConfig c;
  c.config_path = origin;
  std::vector<ConfigIssue> issues;
  read_all(tree, c, issues);
  auto more = check(c);
  issues.insert(issues.end(), more.begin(), more.end());
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return c;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path, path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

void validate(const RunConfig& config) {
  auto issues = check(config);
  if (!issues.empty()) throw ConfigError(std::move(issues));
}

std::string serialize(const RunConfig& c) {
  std::ostringstream o;
  const GridSpec& g = c.solve.grid;
  const FieldSpec& f = c.solve.field;
  const SolveConfig& s = c.solve;
  const ExteriorSpec& e = c.solve.exterior;
  const DiagnosticsConfig& d = c.diagnostics;
  const int dim = g.dim;
  auto num = [](double v) { return format_double(v); };

  o << "[run]\n"
    << "seed = " << c.seed << "\n"
    << "out = " << c.out_dir << "\n"
    << "input = " << c.input << "\n\n";
  o << "[grid]\n"
    << "dim = " << g.dim << "\n"
    << "center = " << join_point(g.center, dim) << "\n"
    << "half_width = " << join_point(g.half_width, dim) << "\n"
    << "r_trunc = " << num(g.r_trunc) << "\n"
    << "nodes = " << g.nodes << "\n\n";
  o << "[field]\n"
    << "kind = " << to_string(f.kind) << "\n"
    << "p = " << num(f.p) << "\n"
    << "base = " << num(f.base) << "\n"
    << "slope = " << num(f.slope) << "\n"
    << "p_min = " << num(f.p_min) << "\n"
    << "p_max = " << num(f.p_max) << "\n"
    << "path = " << f.path << "\n\n";
  o << "[solve]\n"
    << "s = " << num(s.s) << "\n"
    << "sigma = " << num(s.sigma) << "\n"
    << "q = " << num(s.q) << "\n"
    << "grad_tol = " << num(s.options.grad_tol) << "\n"
    << "max_iter = " << s.options.max_iter << "\n"
    << "step0 = " << num(s.options.step0) << "\n"
    << "backtrack = " << num(s.options.backtrack) << "\n"
    << "armijo = " << num(s.options.armijo) << "\n"
    << "warm_steps = " << s.options.warm_steps << "\n\n";
  o << "[exterior]\n"
    << "kind = " << to_string(e.kind) << "\n"
    << "value = " << num(e.value) << "\n"
    << "slope = " << num(e.slope) << "\n"
    << "amplitude = " << num(e.amplitude) << "\n"
    << "modes = " << e.modes << "\n"
    << "path = " << e.path << "\n\n";
  std::string centers;
  for (std::size_t k = 0; k < d.p_centers.size(); ++k)
    centers += (k ? ";" : "") + join_point(d.p_centers[k], dim);
  o << "[diagnostics]\n"
    << "x0 = " << join_point(d.x0, dim) << "\n"
    << "radius = " << num(d.radius) << "\n"
    << "r_ratio = " << num(d.r_ratio) << "\n"
    << "levels = " << join_reals(d.levels) << "\n"
    << "sup_radius = " << num(d.sup_radius) << "\n"
    << "sup_C = " << num(d.sup_C) << "\n"
    << "growth_H = " << num(d.growth_H) << "\n"
    << "growth_gamma = " << num(d.growth_gamma) << "\n"
    << "growth_radius = " << num(d.growth_radius) << "\n"
    << "sublevel_level = " << num(d.sublevel_level) << "\n"
    << "sublevel_q = " << num(d.sublevel_q) << "\n"
    << "holder_radius = " << num(d.holder_radius) << "\n"
    << "holder_jmax = " << d.holder_jmax << "\n"
    << "norm_tol = " << num(d.norm_tol) << "\n"
    << "p_radii = " << join_reals(d.p_radii) << "\n"
    << "p_centers = " << centers << "\n"
    << "p_refinements = " << d.p_refinements << "\n"
    << "log_scales = " << join_reals(d.log_scales) << "\n";
  return o.str();
}

}  // namespace fracplap
