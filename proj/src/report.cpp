#include "fracplap/report.hpp"

#include <cmath>

namespace fracplap {

namespace {

// JSON has no infinities; unbounded quantities are written as null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json nums(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

}  // namespace

json to_json(const Point& p, int dim) {
  return dim == 2 ? json::array({p[0], p[1]}) : json::array({p[0]});
}

json to_json(const ConditionReport& r, int dim) {
  json j{{"condition", to_string(r.condition)},
         {"pass", r.pass},
         {"witness",
          {{"center", to_json(r.witness.center, dim)},
           {"radius", num(r.witness.radius)},
           {"value", num(r.witness.value)}}}};
  if (r.condition == Condition::P1) j["L_est"] = num(r.L_est);
  j["per_level"] = nums(r.per_level);
  j["levels"] = nums(r.levels);
  return j;
}

json to_json(const ModularResult& m) { return {{"kind", to_string(m.kind)}, {"value", num(m.value)}}; }

json to_json(const NormResult& n) {
  return {{"norm", num(n.value)},
          {"bracket", json::array({num(n.lo), num(n.hi)})},
          {"iterations", n.iterations}};
}

json to_json(const TailResult& t) {
  return {{"value", num(t.value)},
          {"r_outer", num(t.r_outer)},
          {"envelope", num(t.envelope)},
          {"remainder_bound", num(t.remainder)}};
}

json to_json(const CaccioppoliReport& r) {
  return {{"k", num(r.k)},
          {"r", num(r.r)},
          {"R", num(r.R)},
          {"p_minus", num(r.p_minus)},
          {"p_plus", num(r.p_plus)},
          {"lhs_modular", num(r.lhs_modular)},
          {"lhs_cross", num(r.lhs_cross)},
          {"rhs_local", num(r.rhs_local)},
          {"rhs_tail", num(r.rhs_tail)},
          {"C_explicit", num(r.C_explicit)},
          {"C_empirical", num(r.C_empirical)},
          {"slack", num(r.slack)},
          {"satisfied", r.satisfied}};
}

json to_json(const SupBoundReport& r) {
  json j{{"applicable", r.applicable}};
  if (!r.applicable) {
    j["reason"] = r.reason;
    return j;
  }
  j.update({{"R", num(r.R)},
            {"p_minus", num(r.p_minus)},
            {"p_plus", num(r.p_plus)},
            {"p_star", num(r.p_star)},
            {"q", num(r.q)},
            {"lhs_sup", num(r.lhs_sup)},
            {"average", num(r.average)},
            {"local_term", num(r.local_term)},
            {"tail", num(r.tail)},
            {"tail_term", num(r.tail_term)},
            {"C", num(r.C)},
            {"rhs_bound", num(r.rhs_bound)},
            {"C_required", num(r.C_required)},
            {"C_local", num(r.C_local)},
            {"pass", r.pass}});
  return j;
}

json to_json(const GrowthReport& r) {
  json hyp = json::array();
  for (const auto& h : r.hypotheses)
    hyp.push_back({{"name", h.name}, {"holds", h.holds}, {"measured", num(h.measured)},
                   {"limit", num(h.limit)}});
  return {{"hypotheses", hyp},
          {"hypotheses_hold", r.hypotheses_hold},
          {"unmet", r.unmet},
          {"min_quarter", num(r.min_quarter)},
          {"target", num(r.target)},
          {"conclusion_holds", r.conclusion_holds},
          {"pass", r.pass}};
}

json to_json(const SublevelReport& r) {
  json j{{"lhs", num(r.lhs)},
         {"shape", num(r.shape)},
         {"sublevel_measure", num(r.sublevel_measure)},
         {"p_minus", num(r.p_minus)},
         {"p_plus", num(r.p_plus)},
         {"C_required", num(r.C_required)}};
  if (r.C) {
    j["C"] = num(*r.C);
    j["rhs"] = num(r.rhs);
  }
  j["pass"] = r.pass;
  return j;
}

json to_json(const HolderFit& f, int dim) {
  return {{"center", to_json(f.center, dim)},
          {"R", num(f.R)},
          {"radii", nums(f.radii)},
          {"osc", nums(f.osc)},
          {"alpha", num(f.alpha)},
          {"residual", num(f.residual)},
          {"defined", f.defined}};
}

json to_json(const ComparisonReport& r) {
  return {{"pass", r.pass},
          {"g_min", num(r.g_min)},
          {"g_max", num(r.g_max)},
          {"worst_node", r.worst_node},
          {"worst_excess", num(r.worst_excess)}};
}

json error_json(const Error& e) {
  json j{{"code", to_string(e.code())}, {"field", e.field()}, {"message", e.what()}};
  if (const auto* ce = dynamic_cast<const ConfigError*>(&e)) {
    json issues = json::array();
    for (const auto& i : ce->issues()) issues.push_back({{"field", i.field}, {"message", i.message}});
    j["issues"] = issues;
  }
  return j;
}

}  // namespace fracplap
