#pragma once

#include "json.hpp"

#include "fracplap/errors.hpp"
#include "fracplap/exponent_field.hpp"
#include "fracplap/nonlocal_problem.hpp"
#include "fracplap/regularity.hpp"
#include "fracplap/solver.hpp"
#include "fracplap/vexp_spaces.hpp"

namespace fracplap {

using json = nlohmann::ordered_json;

json to_json(const Point& p, int dim);
json to_json(const ConditionReport& r, int dim);
json to_json(const ModularResult& m);
json to_json(const NormResult& n);
json to_json(const TailResult& t);
json to_json(const CaccioppoliReport& r);
json to_json(const SupBoundReport& r);
json to_json(const GrowthReport& r);
json to_json(const SublevelReport& r);
json to_json(const HolderFit& f, int dim);
json to_json(const ComparisonReport& r);

/// {code, field, message}, plus the issue list for configuration errors.
json error_json(const Error& e);

}  // namespace fracplap
