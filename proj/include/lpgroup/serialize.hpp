#pragma once

#include <json.hpp>

#include "lpgroup/reconstruction.hpp"

namespace lpgroup {

using json = nlohmann::json;

// Complex numbers are [re, im] pairs, matrices are arrays of rows and
// permutations are image arrays. Parsers throw Error(Malformed) on anything
// that does not fit the schema.

json to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const json& j);

json to_json(const std::optional<GroupIso>& iso);

json to_json(const FiniteMeasureAlgebra& algebra);
FiniteMeasureAlgebra algebra_from_json(const json& j);

json to_json(const MeasurableFunction& f);
MeasurableFunction function_from_json(const json& j, const FiniteMeasureAlgebra& algebra);

json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);
json to_json(const Vector& v);

json to_json(const LpContext& ctx);
LpContext context_from_json(const json& j);

json to_json(const Operator& op);
Operator operator_from_json(const json& j);

/// {"context": ..., "f": {"re", "im"}, "phi": [...]}
json to_json(const LampertiForm& form, const LpContext& ctx);
std::pair<LampertiForm, LpContext> lamperti_from_json(const json& j);

json to_json(const AlgebraBasis& a);
AlgebraBasis algebra_basis_from_json(const json& j);

json to_json(const NormEstimate& est);
json to_json(const UnitaryClass& u);
json to_json(const RecoveredGroup& r);
json to_json(const Decision& d);
json to_json(const ChainRuleReport& r);
json to_json(const DualityReport& r);
json to_json(const DegeneracyReport& r);

}  // namespace lpgroup
