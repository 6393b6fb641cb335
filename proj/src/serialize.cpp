#include "lpgroup/serialize.hpp"

#include <string>

#include "lpgroup/error.hpp"

namespace lpgroup {

namespace {

template <typename F>
auto guarded(const char* what, F&& parse) {
  try {
    return parse();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Malformed, std::string("malformed ") + what + ": " + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::Malformed, std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

json complex_json(const complex& z) { return json::array({z.real(), z.imag()}); }

complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::Malformed, "complex numbers are [re, im] pairs");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Permutation perm_from_json(const json& j) {
  const auto images = j.get<std::vector<std::size_t>>();
  if (!is_permutation(images)) throw Error(ErrorKind::Malformed, "array is not a permutation");
  return Permutation(images);
}

json perm_json(const Permutation& p) { return json(std::vector<std::size_t>(p.images().begin(), p.images().end())); }

}  // namespace

json to_json(const FiniteGroup& g) {
  return {{"order", g.order()}, {"table", g.table()}, {"identity", g.identity()}};
}

FiniteGroup group_from_json(const json& j) {
  return guarded("group", [&] {
    const auto order = field(j, "order").get<std::size_t>();
    auto table = field(j, "table").get<std::vector<std::vector<std::size_t>>>();
    if (table.size() != order) throw Error(ErrorKind::Malformed, "table size differs from order");
    try {
      return FiniteGroup(std::move(table), field(j, "identity").get<std::size_t>());
    } catch (const Error& e) {
      throw Error(ErrorKind::Malformed, std::string("not a group: ") + e.what());
    }
  });
}

json to_json(const std::optional<GroupIso>& iso) {
  if (!iso) return nullptr;
  return {{"map", iso->map}};
}

json to_json(const FiniteMeasureAlgebra& algebra) { return {{"weights", algebra.weights()}}; }

FiniteMeasureAlgebra algebra_from_json(const json& j) {
  return guarded("measure algebra", [&] { return FiniteMeasureAlgebra(field(j, "weights").get<std::vector<double>>()); });
}

json to_json(const MeasurableFunction& f) {
  std::vector<double> re, im;
  for (const complex& v : f.values()) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  return {{"re", re}, {"im", im}};
}

MeasurableFunction function_from_json(const json& j, const FiniteMeasureAlgebra& algebra) {
  return guarded("function", [&] {
    const auto re = field(j, "re").get<std::vector<double>>();
    const auto im = j.contains("im") ? j.at("im").get<std::vector<double>>() : std::vector<double>(re.size(), 0.0);
    if (re.size() != im.size()) throw Error(ErrorKind::Malformed, "re and im differ in length");
    std::vector<complex> values(re.size());
    for (std::size_t x = 0; x < re.size(); ++x) values[x] = {re[x], im[x]};
    return MeasurableFunction(algebra, std::move(values));
  });
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  return guarded("matrix", [&] {
    if (!j.is_array() || j.empty()) throw Error(ErrorKind::Malformed, "matrix must be a nonempty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j.at(0).size();
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
      if (!j.at(i).is_array() || j.at(i).size() != cols) throw Error(ErrorKind::Malformed, "ragged matrix");
      for (std::size_t k = 0; k < cols; ++k) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(j.at(i).at(k));
      }
    }
    return m;
  });
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

json to_json(const LpContext& ctx) { return {{"weights", ctx.algebra().weights()}, {"p", ctx.p()}}; }

LpContext context_from_json(const json& j) {
  return guarded("context", [&] { return LpContext(algebra_from_json(j), field(j, "p").get<double>()); });
}

json to_json(const Operator& op) { return {{"context", to_json(op.context)}, {"matrix", to_json(op.matrix)}}; }

Operator operator_from_json(const json& j) {
  return guarded("operator", [&] {
    LpContext ctx = context_from_json(field(j, "context"));
    Matrix m = matrix_from_json(field(j, "matrix"));
    if (m.rows() != static_cast<Eigen::Index>(ctx.dim()) || m.cols() != m.rows()) {
      throw Error(ErrorKind::Malformed, "matrix shape differs from the context");
    }
    return Operator(std::move(ctx), std::move(m));
  });
}

json to_json(const LampertiForm& form, const LpContext& ctx) {
  return {{"context", to_json(ctx)}, {"f", to_json(form.f)}, {"phi", perm_json(form.phi.perm())}};
}

std::pair<LampertiForm, LpContext> lamperti_from_json(const json& j) {
  return guarded("Lamperti form", [&] {
    LpContext ctx = context_from_json(field(j, "context"));
    MeasurableFunction f = function_from_json(field(j, "f"), ctx.algebra());
    BooleanAutomorphism phi(ctx.algebra(), perm_from_json(field(j, "phi")));
    return std::pair<LampertiForm, LpContext>{LampertiForm(std::move(f), std::move(phi)), std::move(ctx)};
  });
}

json to_json(const AlgebraBasis& a) {
  json basis = json::array();
  for (const auto& m : a.elements()) basis.push_back(to_json(m));
  return {{"n", a.n()}, {"p", a.p()}, {"basis", basis}};
}

AlgebraBasis algebra_basis_from_json(const json& j) {
  return guarded("algebra basis", [&] {
    std::vector<Matrix> elements;
    for (const auto& m : field(j, "basis")) elements.push_back(matrix_from_json(m));
    return AlgebraBasis(field(j, "n").get<std::size_t>(), field(j, "p").get<double>(), std::move(elements));
  });
}

json to_json(const NormEstimate& est) {
  return {{"lower", est.lower},       {"upper", est.upper},         {"witness", to_json(est.witness)},
          {"iterations", est.iterations}, {"converged", est.converged}};
}

json to_json(const UnitaryClass& u) {
  json phases = json::array();
  for (std::size_t y = 0; y < u.perm().size(); ++y) phases.push_back(complex_json(u.form.f(u.perm()(y))));
  return {{"perm", perm_json(u.perm())}, {"phases", phases}, {"solution_dim", u.solution_dim}};
}

json to_json(const RecoveredGroup& r) {
  json reps = json::array();
  for (const auto& u : r.representatives) reps.push_back(to_json(u));
  return {{"group", to_json(r.group)}, {"representatives", reps}};
}

json to_json(const Decision& d) {
  return {{"verdict", std::string(to_string(d.verdict))},
          {"evidence", {{"first", to_json(d.first)}, {"second", to_json(d.second)}, {"witness", to_json(d.witness)}}}};
}

json to_json(const ChainRuleReport& r) {
  return {{"product_rule_deviation", r.product_rule_deviation}, {"push_rule_deviation", r.push_rule_deviation}};
}

json to_json(const DualityReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    samples.push_back({{"p", {{"lower", s.at_p.lower}, {"upper", s.at_p.upper}}},
                       {"dual", {{"lower", s.transpose_at_q.lower}, {"upper", s.transpose_at_q.upper}}},
                       {"separation", s.bracket_separation},
                       {"reversal_residual", s.reversal_residual}});
  }
  return {{"p", r.p},
          {"dual_p", r.dual_p},
          {"samples", samples},
          {"worst_separation", r.worst_separation},
          {"worst_reversal", r.worst_reversal},
          {"transpose_inverts_translations", r.transpose_inverts_translations},
          {"passed", r.passed}};
}

json to_json(const DegeneracyReport& r) {
  json cyc = json::array(), klein = json::array();
  for (const auto& z : r.cyclic_generator_spectrum) cyc.push_back(complex_json(z));
  for (const auto& z : r.klein_involution_spectrum) klein.push_back(complex_json(z));
  return {{"cyclic_generator_spectrum", cyc},
          {"klein_involution_spectrum", klein},
          {"image_in_target", r.image_in_target},
          {"multiplicativity_residual", r.multiplicativity_residual},
          {"norm_agreement", r.norm_agreement},
          {"norm_samples", r.norm_samples},
          {"generator_image_is_generalized_permutation", r.generator_image_is_generalized_permutation},
          {"enumeration_refused_at_p2", r.enumeration_refused_at_p2},
          {"verdict_at_p3", std::string(to_string(r.verdict_at_p3))},
          {"passed", r.passed}};
}

}  // namespace lpgroup
