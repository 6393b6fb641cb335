#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lpgroup/serialize.hpp"
#include "suite/suite.hpp"
#include "support.hpp"

using namespace lpgroup;
using test_support::error_kind;

namespace {

// dump, parse the text back, rebuild, dump again
template <typename Parse>
void check_round_trip(const json& emitted, Parse&& parse) {
  const std::string text = emitted.dump();
  CHECK(parse(json::parse(text)).dump() == text);
}

}  // namespace

TEST_CASE("groups round-trip") {
  for (const auto& [name, g] : suite::zoo()) {
    check_round_trip(to_json(g), [](const json& j) { return to_json(group_from_json(j)); });
    CHECK(group_from_json(to_json(g)) == g);
  }
  CHECK(to_json(make_cyclic(2)) == json::parse(R"({"order":2,"table":[[0,1],[1,0]],"identity":0})"));
}

TEST_CASE("measure objects round-trip") {
  std::mt19937_64 rng(1);
  const FiniteMeasureAlgebra a(test_support::weights(rng, 5));
  check_round_trip(to_json(a), [](const json& j) { return to_json(algebra_from_json(j)); });
  const MeasurableFunction f = test_support::unimodular(rng, a);
  check_round_trip(to_json(f), [&](const json& j) { return to_json(function_from_json(j, a)); });
}

TEST_CASE("operators and Lamperti forms round-trip") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const LpContext ctx(FiniteMeasureAlgebra(test_support::weights(rng, n)), 1.5 + trial);
    const LampertiForm form(test_support::unimodular(rng, ctx.algebra()),
                            BooleanAutomorphism(ctx.algebra(), test_support::random_perm(rng, n)));
    check_round_trip(to_json(compose(form, ctx)), [](const json& j) { return to_json(operator_from_json(j)); });
    check_round_trip(to_json(form, ctx), [](const json& j) {
      const auto [f, c] = lamperti_from_json(j);
      return to_json(f, c);
    });
    // complex entries are [re, im] pairs
    const json op = to_json(compose(form, ctx));
    CHECK(op["matrix"][0][0].size() == 2);
  }
}

TEST_CASE("algebra bases round-trip") {
  const AlgebraBasis cv = convolver_algebra(ConvolutionContext(make_quaternion(), 3.0));
  check_round_trip(to_json(cv), [](const json& j) { return to_json(algebra_basis_from_json(j)); });
  const AlgebraBasis back = algebra_basis_from_json(to_json(cv));
  CHECK(back.dim() == 8);
  CHECK(back.p() == 3.0);
}

TEST_CASE("reports are deterministic and carry their verdicts") {
  const auto cv = [](const FiniteGroup& g) { return convolver_algebra(ConvolutionContext(g, 3.0)); };
  const Decision d = decide_isomorphism(cv(make_cyclic(4)), 3.0, cv(make_direct_product(make_cyclic(2), make_cyclic(2))), 3.0);
  const json j = to_json(d);
  CHECK(j["verdict"] == "Distinct");
  CHECK(j["evidence"]["witness"].is_null());
  CHECK(group_from_json(j["evidence"]["first"]["group"]).order() == 4);
  CHECK(to_json(d).dump() == j.dump());
  CHECK(to_json(p2_degeneracy_demo(100, 5)).dump() == to_json(p2_degeneracy_demo(100, 5)).dump());
}

TEST_CASE("malformed input is reported as such") {
  CHECK(error_kind([] { group_from_json(json::parse(R"({"order":2,"table":[[0,1],[0,1]],"identity":0})")); }) ==
        ErrorKind::Malformed);
  CHECK(error_kind([] { group_from_json(json::parse(R"({"order":2})")); }) == ErrorKind::Malformed);
  CHECK(error_kind([] { group_from_json(json::parse(R"({"order":"two","table":[],"identity":0})")); }) ==
        ErrorKind::Malformed);
  CHECK(error_kind([] { matrix_from_json(json::parse(R"([[[1,0]],[[1,0],[0,0]]])")); }) == ErrorKind::Malformed);
  CHECK(error_kind([] { matrix_from_json(json::parse(R"([[[1,0,0]]])")); }) == ErrorKind::Malformed);
  CHECK(error_kind([] {
          operator_from_json(json::parse(R"({"context":{"weights":[1,1],"p":3},"matrix":[[[1,0]]]})"));
        }) == ErrorKind::Malformed);
  CHECK(error_kind([] {
          lamperti_from_json(json::parse(R"({"context":{"weights":[1,1],"p":3},"f":{"re":[1,1]},"phi":[0,0]})"));
        }) == ErrorKind::Malformed);
}
