#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "suite/suite.hpp"
#include "support.hpp"

using namespace lpgroup;
using test_support::error_kind;
using test_support::max_abs;

namespace {

UnitaryClass scaled_translation(const ConvolutionContext& ctx, std::size_t s, complex gamma) {
  const FiniteMeasureAlgebra algebra = ctx.lp().algebra();
  return UnitaryClass{LampertiForm(MeasurableFunction::constant(algebra, gamma),
                                   BooleanAutomorphism(algebra, ctx.group.left_translation(s))),
                      1};
}

AlgebraBasis conjugated_and_mixed(const AlgebraBasis& a, const Matrix& u, std::mt19937_64& rng) {
  // an invertible (upper triangular, unit diagonal) change of basis, then a shuffle
  const std::size_t d = a.dim();
  std::vector<Matrix> mixed;
  for (std::size_t k = 0; k < d; ++k) {
    Matrix m = u * a.elements()[k] * u.inverse();
    for (std::size_t j = k + 1; j < d; ++j) {
      m += complex(std::uniform_real_distribution<double>(-1, 1)(rng), 0.5) * (u * a.elements()[j] * u.inverse());
    }
    mixed.push_back(m);
  }
  std::shuffle(mixed.begin(), mixed.end(), rng);
  return AlgebraBasis(a.n(), a.p(), std::move(mixed));
}

}  // namespace

TEST_CASE("components group classes by permutation part") {
  const ConvolutionContext z2(make_cyclic(2), 3.0);
  const ComponentTable two = components({scaled_translation(z2, 0, 1.0), scaled_translation(z2, 1, complex(0, 1))});
  CHECK(two.perms.size() == 2);
  CHECK(two.table == std::vector<std::vector<std::size_t>>{{0, 1}, {1, 0}});

  const ConvolutionContext s3(make_symmetric(3), 3.0);
  std::vector<UnitaryClass> many;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> angle(-3.14159, 3.14159);
  for (int copies = 0; copies < 3; ++copies) {
    for (std::size_t s = 0; s < 6; ++s) many.push_back(scaled_translation(s3, s, std::polar(1.0, angle(rng))));
  }
  const ComponentTable c = components(many);
  CHECK(c.perms.size() == 6);
  for (std::size_t i = 0; i < many.size(); ++i) CHECK(c.component_of[i] == c.component_of[i % 6]);
  for (std::size_t s = 0; s < 6; ++s) {
    for (std::size_t t = 0; t < 6; ++t) {
      if (s != t) CHECK(c.component_of[s] != c.component_of[t]);
    }
  }
  CHECK(c.perms[0].is_identity());

  // element 3 is a 3-cycle, whose square is missing
  CHECK(error_kind([&] { components({scaled_translation(s3, 0, 1.0), scaled_translation(s3, 3, 1.0)}); }) ==
        ErrorKind::NotGroupLike);
  CHECK(error_kind([&] { components({scaled_translation(z2, 1, 1.0)}); }) == ErrorKind::NotGroupLike);
}

TEST_CASE("phase changes stay in a component while translation changes leave it") {
  std::mt19937_64 rng(2);
  for (double p : {1.5, 3.0}) {
    const ConvolutionContext ctx(make_cyclic(3), p);
    const LpContext lp = ctx.lp();
    const UnitaryClass a = scaled_translation(ctx, 1, std::polar(1.0, 0.3));
    const UnitaryClass b = scaled_translation(ctx, 1, std::polar(1.0, 2.9));
    const UnitaryClass c = scaled_translation(ctx, 2, std::polar(1.0, 0.3));
    // same permutation part: the distance is |gamma - delta| < 2
    const double same = pnorm_estimate(Operator(lp, a.matrix() - b.matrix())).upper;
    CHECK(same == doctest::Approx(std::abs(std::polar(1.0, 0.3) - std::polar(1.0, 2.9))).epsilon(1e-12));
    CHECK(same < 2.0);
    // different permutation parts land in different components
    CHECK(components({scaled_translation(ctx, 0, 1.0), a, b, c}).component_of ==
          std::vector<std::size_t>{0, 1, 1, 2});
  }
}

TEST_CASE("left translation matching") {
  const ConvolutionContext s3(make_symmetric(3), 3.0);
  CHECK(left_translation_match(Permutation::identity(6), s3) == s3.group.identity());
  for (std::size_t s = 0; s < 6; ++s) {
    // l_s built directly from the table
    std::vector<std::size_t> images(6);
    for (std::size_t x = 0; x < 6; ++x) images[x] = s3.group.table()[s][x];
    CHECK(left_translation_match(Permutation(images), s3) == s);
  }

  const ConvolutionContext d4(make_dihedral(4), 3.0);
  const std::size_t reflection = 4;  // r^0 s
  CHECK(error_kind([&] { left_translation_match(d4.group.right_translation(reflection), d4); }) ==
        ErrorKind::NotRightInvariant);

  for (const auto& [name, g] : suite::zoo()) {
    const ConvolutionContext ctx(g, 3.0);
    for (std::size_t s = 0; s < g.order(); ++s) CHECK(left_translation_match(g.left_translation(s), ctx) == s);
  }
}

TEST_CASE("recovered groups") {
  const FiniteGroup z4 = make_cyclic(4);
  const FiniteGroup klein = make_direct_product(make_cyclic(2), make_cyclic(2));
  const RecoveredGroup rz4 = recover_group(convolver_algebra(ConvolutionContext(z4, 3.0)), 3.0);
  const RecoveredGroup rk = recover_group(convolver_algebra(ConvolutionContext(klein, 3.0)), 3.0);
  CHECK(is_isomorphic(rz4.group, z4).has_value());
  CHECK(is_isomorphic(rk.group, klein).has_value());
  CHECK_FALSE(is_isomorphic(rk.group, rz4.group).has_value());

  CHECK(error_kind([&] { recover_group(convolver_algebra(ConvolutionContext(z4, 2.0)), 2.0); }) ==
        ErrorKind::P2Unsupported);

  // span{I, C} for a 3-cycle C: the classes {I, C} miss C^2
  const ConvolutionContext z3(make_cyclic(3), 3.0);
  const AlgebraBasis partial(3, 3.0, {left_regular(z3, 0).matrix, left_regular(z3, 1).matrix});
  CHECK(error_kind([&] { recover_group(partial, 3.0); }) == ErrorKind::NotGroupLike);
}

TEST_CASE("representatives multiply like the recovered group") {
  for (const auto& [name, g] : suite::zoo()) {
    const ConvolutionContext ctx(g, 1.5);
    const RecoveredGroup rec = recover_group(convolver_algebra(ctx), 1.5);
    const auto& reps = rec.representatives;
    REQUIRE(reps.size() == g.order());
    const Matrix identity = reps[rec.group.identity()].matrix();
    CHECK(max_abs(identity - identity(0, 0) * Matrix::Identity(identity.rows(), identity.cols())) < 1e-12);
    for (std::size_t a = 0; a < reps.size(); ++a) {
      for (std::size_t b = 0; b < reps.size(); ++b) {
        CHECK(reps[a].perm() * reps[b].perm() == reps[rec.group.product(a, b)].perm());
      }
    }
  }
}

TEST_CASE("recovery is invariant under change of presentation") {
  std::mt19937_64 rng(3);
  for (const auto& [name, g] : suite::zoo()) {
    const ConvolutionContext ctx(g, 3.0);
    const std::size_t t = rng() % g.order();
    const Matrix u = std::polar(1.0, 0.4) * left_regular(ctx, t).matrix;
    const AlgebraBasis changed = conjugated_and_mixed(convolver_algebra(ctx), u, rng);
    const RecoveredGroup rec = recover_group(changed, 3.0);
    CHECK_MESSAGE(is_isomorphic(rec.group, g).has_value(), name);
  }
}

TEST_CASE("isomorphism decisions") {
  const FiniteGroup s3 = make_symmetric(3);
  std::mt19937_64 rng(4);
  const FiniteGroup s3b = relabel(s3, test_support::random_perm(rng, 6));
  const auto cv = [](const FiniteGroup& g, double p) { return convolver_algebra(ConvolutionContext(g, p)); };

  const Decision same = decide_isomorphism(cv(s3, 3), 3, cv(s3b, 3), 3);
  CHECK(same.verdict == Verdict::Isomorphic);
  REQUIRE(same.witness.has_value());
  CHECK(verify_iso(same.first.group, same.second.group, *same.witness));

  const FiniteGroup z4 = make_cyclic(4);
  const FiniteGroup klein = make_direct_product(make_cyclic(2), make_cyclic(2));
  CHECK(decide_isomorphism(cv(z4, 3), 3, cv(klein, 3), 3).verdict == Verdict::Distinct);
  CHECK(decide_isomorphism(cv(s3, 3), 3, cv(s3, 1.5), 1.5).verdict == Verdict::AntiIsomorphic);
  CHECK(decide_isomorphism(cv(s3, 3), 3, cv(s3, 4), 4).verdict == Verdict::Distinct);
  CHECK(error_kind([&] { decide_isomorphism(cv(s3, 3), 3, cv(s3, 2), 2); }) == ErrorKind::P2Unsupported);

  // symmetric in its arguments
  const std::vector<std::pair<FiniteGroup, double>> inputs{{z4, 3}, {klein, 3}, {z4, 1.5}, {s3, 4}, {s3b, 4.0 / 3.0}};
  for (const auto& [g, p] : inputs) {
    for (const auto& [h, q] : inputs) {
      CHECK(decide_isomorphism(cv(g, p), p, cv(h, q), q).verdict == decide_isomorphism(cv(h, q), q, cv(g, p), p).verdict);
    }
  }
}

TEST_CASE("transpose anti-isomorphism") {
  for (double p : {1.5, 3.0}) {
    const ConvolutionContext z2(make_cyclic(2), p);
    const Operator lambda = left_regular(z2, 1);
    CHECK(pnorm_estimate(lambda).lower == 1.0);
    CHECK(pnorm_estimate(weighted_transpose(lambda)).upper == 1.0);
    const Operator sum(z2.lp(), Matrix::Identity(2, 2) + lambda.matrix);
    CHECK(boyd_iterate(sum).lower == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(boyd_iterate(weighted_transpose(sum)).lower == doctest::Approx(2.0).epsilon(1e-12));
  }
  const DualityReport report = dual_antiisomorphism_check(ConvolutionContext(make_symmetric(3), 3.0), 20, 9);
  CHECK(report.samples.size() == 20);
  CHECK(report.transpose_inverts_translations);
  CHECK(report.worst_separation <= kDualityOverlapTol);
  CHECK(report.worst_reversal == 0.0);
  CHECK(report.dual_p == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(report.passed);
}

TEST_CASE("p = 2 degeneracy") {
  const DegeneracyReport report = p2_degeneracy_demo();
  REQUIRE(report.cyclic_generator_spectrum.size() == 4);
  REQUIRE(report.klein_involution_spectrum.size() == 4);
  // eigenvalues of a 4-cycle are the fourth roots of unity
  std::vector<complex> roots{{-1, 0}, {0, -1}, {0, 1}, {1, 0}};
  std::vector<complex> got = report.cyclic_generator_spectrum;
  for (const complex& r : roots) {
    CHECK(std::any_of(got.begin(), got.end(), [&](const complex& z) { return std::abs(z - r) < 1e-12; }));
  }
  int minus = 0, plus = 0;
  for (const complex& z : report.klein_involution_spectrum) {
    minus += std::abs(z + 1.0) < 1e-12;
    plus += std::abs(z - 1.0) < 1e-12;
  }
  CHECK(minus == 2);
  CHECK(plus == 2);
  CHECK(report.image_in_target);
  CHECK(report.multiplicativity_residual < 1e-12);
  CHECK(report.norm_agreement < 1e-9);
  CHECK(report.norm_samples == 100);
  CHECK_FALSE(report.generator_image_is_generalized_permutation);
  CHECK(report.enumeration_refused_at_p2);
  CHECK(report.verdict_at_p3 == Verdict::Distinct);
  CHECK(report.passed);
}
