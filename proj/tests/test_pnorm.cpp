#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "suite/oracles.hpp"
#include "support.hpp"

using namespace lpgroup;
using test_support::error_kind;

namespace {

constexpr double kExponents[] = {1.2, 1.5, 3.0, 4.0};

double ratio(const Operator& a, const Vector& x) { return a.context.norm(a.matrix * x) / a.context.norm(x); }

Matrix random_nonnegative(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> entry(0.0, 1.0);
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = entry(rng);
  return m;
}

}  // namespace

TEST_CASE("generalized permutation norms are exact") {
  const LpContext ctx(FiniteMeasureAlgebra({1, 2, 5}), 3.0);
  const BooleanAutomorphism phi(ctx.algebra(), Permutation({2, 0, 1}));
  const Operator u = transform_isometry(phi, ctx);
  CHECK(pnorm_genperm_exact(u) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pnorm_genperm_exact(LampertiForm(MeasurableFunction::constant(ctx.algebra(), 1.0), phi), ctx) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pnorm_genperm_exact(Operator(ctx, 2.0 * Matrix::Identity(3, 3))) == 2.0);
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 3.0, 1.0;
  CHECK(pnorm_genperm_exact(Operator(LpContext(FiniteMeasureAlgebra::counting(2), 1.5), d)) == 3.0);
  // a single entry c at (x, y) maps chi_y to c chi_x
  Matrix e = Matrix::Zero(3, 3);
  e(0, 1) = 1.0;
  CHECK(pnorm_genperm_exact(Operator(ctx, e)) == doctest::Approx(std::cbrt(1.0 / 2.0)).epsilon(1e-15));
  CHECK(error_kind([&] { pnorm_genperm_exact(Operator(ctx, Matrix::Ones(3, 3))); }) ==
        ErrorKind::NotGeneralizedPermutation);
}

TEST_CASE("Boyd iteration examples") {
  const LpContext two(FiniteMeasureAlgebra::counting(2), 2.0);
  const LpContext three(FiniteMeasureAlgebra::counting(2), 3.0);
  const NormEstimate j2 = boyd_iterate(Operator(two, Matrix::Ones(2, 2)));
  CHECK(j2.lower == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(j2.upper == doctest::Approx(2.0).epsilon(1e-12));
  const NormEstimate j3 = boyd_iterate(Operator(three, Matrix::Ones(2, 2)));
  CHECK(j3.lower == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(j3.converged);
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 3.0, 1.0;
  CHECK(boyd_iterate(Operator(three, d)).lower == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(error_kind([&] { boyd_iterate(Operator(three, -Matrix::Identity(2, 2))); }) == ErrorKind::NotNonnegative);
  CHECK(error_kind([&] { boyd_iterate(Operator(LpContext(three.algebra(), 1.0), d)); }) == ErrorKind::POutOfRange);
}

TEST_CASE("Boyd iteration is monotone and certified") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const LpContext ctx(FiniteMeasureAlgebra(test_support::weights(rng, n)), kExponents[trial % 4]);
    const Operator a(ctx, random_nonnegative(rng, n));
    const NormEstimate est = boyd_iterate(a);
    CHECK(est.converged);
    CHECK(est.lower <= est.upper);
    CHECK(est.upper - est.lower <= 1e-9 * est.upper);
    CHECK(ratio(a, est.witness) == doctest::Approx(est.lower).epsilon(1e-12));
    for (std::size_t k = 1; k < est.history.size(); ++k) CHECK(est.history[k] >= est.history[k - 1] * (1 - 1e-14));
  }
}

TEST_CASE("Boyd iteration against a sphere grid search") {
  std::mt19937_64 rng(13);
  for (double p : kExponents) {
    const auto grid = oracle::nonnegative_sphere_grid(p, 1e-3);
    for (int trial = 0; trial < 3; ++trial) {
      const Matrix m = random_nonnegative(rng, 3);
      const NormEstimate est = boyd_iterate(Operator(LpContext(FiniteMeasureAlgebra::counting(3), p), m));
      const double g = oracle::grid_search_norm(m.real(), p, grid);
      CHECK(std::abs(est.lower - g) <= 1e-3);
      CHECK(g <= est.upper);
    }
  }
}

TEST_CASE("estimates for general operators") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const LpContext ctx(FiniteMeasureAlgebra(test_support::weights(rng, n)), kExponents[trial % 4]);
    Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index j = 0; j < m.cols(); ++j) m.col(j) = test_support::random_vector(rng, n);
    const Operator a(ctx, m);
    const NormEstimate est = pnorm_estimate(a);
    CHECK(est.lower <= est.upper);
    CHECK(ratio(a, est.witness) == doctest::Approx(est.lower).epsilon(1e-12));
    // no unit vector of a random batch beats the certified upper bound
    for (int k = 0; k < 20; ++k) CHECK(ratio(a, test_support::random_vector(rng, n)) <= est.upper * (1 + 1e-12));

    const LampertiForm form(test_support::unimodular(rng, ctx.algebra()),
                            BooleanAutomorphism(ctx.algebra(), test_support::random_perm(rng, n)));
    const Operator g(ctx, 1.7 * compose(form, ctx).matrix);
    const NormEstimate exact = pnorm_estimate(g);
    CHECK(exact.lower == exact.upper);
    CHECK(exact.lower == pnorm_genperm_exact(g));
  }
}

TEST_CASE("difference of two translations") {
  for (double p : kExponents) {
    const ConvolutionContext z2(make_cyclic(2), p);
    const Operator d2(z2.lp(), left_regular(z2, 0).matrix - left_regular(z2, 1).matrix);
    const NormEstimate e2 = pnorm_estimate(d2);
    CHECK(e2.lower >= 2.0 - 1e-6);
    CHECK(e2.upper <= 2.0 + 1e-12);

    const ConvolutionContext z3(make_cyclic(3), p);
    const Operator d3(z3.lp(), left_regular(z3, 1).matrix - left_regular(z3, 2).matrix);
    const NormEstimate e3 = pnorm_estimate(d3);
    CHECK(e3.upper <= 2.0 + 1e-12);
    CHECK(e3.lower <= e3.upper);
  }
}

TEST_CASE("weighted transpose has the same norm on the dual space") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const LpContext ctx(FiniteMeasureAlgebra(test_support::weights(rng, n)), kExponents[trial % 4]);
    const Operator a(ctx, random_nonnegative(rng, n));
    const Operator t = weighted_transpose(a);
    CHECK(t.context.p() == doctest::Approx(ctx.dual_p()).epsilon(1e-15));
    CHECK(std::abs(pnorm_estimate(a).lower - pnorm_estimate(t).lower) <= 2e-6);
  }
}

TEST_CASE("disjoint witness") {
  const LpContext ctx(FiniteMeasureAlgebra({1, 4}), 3.0);
  const MeasurableFunction one = MeasurableFunction::constant(ctx.algebra(), 1.0);
  const LampertiForm id(one, BooleanAutomorphism::identity(ctx.algebra()));
  const LampertiForm swap(one, BooleanAutomorphism(ctx.algebra(), Permutation({1, 0})));
  const Vector xi = norm_witness_disjoint(id, swap, ctx);
  CHECK(xi(1) == complex(0.0));
  CHECK(ctx.norm(xi) == doctest::Approx(1.0).epsilon(1e-15));
  // the images under the two isometries have disjoint supports
  const Vector a = compose(id, ctx).matrix * xi;
  const Vector b = compose(swap, ctx).matrix * xi;
  CHECK((a.array().abs() * b.array().abs()).maxCoeff() == 0.0);
  CHECK(error_kind([&] { norm_witness_disjoint(id, id, ctx); }) == ErrorKind::InvalidArgument);
}
