#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lpgroup/convolution.hpp"
#include "lpgroup/error.hpp"

using namespace lpgroup;

namespace {

IntMatrix shift(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) m((j + 1) % n, j) = 1;
  return m;
}

}  // namespace

TEST_CASE("rank over the rationals") {
  CHECK(exact_rank({{1, 2, 3}, {2, 4, 6}}) == 1);
  CHECK(exact_rank({{1, 2}, {3, 4}}) == 2);
  CHECK(exact_rank({{0, 0}}) == 0);
  // numerically nasty but exactly rank 2
  CHECK(exact_rank({{1000000007, 1}, {1000000008, 1}, {2000000015, 2}}) == 2);
}

TEST_CASE("nullspace vectors are primitive integer solutions") {
  // x0 + x1 + x2 = 0, x0 - x2 = 0
  const auto basis = exact_nullspace(3, {{{0, 1}, {1, 1}, {2, 1}}, {{0, 1}, {2, -1}}});
  REQUIRE(basis.size() == 1);
  const auto& v = basis.front();
  CHECK(v[0] + v[1] + v[2] == 0);
  CHECK(v[0] == v[2]);
  CHECK(std::abs(v[0]) == 1);
  CHECK(exact_nullspace(2, {}).size() == 2);
  CHECK_THROWS_AS(exact_nullspace(2, {{{5, 1}}}), Error);
}

TEST_CASE("commutant of a cyclic shift is the circulants") {
  for (std::size_t n : {1u, 2u, 3u, 5u}) {
    const auto basis = exact_commutant({shift(n)});
    CHECK(basis.size() == n);
    std::vector<IntMatrix> powers;
    IntMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) p(i, i) = 1;
    for (std::size_t k = 0; k < n; ++k) {
      powers.push_back(p);
      IntMatrix next(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          for (std::size_t l = 0; l < n; ++l) next(i, j) += shift(n)(i, l) * p(l, j);
        }
      }
      p = next;
    }
    CHECK(exact_span_equal(basis, powers));
    CHECK(exact_span_rank(basis) == n);
  }
}

TEST_CASE("span comparisons") {
  IntMatrix a(2, 2), b(2, 2), c(2, 2);
  a(0, 0) = 1;
  b(1, 1) = 1;
  c(0, 0) = 2;
  c(1, 1) = -3;
  CHECK(exact_span_equal({a, b}, {c, a}));
  CHECK_FALSE(exact_span_equal({a}, {c}));
  CHECK(exact_span_rank({a, b, c}) == 2);
}
