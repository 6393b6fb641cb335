#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "suite/oracles.hpp"
#include "support.hpp"

using namespace lpgroup;
using test_support::error_kind;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

AtomSet from_mask(std::size_t n, unsigned mask) {
  AtomSet s(n);
  for (std::size_t x = 0; x < n; ++x) s[x] = (mask >> x) & 1u;
  return s;
}

}  // namespace

TEST_CASE("weights must be strictly positive and finite") {
  CHECK(error_kind([] { FiniteMeasureAlgebra({1.0, 0.0}); }) == ErrorKind::InvalidArgument);
  CHECK(error_kind([] { FiniteMeasureAlgebra({1.0, kInf}); }) == ErrorKind::InvalidArgument);
  CHECK(error_kind([] { FiniteMeasureAlgebra({}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("level-set queries") {
  const FiniteMeasureAlgebra a({1, 1, 1, 1});
  const MeasurableFunction f(a, {{3, 0}, {0, 1}, {-0.5, 0}, {0, 0}});
  CHECK(f.abs_above(0.75) == from_mask(4, 0b0011));
  CHECK(f.abs_at_most(0.75) == from_mask(4, 0b1100));
  CHECK(f.real_at_most(0.0) == from_mask(4, 0b1110));
}

TEST_CASE("Boolean automorphisms preserve meet, join and complement") {
  std::mt19937_64 rng(3);
  const FiniteMeasureAlgebra a = FiniteMeasureAlgebra::counting(6);
  for (int trial = 0; trial < 50; ++trial) {
    const BooleanAutomorphism phi(a, test_support::random_perm(rng, 6));
    const AtomSet s = from_mask(6, static_cast<unsigned>(rng() & 63u));
    const AtomSet t = from_mask(6, static_cast<unsigned>(rng() & 63u));
    CHECK(phi(s & t) == (phi(s) & phi(t)));
    CHECK(phi(s | t) == (phi(s) | phi(t)));
    CHECK(phi(~s) == ~phi(s));
    CHECK(phi.inverse()(phi(s)) == s);
  }
}

TEST_CASE("Radon-Nikodym derivative examples") {
  const FiniteMeasureAlgebra a({1, 2});
  const Valuation mu = Valuation::of(a);
  const Valuation sigma(a, {3, 1});
  const MeasurableFunction d = rn_derivative(sigma, mu);
  CHECK(d(0) == complex(3.0, 0.0));
  CHECK(d(1) == complex(0.5, 0.0));
  // the same values read off a brute-force scan of e_t over a grid of t
  for (std::size_t x = 0; x < 2; ++x) {
    double first = kInf;
    for (int k = 1; k <= 4000; ++k) {
      const double t = k * 1e-3;
      if (oracle::level_set_by_subsets(sigma, mu, t)[x]) {
        first = t;
        break;
      }
    }
    CHECK(first == doctest::Approx(d(x).real()).epsilon(1e-12));
  }

  const MeasurableFunction one = rn_derivative(mu, mu);
  for (std::size_t x = 0; x < 2; ++x) CHECK(one(x) == complex(1.0, 0.0));

  const FiniteMeasureAlgebra other({1, 2, 3});
  CHECK(error_kind([&] { rn_derivative(Valuation::of(other), mu); }) == ErrorKind::MismatchedAlgebras);
}

TEST_CASE("inequality between a valuation and its derivative over every subset") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const FiniteMeasureAlgebra a(test_support::weights(rng, 5));
    const Valuation mu = Valuation::of(a);
    const Valuation sigma(a, test_support::weights(rng, 5));
    const MeasurableFunction d = rn_derivative(sigma, mu);
    std::vector<double> cuts;
    for (std::size_t x = 0; x < 5; ++x) cuts.push_back(d(x).real());
    cuts.push_back(0.1);
    cuts.push_back(50.0);
    for (double s : cuts) {
      for (double t : cuts) {
        if (s > t) continue;
        // [[s <= d <= t]]
        const AtomSet band = d.real_at_most(t) & ~d.real_at_most(std::nextafter(s, 0.0));
        for (unsigned mask = 0; mask < 32; ++mask) {
          const AtomSet sub = from_mask(5, mask);
          if ((sub & ~band).any()) continue;
          CHECK(s * mu(sub) <= sigma(sub) * (1 + 1e-12));
          CHECK(sigma(sub) <= t * mu(sub) * (1 + 1e-12));
        }
      }
    }
  }
}

TEST_CASE("derivatives are strictly positive and match the atomic ratio") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const FiniteMeasureAlgebra a(test_support::weights(rng, n));
    const Valuation sigma(a, test_support::weights(rng, n, 1e-3, 1e3));
    const MeasurableFunction d = rn_derivative(sigma, Valuation::of(a));
    const auto ratio = oracle::atomic_ratio(sigma, Valuation::of(a));
    for (std::size_t x = 0; x < n; ++x) {
      CHECK(d(x).real() > 0.0);
      CHECK(d(x).real() == ratio[x]);
    }
  }
}

TEST_CASE("integrals") {
  const FiniteMeasureAlgebra a({1, 2});
  const Valuation mu = Valuation::of(a);
  AtomSet first(2);
  first[0] = true;
  CHECK(integrate(MeasurableFunction::indicator(a, first), mu) == complex(1.0, 0.0));
  const MeasurableFunction d(a, {3.0, 0.5});
  CHECK(integrate(d, mu) == complex(4.0, 0.0));
  CHECK(integrate_layer_cake(d, mu).real() == doctest::Approx(4.0).epsilon(1e-15));

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const FiniteMeasureAlgebra b(test_support::weights(rng, n));
    const Valuation m = Valuation::of(b);
    const Valuation sigma(b, test_support::weights(rng, n));
    const Vector v = test_support::random_vector(rng, n);
    const MeasurableFunction f(b, std::vector<complex>(v.data(), v.data() + n));
    CHECK(std::abs(integrate(f, m) - integrate_layer_cake(f, m)) <= 1e-12);
    CHECK(std::abs(integrate(f, sigma) - integrate(f * rn_derivative(sigma, m), m)) <= 1e-12);
  }
}

TEST_CASE("L^p norms") {
  const FiniteMeasureAlgebra a({1, 1});
  const Valuation mu = Valuation::of(a);
  CHECK(lp_norm(MeasurableFunction::constant(a, 1.0), mu, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  const FiniteMeasureAlgebra w({0.3, 7});
  CHECK(lp_norm(MeasurableFunction(w, {1.0, 0.0}), Valuation::of(w), kInf) == 1.0);
  CHECK(lp_norm_layer_cake(MeasurableFunction(w, {1.0, 0.0}), Valuation::of(w), kInf) == 1.0);
  CHECK(error_kind([&] { lp_norm(MeasurableFunction::constant(a, 1.0), mu, 0.5); }) == ErrorKind::POutOfRange);

  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const FiniteMeasureAlgebra b(test_support::weights(rng, n));
    const Valuation m = Valuation::of(b);
    const Vector u = test_support::random_vector(rng, n);
    const Vector v = test_support::random_vector(rng, n);
    const MeasurableFunction f(b, std::vector<complex>(u.data(), u.data() + n));
    const MeasurableFunction g(b, std::vector<complex>(v.data(), v.data() + n));
    for (double p : {1.0, 1.5, 3.0, kInf}) {
      const double nf = lp_norm(f, m, p);
      CHECK(lp_norm_layer_cake(f, m, p) == doctest::Approx(nf).epsilon(1e-12));
      const MeasurableFunction sum = f - MeasurableFunction::constant(b, -1.0) * g;
      CHECK(lp_norm(sum, m, p) <= nf + lp_norm(g, m, p) + 1e-12);
      CHECK(lp_norm(MeasurableFunction::constant(b, complex(0, -2.5)) * f, m, p) ==
            doctest::Approx(2.5 * nf).epsilon(1e-12));
    }
  }
}

TEST_CASE("chain and push rules") {
  const FiniteMeasureAlgebra a({1, 2, 3, 4});
  const Valuation mu(a, {2, 1, 5, 0.5});
  const Valuation sigma(a, {1, 3, 2, 2});
  CHECK(rn_chain_rules(mu, sigma, sigma, BooleanAutomorphism::identity(a)).max_deviation() == 0.0);

  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const FiniteMeasureAlgebra b(test_support::weights(rng, 4));
    const Valuation m(b, test_support::weights(rng, 4));
    const Valuation s(b, test_support::weights(rng, 4));
    const Valuation r(b, test_support::weights(rng, 4));
    const BooleanAutomorphism phi(b, test_support::random_perm(rng, 4));
    CHECK(rn_chain_rules(m, s, r, phi).max_deviation() < 1e-12);
    // push rule by hand: (phi o d m/d s)(phi(x)) = m(x) / s(x)
    const MeasurableFunction pushed = rn_derivative(phi.push(m), phi.push(s));
    for (std::size_t x = 0; x < 4; ++x) CHECK(pushed(phi(x)).real() == doctest::Approx(m(x) / s(x)).epsilon(1e-13));
  }
}
