#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "lpgroup/permutation.hpp"

namespace lpgroup {

using complex = std::complex<double>;

/// An element of the measure algebra: a set of atoms.
using AtomSet = boost::dynamic_bitset<>;

/// Finitely many atoms, each with a strictly positive finite weight.
class FiniteMeasureAlgebra {
 public:
  explicit FiniteMeasureAlgebra(std::vector<double> weights);
  static FiniteMeasureAlgebra counting(std::size_t atoms);

  std::size_t atoms() const noexcept { return weights_.size(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double weight(std::size_t x) const { return weights_[x]; }

  AtomSet empty_set() const { return AtomSet(atoms()); }
  AtomSet whole() const { return ~empty_set(); }

  friend bool operator==(const FiniteMeasureAlgebra&, const FiniteMeasureAlgebra&) = default;

 private:
  std::vector<double> weights_;
};

/// A strictly positive completely additive valuation. Its value on a set of
/// atoms is the sum of the atom values.
class Valuation {
 public:
  Valuation(FiniteMeasureAlgebra algebra, std::vector<double> atom_values);
  /// The algebra's own measure.
  static Valuation of(const FiniteMeasureAlgebra& algebra);

  const FiniteMeasureAlgebra& algebra() const noexcept { return algebra_; }
  std::size_t atoms() const noexcept { return values_.size(); }
  const std::vector<double>& atom_values() const noexcept { return values_; }
  double operator()(std::size_t atom) const { return values_[atom]; }
  double operator()(const AtomSet& set) const;

 private:
  FiniteMeasureAlgebra algebra_;
  std::vector<double> values_;
};

/// A complex value per atom.
class MeasurableFunction {
 public:
  MeasurableFunction(FiniteMeasureAlgebra algebra, std::vector<complex> values);
  static MeasurableFunction constant(const FiniteMeasureAlgebra& algebra, complex value);
  static MeasurableFunction indicator(const FiniteMeasureAlgebra& algebra, const AtomSet& set);

  const FiniteMeasureAlgebra& algebra() const noexcept { return algebra_; }
  std::size_t atoms() const noexcept { return values_.size(); }
  const std::vector<complex>& values() const noexcept { return values_; }
  complex operator()(std::size_t atom) const { return values_[atom]; }

  /// [[|f| > t]]
  AtomSet abs_above(double t) const;
  /// [[|f| <= t]]
  AtomSet abs_at_most(double t) const;
  /// [[re f <= t]], for real-valued functions in particular.
  AtomSet real_at_most(double t) const;

  bool is_unimodular(double tol = 1e-12) const;
  MeasurableFunction abs() const;
  MeasurableFunction abs_pow(double p) const;
  MeasurableFunction conj() const;

  friend MeasurableFunction operator*(const MeasurableFunction& f, const MeasurableFunction& g);
  friend MeasurableFunction operator-(const MeasurableFunction& f, const MeasurableFunction& g);

 private:
  FiniteMeasureAlgebra algebra_;
  std::vector<complex> values_;
};

/// A Boolean automorphism of an atomic algebra, i.e. a permutation of atoms.
class BooleanAutomorphism {
 public:
  BooleanAutomorphism(FiniteMeasureAlgebra algebra, Permutation perm);
  static BooleanAutomorphism identity(const FiniteMeasureAlgebra& algebra);

  const FiniteMeasureAlgebra& algebra() const noexcept { return algebra_; }
  const Permutation& perm() const noexcept { return perm_; }
  std::size_t operator()(std::size_t atom) const { return perm_(atom); }
  AtomSet operator()(const AtomSet& set) const;

  BooleanAutomorphism inverse() const;
  /// (this o inner)
  BooleanAutomorphism after(const BooleanAutomorphism& inner) const;

  /// phi o f, i.e. the function whose level sets are phi of those of f:
  /// (phi o f)(phi(x)) = f(x).
  MeasurableFunction push(const MeasurableFunction& f) const;
  /// The valuation nu o phi^{-1}.
  Valuation push(const Valuation& nu) const;

  friend bool operator==(const BooleanAutomorphism& a, const BooleanAutomorphism& b) {
    return a.perm_ == b.perm_ && a.algebra_ == b.algebra_;
  }

 private:
  FiniteMeasureAlgebra algebra_;
  Permutation perm_;
};

/// The level sets e_t = sup D_t of the pair (sigma, mu), where
/// D_t = {a : sigma(a') <= t mu(a') for all a' <= a}.
AtomSet rn_level_set(const Valuation& sigma, const Valuation& mu, double t);

/// d sigma / d mu, read off from the level sets e_t at the finitely many
/// breakpoints where they change.
MeasurableFunction rn_derivative(const Valuation& sigma, const Valuation& mu);

/// Sum of f(x) mu({x}).
complex integrate(const MeasurableFunction& f, const Valuation& mu);

/// The same integral evaluated as int_0^inf mu([[g > t]]) dt on the positive
/// and negative parts of re f and im f. The integrand is a step function with
/// jumps at the distinct values of g, so the integral is an exact finite sum.
complex integrate_layer_cake(const MeasurableFunction& f, const Valuation& mu);

/// Weighted L^p norm for p in [1, inf]; pass infinity() for the sup norm.
double lp_norm(const MeasurableFunction& f, const Valuation& mu, double p);
/// ||f||_p = || |f|^p ||_1^{1/p} with the L^1 norm taken by layer cake, and
/// ||f||_inf = inf{t : [[|f| <= t]] = 1} over the breakpoints.
double lp_norm_layer_cake(const MeasurableFunction& f, const Valuation& mu, double p);

struct ChainRuleReport {
  double product_rule_deviation = 0.0;  // dmu/dsigma * dsigma/drho vs dmu/drho
  double push_rule_deviation = 0.0;     // phi o dmu/dsigma vs d(mu o phi^-1)/d(sigma o phi^-1)
  double max_deviation() const { return std::max(product_rule_deviation, push_rule_deviation); }
};

ChainRuleReport rn_chain_rules(const Valuation& mu, const Valuation& sigma, const Valuation& rho,
                               const BooleanAutomorphism& phi);

}  // namespace lpgroup
