#include "lpgroup/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lpgroup/error.hpp"

namespace lpgroup {

namespace {

void require_same_algebra(const FiniteMeasureAlgebra& a, const FiniteMeasureAlgebra& b) {
  if (!(a == b)) throw Error(ErrorKind::MismatchedAlgebras, "objects live on different measure algebras");
}

std::vector<double> sorted_unique(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

// int_0^inf mu([[g > t]]) dt for g >= 0 given atomwise.
double layer_cake_positive(const std::vector<double>& g, const Valuation& mu) {
  double total = 0.0;
  double previous = 0.0;
  for (double level : sorted_unique(g)) {
    if (level <= 0.0) continue;
    double above = 0.0;  // mu([[g > previous]])
    for (std::size_t x = 0; x < g.size(); ++x) {
      if (g[x] > previous) above += mu(x);
    }
    total += (level - previous) * above;
    previous = level;
  }
  return total;
}

}  // namespace

FiniteMeasureAlgebra::FiniteMeasureAlgebra(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorKind::InvalidArgument, "measure algebra needs at least one atom");
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::InvalidArgument, "atom weights must be finite and strictly positive");
    }
  }
}

FiniteMeasureAlgebra FiniteMeasureAlgebra::counting(std::size_t atoms) {
  return FiniteMeasureAlgebra(std::vector<double>(atoms, 1.0));
}

Valuation::Valuation(FiniteMeasureAlgebra algebra, std::vector<double> atom_values)
    : algebra_(std::move(algebra)), values_(std::move(atom_values)) {
  if (values_.size() != algebra_.atoms()) {
    throw Error(ErrorKind::MismatchedAlgebras, "valuation size differs from atom count");
  }
  for (double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::InvalidArgument, "valuations must be finite and strictly positive");
    }
  }
}

Valuation Valuation::of(const FiniteMeasureAlgebra& algebra) {
  return Valuation(algebra, algebra.weights());
}

double Valuation::operator()(const AtomSet& set) const {
  double total = 0.0;
  for (auto x = set.find_first(); x != AtomSet::npos; x = set.find_next(x)) total += values_[x];
  return total;
}

MeasurableFunction::MeasurableFunction(FiniteMeasureAlgebra algebra, std::vector<complex> values)
    : algebra_(std::move(algebra)), values_(std::move(values)) {
  if (values_.size() != algebra_.atoms()) {
    throw Error(ErrorKind::MismatchedAlgebras, "function size differs from atom count");
  }
  for (const complex& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorKind::InvalidArgument, "measurable functions must be finite-valued");
    }
  }
}

MeasurableFunction MeasurableFunction::constant(const FiniteMeasureAlgebra& algebra, complex value) {
  return MeasurableFunction(algebra, std::vector<complex>(algebra.atoms(), value));
}

MeasurableFunction MeasurableFunction::indicator(const FiniteMeasureAlgebra& algebra, const AtomSet& set) {
  std::vector<complex> values(algebra.atoms());
  for (std::size_t x = 0; x < values.size(); ++x) values[x] = set.test(x) ? 1.0 : 0.0;
  return MeasurableFunction(algebra, std::move(values));
}

AtomSet MeasurableFunction::abs_above(double t) const {
  AtomSet set(atoms());
  for (std::size_t x = 0; x < atoms(); ++x) set[x] = std::abs(values_[x]) > t;
  return set;
}

AtomSet MeasurableFunction::abs_at_most(double t) const { return ~abs_above(t); }

AtomSet MeasurableFunction::real_at_most(double t) const {
  AtomSet set(atoms());
  for (std::size_t x = 0; x < atoms(); ++x) set[x] = values_[x].real() <= t;
  return set;
}

bool MeasurableFunction::is_unimodular(double tol) const {
  return std::all_of(values_.begin(), values_.end(),
                     [tol](const complex& v) { return std::abs(std::abs(v) - 1.0) <= tol; });
}

MeasurableFunction MeasurableFunction::abs() const { return abs_pow(1.0); }

MeasurableFunction MeasurableFunction::abs_pow(double p) const {
  std::vector<complex> out(atoms());
  for (std::size_t x = 0; x < atoms(); ++x) out[x] = std::pow(std::abs(values_[x]), p);
  return MeasurableFunction(algebra_, std::move(out));
}

MeasurableFunction MeasurableFunction::conj() const {
  std::vector<complex> out(atoms());
  for (std::size_t x = 0; x < atoms(); ++x) out[x] = std::conj(values_[x]);
  return MeasurableFunction(algebra_, std::move(out));
}

MeasurableFunction operator*(const MeasurableFunction& f, const MeasurableFunction& g) {
  require_same_algebra(f.algebra_, g.algebra_);
  std::vector<complex> out(f.atoms());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = f.values_[x] * g.values_[x];
  return MeasurableFunction(f.algebra_, std::move(out));
}

MeasurableFunction operator-(const MeasurableFunction& f, const MeasurableFunction& g) {
  require_same_algebra(f.algebra_, g.algebra_);
  std::vector<complex> out(f.atoms());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = f.values_[x] - g.values_[x];
  return MeasurableFunction(f.algebra_, std::move(out));
}

BooleanAutomorphism::BooleanAutomorphism(FiniteMeasureAlgebra algebra, Permutation perm)
    : algebra_(std::move(algebra)), perm_(std::move(perm)) {
  if (perm_.size() != algebra_.atoms()) {
    throw Error(ErrorKind::MismatchedAlgebras, "automorphism size differs from atom count");
  }
}

BooleanAutomorphism BooleanAutomorphism::identity(const FiniteMeasureAlgebra& algebra) {
  return BooleanAutomorphism(algebra, Permutation::identity(algebra.atoms()));
}

AtomSet BooleanAutomorphism::operator()(const AtomSet& set) const {
  AtomSet image(set.size());
  for (auto x = set.find_first(); x != AtomSet::npos; x = set.find_next(x)) image.set(perm_(x));
  return image;
}

BooleanAutomorphism BooleanAutomorphism::inverse() const {
  return BooleanAutomorphism(algebra_, perm_.inverse());
}

BooleanAutomorphism BooleanAutomorphism::after(const BooleanAutomorphism& inner) const {
  require_same_algebra(algebra_, inner.algebra_);
  return BooleanAutomorphism(algebra_, perm_ * inner.perm_);
}

MeasurableFunction BooleanAutomorphism::push(const MeasurableFunction& f) const {
  require_same_algebra(algebra_, f.algebra());
  std::vector<complex> out(f.atoms());
  for (std::size_t x = 0; x < out.size(); ++x) out[perm_(x)] = f(x);
  return MeasurableFunction(algebra_, std::move(out));
}

Valuation BooleanAutomorphism::push(const Valuation& nu) const {
  require_same_algebra(algebra_, nu.algebra());
  std::vector<double> out(nu.atoms());
  for (std::size_t x = 0; x < out.size(); ++x) out[perm_(x)] = nu(x);
  return Valuation(algebra_, std::move(out));
}

AtomSet rn_level_set(const Valuation& sigma, const Valuation& mu, double t) {
  require_same_algebra(sigma.algebra(), mu.algebra());
  // By additivity a set lies in D_t iff each of its atoms does, so e_t is the
  // union of the atoms in D_t. The ratio is compared rather than sigma <= t mu
  // so that the atoms attaining a breakpoint t belong to e_t without rounding.
  AtomSet e(sigma.atoms());
  for (std::size_t x = 0; x < sigma.atoms(); ++x) e[x] = sigma(x) / mu(x) <= t;
  return e;
}

MeasurableFunction rn_derivative(const Valuation& sigma, const Valuation& mu) {
  require_same_algebra(sigma.algebra(), mu.algebra());
  const std::size_t n = sigma.atoms();
  std::vector<double> breakpoints(n);
  for (std::size_t x = 0; x < n; ++x) breakpoints[x] = sigma(x) / mu(x);
  breakpoints = sorted_unique(std::move(breakpoints));

  // [[d sigma/d mu <= t]] = e_t: an atom takes the first breakpoint whose
  // level set contains it.
  std::vector<complex> values(n);
  AtomSet assigned(n);
  for (double t : breakpoints) {
    const AtomSet e = rn_level_set(sigma, mu, t);
    for (auto x = e.find_first(); x != AtomSet::npos; x = e.find_next(x)) {
      if (!assigned.test(x)) values[x] = t;
    }
    assigned |= e;
  }
  return MeasurableFunction(sigma.algebra(), std::move(values));
}

complex integrate(const MeasurableFunction& f, const Valuation& mu) {
  require_same_algebra(f.algebra(), mu.algebra());
  complex total = 0.0;
  for (std::size_t x = 0; x < f.atoms(); ++x) total += f(x) * mu(x);
  return total;
}

complex integrate_layer_cake(const MeasurableFunction& f, const Valuation& mu) {
  require_same_algebra(f.algebra(), mu.algebra());
  const std::size_t n = f.atoms();
  std::vector<double> re_pos(n), re_neg(n), im_pos(n), im_neg(n);
  for (std::size_t x = 0; x < n; ++x) {
    re_pos[x] = std::max(f(x).real(), 0.0);
    re_neg[x] = std::max(-f(x).real(), 0.0);
    im_pos[x] = std::max(f(x).imag(), 0.0);
    im_neg[x] = std::max(-f(x).imag(), 0.0);
  }
  return {layer_cake_positive(re_pos, mu) - layer_cake_positive(re_neg, mu),
          layer_cake_positive(im_pos, mu) - layer_cake_positive(im_neg, mu)};
}

namespace {

void require_exponent(double p) {
  if (!(p >= 1.0)) throw Error(ErrorKind::POutOfRange, "L^p norms need p >= 1");
}

}  // namespace

double lp_norm(const MeasurableFunction& f, const Valuation& mu, double p) {
  require_same_algebra(f.algebra(), mu.algebra());
  require_exponent(p);
  if (std::isinf(p)) {
    double sup = 0.0;
    for (const complex& v : f.values()) sup = std::max(sup, std::abs(v));
    return sup;
  }
  double total = 0.0;
  for (std::size_t x = 0; x < f.atoms(); ++x) total += std::pow(std::abs(f(x)), p) * mu(x);
  return std::pow(total, 1.0 / p);
}

double lp_norm_layer_cake(const MeasurableFunction& f, const Valuation& mu, double p) {
  require_same_algebra(f.algebra(), mu.algebra());
  require_exponent(p);
  std::vector<double> moduli(f.atoms());
  for (std::size_t x = 0; x < f.atoms(); ++x) moduli[x] = std::abs(f(x));
  if (std::isinf(p)) {
    std::vector<double> levels = sorted_unique(moduli);
    levels.insert(levels.begin(), 0.0);
    for (double t : levels) {
      if (f.abs_at_most(t).all()) return t;
    }
    return levels.back();
  }
  std::vector<double> powered(f.atoms());
  for (std::size_t x = 0; x < f.atoms(); ++x) powered[x] = std::pow(moduli[x], p);
  return std::pow(layer_cake_positive(powered, mu), 1.0 / p);
}

ChainRuleReport rn_chain_rules(const Valuation& mu, const Valuation& sigma, const Valuation& rho,
                               const BooleanAutomorphism& phi) {
  require_same_algebra(mu.algebra(), sigma.algebra());
  require_same_algebra(mu.algebra(), rho.algebra());
  require_same_algebra(mu.algebra(), phi.algebra());

  ChainRuleReport report;
  const MeasurableFunction mu_sigma = rn_derivative(mu, sigma);
  const MeasurableFunction lhs = mu_sigma * rn_derivative(sigma, rho);
  const MeasurableFunction rhs = rn_derivative(mu, rho);
  for (std::size_t x = 0; x < lhs.atoms(); ++x) {
    report.product_rule_deviation = std::max(report.product_rule_deviation, std::abs(lhs(x) - rhs(x)));
  }

  const MeasurableFunction pushed = phi.push(mu_sigma);
  const MeasurableFunction transported = rn_derivative(phi.push(mu), phi.push(sigma));
  for (std::size_t x = 0; x < pushed.atoms(); ++x) {
    report.push_rule_deviation = std::max(report.push_rule_deviation, std::abs(pushed(x) - transported(x)));
  }
  return report;
}

}  // namespace lpgroup
