#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "lpgroup/measure.hpp"

namespace lpgroup {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// L^p(mu) over a finite measure algebra. The exponent is finite and at
/// least 1; operations that need p in (1, inf) or p != 2 check it themselves.
class LpContext {
 public:
  LpContext(FiniteMeasureAlgebra algebra, double p);

  const FiniteMeasureAlgebra& algebra() const noexcept { return algebra_; }
  std::size_t dim() const noexcept { return algebra_.atoms(); }
  double p() const noexcept { return p_; }
  /// Hoelder conjugate p / (p - 1); infinite for p = 1.
  double dual_p() const noexcept;
  LpContext dual() const { return LpContext(algebra_, dual_p()); }

  double norm(const Vector& xi) const;

 private:
  FiniteMeasureAlgebra algebra_;
  double p_;
};

/// A bounded operator on L^p(mu), stored as the matrix acting on
/// value-per-atom vectors.
struct Operator {
  LpContext context;
  Matrix matrix;

  Operator(LpContext ctx, Matrix m);
  std::size_t dim() const noexcept { return context.dim(); }
};

/// T = m_f u_phi with f unimodular.
struct LampertiForm {
  MeasurableFunction f;
  BooleanAutomorphism phi;

  LampertiForm(MeasurableFunction f, BooleanAutomorphism phi);
};

/// m_f = diag(f).
Operator mult_isometry(const MeasurableFunction& f, const LpContext& ctx);

/// u_phi(xi) = (phi o xi) (d(mu o phi^{-1}) / d mu)^{1/p}. Column y carries a
/// single entry (w_y / w_{phi(y)})^{1/p} in row phi(y).
Operator transform_isometry(const BooleanAutomorphism& phi, const LpContext& ctx);

/// m_f u_phi
Operator compose(const LampertiForm& form, const LpContext& ctx);

/// Max-entry deviation between u_phi m_f u_{phi^-1} and m_{phi o f}.
double interplay_check(const BooleanAutomorphism& phi, const MeasurableFunction& f, const LpContext& ctx);

/// ||xi + eta||^p + ||xi - eta||^p - 2 (||xi||^p + ||eta||^p). Nonnegative for
/// p > 2, nonpositive for p < 2, zero exactly when xi eta = 0 (p != 2).
double clarkson_gap(const Vector& xi, const Vector& eta, const LpContext& ctx);

inline constexpr double kDisjointnessTol = 1e-10;

/// Columns T(chi_x), T(chi_y) for x != y have pointwise products of modulus
/// at most kDisjointnessTol.
bool is_disjointness_preserving(const Operator& t);

struct IsometryCheck {
  bool ok = false;
  double max_relative_defect = 0.0;  // over basis and random vectors
  bool invertible = false;
};

inline constexpr double kIsometryTol = 1e-9;
inline constexpr double kSupportTol = 1e-9;

/// Compares ||T xi|| with ||xi|| on the basis vectors and on `random_vectors`
/// seeded complex vectors, and checks invertibility.
IsometryCheck validate_isometry(const Operator& t, std::size_t random_vectors = 64,
                                std::uint64_t seed = 0x5eed);

/// Banach-Lamperti factorization T = m_f u_phi for p in (1, inf), p != 2.
///
/// Throws P2Unsupported for p = 2, POutOfRange for p = 1, and NotIsometry if T
/// fails the isometry check or some column does not have exactly one entry
/// above kSupportTol.
LampertiForm lamperti_decompose(const Operator& t);

/// max(||f - g||_inf, 2 [phi != psi]).
double lamperti_distance(const LampertiForm& a, const LampertiForm& b, const LpContext& ctx);

}  // namespace lpgroup
