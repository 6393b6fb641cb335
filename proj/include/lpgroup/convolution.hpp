#pragma once

#include <optional>
#include <vector>

#include "lpgroup/exact.hpp"
#include "lpgroup/group.hpp"
#include "lpgroup/isometry.hpp"

namespace lpgroup {

/// L^p(G) for a finite group with counting measure as Haar measure.
struct ConvolutionContext {
  FiniteGroup group;
  double p;

  ConvolutionContext(FiniteGroup g, double exponent);
  LpContext lp() const;
  std::size_t order() const noexcept { return group.order(); }
};

/// lambda_p(s) xi (t) = xi(s^{-1} t)
Operator left_regular(const ConvolutionContext& ctx, std::size_t s);
/// rho_p(s) xi (t) = xi(t s)
Operator right_regular(const ConvolutionContext& ctx, std::size_t s);

/// The 0/1 matrix of lambda(s) resp. rho(s), for exact computations.
IntMatrix left_regular_exact(const FiniteGroup& g, std::size_t s);
IntMatrix right_regular_exact(const FiniteGroup& g, std::size_t s);

/// A linearly independent family of n x n complex matrices, intended to span
/// a unital algebra. Independence is checked on construction; closure under
/// products is a separate query because arbitrary user input may fail it.
class AlgebraBasis {
 public:
  AlgebraBasis(std::size_t n, double p, std::vector<Matrix> elements);

  std::size_t n() const noexcept { return n_; }
  double p() const noexcept { return p_; }
  std::size_t dim() const noexcept { return elements_.size(); }
  const std::vector<Matrix>& elements() const noexcept { return elements_; }

  /// Largest residual of a basis product against the span.
  double closure_residual() const;
  bool contains_identity() const;
  /// Throws InvalidArgument unless closed under products (residual below
  /// kMembershipTol) and unital.
  void verify_algebra() const;

 private:
  std::size_t n_;
  double p_;
  std::vector<Matrix> elements_;
};

inline constexpr double kMembershipTol = 1e-9;

/// PF_p(G): spanned by lambda_p(s), s in G.
AlgebraBasis pseudofunction_algebra(const ConvolutionContext& ctx);

/// CV_p(G): the commutant of {rho_p(s)}, computed exactly from a generating
/// set of G.
AlgebraBasis convolver_algebra(const ConvolutionContext& ctx);

std::vector<IntMatrix> pseudofunction_exact_basis(const FiniteGroup& g);
std::vector<IntMatrix> convolver_exact_basis(const FiniteGroup& g);

/// Least-squares coordinates of X in the basis when the residual is below
/// kMembershipTol * max(1, ||X||_F).
std::optional<std::vector<complex>> algebra_membership(const AlgebraBasis& a, const Matrix& x);

/// One class of invertible isometries of l^p_n lying in the algebra: all
/// generalized permutation matrices with unimodular entries and a fixed
/// pattern, modulo global phase. The representative is normalized so that
/// its entry in column 0 is 1.
struct UnitaryClass {
  LampertiForm form;
  /// Dimension of the subspace of the algebra supported on the pattern; 1
  /// when the class is a single circle gamma * representative.
  std::size_t solution_dim = 0;

  const Permutation& perm() const noexcept { return form.phi.perm(); }
  Matrix matrix() const;
};

struct EnumerationLimits {
  /// Up to this size every pattern is searched; above it only the closure of
  /// the patterns supporting basis elements.
  std::size_t full_search_max_n = 16;
  std::size_t node_budget = 2'000'000;
};

/// All classes of invertible isometries in span(A) for p in (1, inf), p != 2,
/// in lexicographic order of their permutations (identity first).
std::vector<UnitaryClass> unitary_group_enumerate(const AlgebraBasis& a, double p,
                                                  const EnumerationLimits& limits = {});

}  // namespace lpgroup
