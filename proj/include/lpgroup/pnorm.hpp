#pragma once

#include <cstdint>
#include <vector>

#include "lpgroup/isometry.hpp"

namespace lpgroup {

/// A certified bracket on ||A||_{p->p}. `lower` is attained by `witness`;
/// `upper` is a proven bound (Schur test or Riesz-Thorin), never an estimate.
struct NormEstimate {
  double lower = 0.0;
  double upper = 0.0;
  Vector witness;
  std::size_t iterations = 0;
  bool converged = false;
  /// ||A x_k|| / ||x_k|| along the iteration that produced the witness.
  std::vector<double> history;
};

/// At most one nonzero entry in every row and every column.
bool is_generalized_permutation(const Matrix& m);

/// Exact norm of a generalized permutation operator on a weighted space:
/// the largest |c| (w_x / w_y)^{1/p} over entries c at (x, y).
double pnorm_genperm_exact(const Operator& a);
double pnorm_genperm_exact(const LampertiForm& form, const LpContext& ctx);

/// Adjoint for the bilinear pairing sum xi eta w: W^{-1} A^T W. It has the
/// same norm on L^{p'} as A has on L^p.
Operator weighted_transpose(const Operator& a);

inline constexpr double kBoydTol = 1e-10;
inline constexpr std::size_t kBoydMaxIter = 10000;

/// Nonlinear power iteration x <- Psi_{p'}(A^T Psi_p(A x)) for entrywise
/// nonnegative A, run on the unweighted similar matrix D A D^{-1} with
/// D = diag(w^{1/p}). Stops when the certified bracket closes to `tol`.
NormEstimate boyd_iterate(const Operator& a, double tol = kBoydTol, std::size_t max_iter = kBoydMaxIter);

/// Bracket for a general complex operator: the lower bound is the best of a
/// multi-start ascent on ||A xi|| over the unit p-sphere (starting from the
/// basis vectors, the Boyd witness of |A| and `starts` seeded random
/// vectors); the upper bound is boyd_iterate(|A|).
NormEstimate pnorm_estimate(const Operator& a, std::size_t starts = 8, std::uint64_t seed = 0x9e3779b9);

/// chi_c / mu(c)^{1/p} for the first atom c with phi(c) != psi(c). The two
/// isometries send it to vectors with disjoint supports.
Vector norm_witness_disjoint(const LampertiForm& a, const LampertiForm& b, const LpContext& ctx);

}  // namespace lpgroup
