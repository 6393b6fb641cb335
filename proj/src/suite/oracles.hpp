#pragma once

// Brute-force reference computations used by the tests and the acceptance
// suite. None of them shares code paths with the library routines they check.

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lpgroup/convolution.hpp"
#include "lpgroup/group.hpp"
#include "lpgroup/measure.hpp"

namespace lpgroup::oracle {

/// Tries every bijection fixing the identity. Orders up to 8 only.
bool isomorphic_by_bijections(const FiniteGroup& g, const FiniteGroup& h);

/// r^k s^j acting on the vertices of the regular n-gon, as an image array:
/// r: v -> v + 1, s: v -> -v (mod n), composed right to left.
std::vector<std::size_t> dihedral_vertex_action(std::size_t n, std::size_t k, std::size_t j);

/// Union of all atom sets a with sigma(a') <= t mu(a') for every a' within a,
/// found by enumerating subsets.
AtomSet level_set_by_subsets(const Valuation& sigma, const Valuation& mu, double t);

/// sigma({x}) / mu({x})
std::vector<double> atomic_ratio(const Valuation& sigma, const Valuation& mu);

/// Unit vectors (u, v, 1 - u - v)^{1/p} of the nonnegative part of the unit
/// p-sphere in R^3, u and v on a grid of the given step.
std::vector<Eigen::Vector3d> nonnegative_sphere_grid(double p, double step);

/// max ||A x||_p over the grid points.
double grid_search_norm(const Eigen::Matrix3d& a, double p, const std::vector<Eigen::Vector3d>& grid);

/// Patterns (column -> row) of the span elements supported exactly on a
/// permutation with entries of equal modulus, found by trying all n!
/// permutations. Only patterns whose supported subspace is one-dimensional
/// are decided; others are reported in `undecided`.
struct PatternSurvey {
  std::vector<std::vector<std::size_t>> unitary_patterns;
  std::vector<std::vector<std::size_t>> undecided;
};
PatternSurvey survey_permutation_patterns(const AlgebraBasis& a);

}  // namespace lpgroup::oracle
