#include "suite/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lpgroup/error.hpp"

namespace lpgroup::oracle {

bool isomorphic_by_bijections(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t n = g.order();
  if (n != h.order()) return false;
  if (n > 8) throw Error(ErrorKind::Budget, "bijection oracle is limited to order 8");
  std::vector<std::size_t> rest_g, rest_h;
  for (std::size_t x = 0; x < n; ++x) {
    if (x != g.identity()) rest_g.push_back(x);
    if (x != h.identity()) rest_h.push_back(x);
  }
  std::vector<std::size_t> map(n);
  do {
    map[g.identity()] = h.identity();
    for (std::size_t i = 0; i < rest_g.size(); ++i) map[rest_g[i]] = rest_h[i];
    bool hom = true;
    for (std::size_t a = 0; a < n && hom; ++a) {
      for (std::size_t b = 0; b < n && hom; ++b) hom = map[g.product(a, b)] == h.product(map[a], map[b]);
    }
    if (hom) return true;
  } while (std::next_permutation(rest_h.begin(), rest_h.end()));
  return false;
}

std::vector<std::size_t> dihedral_vertex_action(std::size_t n, std::size_t k, std::size_t j) {
  std::vector<std::size_t> images(n);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t reflected = j == 0 ? v : (n - v) % n;
    images[v] = (reflected + k) % n;
  }
  return images;
}

AtomSet level_set_by_subsets(const Valuation& sigma, const Valuation& mu, double t) {
  const std::size_t n = sigma.atoms();
  auto value = [n](const Valuation& nu, unsigned mask) {
    double s = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      if (mask & (1u << x)) s += nu(x);
    }
    return s;
  };
  unsigned sup = 0;
  for (unsigned a = 0; a < (1u << n); ++a) {
    bool admissible = true;
    // every sub-subset a' of a, including the empty set
    for (unsigned sub = a;; sub = (sub - 1) & a) {
      if (value(sigma, sub) > t * value(mu, sub)) {
        admissible = false;
        break;
      }
      if (sub == 0) break;
    }
    if (admissible) sup |= a;
  }
  AtomSet out(n);
  for (std::size_t x = 0; x < n; ++x) out[x] = (sup >> x) & 1u;
  return out;
}

std::vector<double> atomic_ratio(const Valuation& sigma, const Valuation& mu) {
  std::vector<double> out(sigma.atoms());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = sigma(x) / mu(x);
  return out;
}

std::vector<Eigen::Vector3d> nonnegative_sphere_grid(double p, double step) {
  const auto steps = static_cast<std::size_t>(std::llround(1.0 / step));
  std::vector<Eigen::Vector3d> grid;
  grid.reserve((steps + 1) * (steps + 2) / 2);
  for (std::size_t i = 0; i <= steps; ++i) {
    for (std::size_t j = 0; i + j <= steps; ++j) {
      const double u = static_cast<double>(i) / static_cast<double>(steps);
      const double v = static_cast<double>(j) / static_cast<double>(steps);
      const double w = std::max(0.0, 1.0 - u - v);
      grid.emplace_back(std::pow(u, 1.0 / p), std::pow(v, 1.0 / p), std::pow(w, 1.0 / p));
    }
  }
  return grid;
}

double grid_search_norm(const Eigen::Matrix3d& a, double p, const std::vector<Eigen::Vector3d>& grid) {
  double best = 0.0;
  for (const auto& x : grid) {
    const Eigen::Vector3d y = a * x;
    const double s = std::pow(y(0), p) + std::pow(y(1), p) + std::pow(y(2), p);
    best = std::max(best, s);
  }
  return std::pow(best, 1.0 / p);
}

PatternSurvey survey_permutation_patterns(const AlgebraBasis& a) {
  const std::size_t n = a.n();
  const std::size_t d = a.dim();
  std::vector<std::size_t> pattern(n);
  std::iota(pattern.begin(), pattern.end(), std::size_t{0});
  PatternSurvey out;
  do {
    // constraints: every off-pattern entry of sum c_k B_k vanishes
    Eigen::MatrixXcd system(static_cast<Eigen::Index>(n * n - n), static_cast<Eigen::Index>(d));
    Eigen::Index row = 0;
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t x = 0; x < n; ++x) {
        if (pattern[y] == x) continue;
        for (std::size_t k = 0; k < d; ++k) {
          system(row, static_cast<Eigen::Index>(k)) =
              a.elements()[k](static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
        }
        ++row;
      }
    }
    Eigen::MatrixXcd kernel = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    if (system.rows() > 0) {
      Eigen::FullPivLU<Eigen::MatrixXcd> lu(system);
      lu.setThreshold(1e-10);
      kernel = lu.rank() == static_cast<Eigen::Index>(d) ? Eigen::MatrixXcd(static_cast<Eigen::Index>(d), 0) : lu.kernel();
    }
    const Eigen::Index kernel_dim = kernel.cols();
    if (kernel_dim == 0) continue;
    if (kernel_dim > 1) {
      out.undecided.push_back(pattern);
      continue;
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < d; ++k) m += kernel(static_cast<Eigen::Index>(k), 0) * a.elements()[k];
    double lo = INFINITY, hi = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      const double r = std::abs(m(static_cast<Eigen::Index>(pattern[y]), static_cast<Eigen::Index>(y)));
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (hi > 0.0 && hi - lo <= 1e-9 * hi) out.unitary_patterns.push_back(pattern);
  } while (std::next_permutation(pattern.begin(), pattern.end()));
  return out;
}

}  // namespace lpgroup::oracle
