#include "lpgroup/convolution.hpp"

#include <cmath>
#include <set>
#include <string>

#include "lpgroup/error.hpp"

namespace lpgroup {

namespace {

using Index = Eigen::Index;

Matrix to_complex(const IntMatrix& m) {
  Matrix out(static_cast<Index>(m.rows), static_cast<Index>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      out(static_cast<Index>(i), static_cast<Index>(j)) = static_cast<double>(m(i, j));
    }
  }
  return out;
}

// Columns are the basis elements read as vectors (column-major, so entry
// (x, y) of an n x n element sits at row x + n y).
Matrix stacked(std::size_t n, const std::vector<Matrix>& elements) {
  const auto nn = static_cast<Index>(n * n);
  Matrix v(nn, static_cast<Index>(elements.size()));
  for (std::size_t k = 0; k < elements.size(); ++k) {
    v.col(static_cast<Index>(k)) = Eigen::Map<const Vector>(elements[k].data(), nn);
  }
  return v;
}

Matrix orthonormal_span(std::size_t n, const std::vector<Matrix>& elements) {
  const Matrix v = stacked(n, elements);
  Eigen::HouseholderQR<Matrix> qr(v);
  return qr.householderQ() * Matrix::Identity(v.rows(), v.cols());
}

void require_isometry_exponent(double p) {
  if (std::abs(p - 2.0) < 1e-12) {
    throw Error(ErrorKind::P2Unsupported,
                "at p = 2 the invertible isometries are all unitaries; no permutation classes");
  }
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorKind::POutOfRange, "p must lie in (1, inf)");
}

}  // namespace

ConvolutionContext::ConvolutionContext(FiniteGroup g, double exponent) : group(std::move(g)), p(exponent) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::POutOfRange, "exponent must be finite and >= 1");
}

LpContext ConvolutionContext::lp() const {
  return LpContext(FiniteMeasureAlgebra::counting(group.order()), p);
}

IntMatrix left_regular_exact(const FiniteGroup& g, std::size_t s) {
  if (s >= g.order()) throw Error(ErrorKind::InvalidArgument, "element index out of range");
  IntMatrix m(g.order(), g.order());
  for (std::size_t u = 0; u < g.order(); ++u) m(g.product(s, u), u) = 1;
  return m;
}

IntMatrix right_regular_exact(const FiniteGroup& g, std::size_t s) {
  if (s >= g.order()) throw Error(ErrorKind::InvalidArgument, "element index out of range");
  IntMatrix m(g.order(), g.order());
  for (std::size_t t = 0; t < g.order(); ++t) m(t, g.product(t, s)) = 1;
  return m;
}

Operator left_regular(const ConvolutionContext& ctx, std::size_t s) {
  return Operator(ctx.lp(), to_complex(left_regular_exact(ctx.group, s)));
}

Operator right_regular(const ConvolutionContext& ctx, std::size_t s) {
  return Operator(ctx.lp(), to_complex(right_regular_exact(ctx.group, s)));
}

AlgebraBasis::AlgebraBasis(std::size_t n, double p, std::vector<Matrix> elements)
    : n_(n), p_(p), elements_(std::move(elements)) {
  if (n_ == 0) throw Error(ErrorKind::InvalidArgument, "algebra basis needs n >= 1");
  if (!(p_ >= 1.0) || !std::isfinite(p_)) throw Error(ErrorKind::POutOfRange, "exponent must be finite and >= 1");
  if (elements_.empty()) throw Error(ErrorKind::InvalidArgument, "algebra basis is empty");
  for (const auto& m : elements_) {
    if (m.rows() != static_cast<Index>(n_) || m.cols() != static_cast<Index>(n_)) {
      throw Error(ErrorKind::InvalidArgument, "basis element has the wrong shape");
    }
  }
  Eigen::JacobiSVD<Matrix> svd(stacked(n_, elements_));
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-9 * std::max(1.0, sv(0)) || elements_.size() > n_ * n_) {
    throw Error(ErrorKind::InvalidArgument, "basis elements are linearly dependent");
  }
}

double AlgebraBasis::closure_residual() const {
  const Matrix q = orthonormal_span(n_, elements_);
  const auto nn = static_cast<Index>(n_ * n_);
  double worst = 0.0;
  for (const auto& a : elements_) {
    for (const auto& b : elements_) {
      const Matrix prod = a * b;
      const Eigen::Map<const Vector> v(prod.data(), nn);
      const Vector residual = v - q * (q.adjoint() * v);
      worst = std::max(worst, residual.norm());
    }
  }
  return worst;
}

bool AlgebraBasis::contains_identity() const {
  return algebra_membership(*this, Matrix::Identity(static_cast<Index>(n_), static_cast<Index>(n_))).has_value();
}

void AlgebraBasis::verify_algebra() const {
  const double residual = closure_residual();
  if (residual >= kMembershipTol) {
    throw Error(ErrorKind::InvalidArgument, "span is not closed under products (residual " +
                                                std::to_string(residual) + ")");
  }
  if (!contains_identity()) throw Error(ErrorKind::InvalidArgument, "span does not contain the identity");
}

std::vector<IntMatrix> pseudofunction_exact_basis(const FiniteGroup& g) {
  std::vector<IntMatrix> basis;
  for (std::size_t s = 0; s < g.order(); ++s) basis.push_back(left_regular_exact(g, s));
  return basis;
}

std::vector<IntMatrix> convolver_exact_basis(const FiniteGroup& g) {
  std::vector<IntMatrix> rho;
  for (std::size_t s : generating_set(g)) rho.push_back(right_regular_exact(g, s));
  if (rho.empty()) rho.push_back(right_regular_exact(g, g.identity()));  // trivial group
  return exact_commutant(rho);
}

AlgebraBasis pseudofunction_algebra(const ConvolutionContext& ctx) {
  const auto exact = pseudofunction_exact_basis(ctx.group);
  if (exact_span_rank(exact) != ctx.order()) {
    throw Error(ErrorKind::InvalidArgument, "left translations are linearly dependent");
  }
  std::vector<Matrix> elements;
  for (const auto& m : exact) elements.push_back(to_complex(m));
  AlgebraBasis basis(ctx.order(), ctx.p, std::move(elements));
  basis.verify_algebra();
  return basis;
}

AlgebraBasis convolver_algebra(const ConvolutionContext& ctx) {
  std::vector<Matrix> elements;
  for (const auto& m : convolver_exact_basis(ctx.group)) elements.push_back(to_complex(m));
  AlgebraBasis basis(ctx.order(), ctx.p, std::move(elements));
  basis.verify_algebra();
  return basis;
}

std::optional<std::vector<complex>> algebra_membership(const AlgebraBasis& a, const Matrix& x) {
  if (x.rows() != static_cast<Index>(a.n()) || x.cols() != static_cast<Index>(a.n())) {
    throw Error(ErrorKind::InvalidArgument, "matrix shape differs from the algebra");
  }
  const Matrix v = stacked(a.n(), a.elements());
  const Eigen::Map<const Vector> target(x.data(), x.size());
  const Vector coords = v.colPivHouseholderQr().solve(Vector(target));
  const double residual = (v * coords - target).norm();
  if (residual >= kMembershipTol * std::max(1.0, x.norm())) return std::nullopt;
  return std::vector<complex>(coords.data(), coords.data() + coords.size());
}

Matrix UnitaryClass::matrix() const {
  const auto n = static_cast<Index>(perm().size());
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t y = 0; y < perm().size(); ++y) {
    const std::size_t x = perm()(y);
    m(static_cast<Index>(x), static_cast<Index>(y)) = form.f(x);
  }
  return m;
}

namespace {

constexpr double kRankTol = 1e-9;
constexpr double kUnimodularTol = 1e-9;

class PatternSearch {
 public:
  PatternSearch(const AlgebraBasis& a, const EnumerationLimits& limits)
      : n_(a.n()), q_(orthonormal_span(a.n(), a.elements())), limits_(limits),
        algebra_(FiniteMeasureAlgebra::counting(a.n())) {}

  std::vector<UnitaryClass> full_search() {
    std::vector<std::size_t> pattern(n_);
    std::vector<bool> used(n_, false);
    descend(Matrix::Identity(q_.cols(), q_.cols()), 0, pattern, used);
    return std::move(found_);
  }

  std::vector<UnitaryClass> seeded_search(const AlgebraBasis& a) {
    std::set<std::vector<std::size_t>> candidates;
    std::vector<std::vector<std::size_t>> queue;
    auto add = [&](std::vector<std::size_t> pattern) {
      count_node();
      if (candidates.insert(pattern).second) queue.push_back(std::move(pattern));
    };
    const Permutation id = Permutation::identity(n_);
    add(std::vector<std::size_t>(id.images().begin(), id.images().end()));
    for (const auto& m : a.elements()) {
      if (auto pattern = support_pattern(m)) add(std::move(*pattern));
    }
    // Close under composition; isometry classes of an algebra form a group.
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Permutation left(queue[head]);
      for (std::size_t other = 0; other <= head; ++other) {
        const Permutation right(queue[other]);
        for (const Permutation& prod : {left * right, right * left}) {
          add(std::vector<std::size_t>(prod.images().begin(), prod.images().end()));
        }
      }
    }
    for (const auto& pattern : candidates) {
      std::vector<Index> zeros;
      for (std::size_t y = 0; y < n_; ++y) {
        for (std::size_t x = 0; x < n_; ++x) {
          if (x != pattern[y]) zeros.push_back(idx(x, y));
        }
      }
      const Matrix basis = restrict(Matrix::Identity(q_.cols(), q_.cols()), zeros);
      if (basis.cols() == 0) continue;
      if (auto cls = solve_leaf(basis, pattern)) found_.push_back(std::move(*cls));
    }
    return std::move(found_);
  }

 private:
  Index idx(std::size_t row, std::size_t col) const { return static_cast<Index>(row + n_ * col); }

  void count_node() {
    if (++nodes_ > limits_.node_budget) {
      throw Error(ErrorKind::Budget, "generalized permutation search exceeded its node budget");
    }
  }

  // Null vectors of the functionals `rows` restricted to span(basis).
  Matrix restrict(const Matrix& basis, const std::vector<Index>& rows) const {
    if (rows.empty() || basis.cols() == 0) return basis;
    Matrix m(static_cast<Index>(rows.size()), basis.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) m.row(static_cast<Index>(r)) = q_.row(rows[r]) * basis;
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    Index rank = 0;
    for (Index i = 0; i < svd.singularValues().size(); ++i) {
      if (svd.singularValues()(i) > kRankTol) ++rank;
    }
    return basis * svd.matrixV().rightCols(basis.cols() - rank);
  }

  std::optional<std::vector<std::size_t>> support_pattern(const Matrix& m) const {
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return std::nullopt;
    std::vector<std::size_t> images(n_);
    for (std::size_t y = 0; y < n_; ++y) {
      std::size_t hits = 0;
      for (std::size_t x = 0; x < n_; ++x) {
        if (std::abs(m(static_cast<Index>(x), static_cast<Index>(y))) > kRankTol * scale) {
          images[y] = x;
          ++hits;
        }
      }
      if (hits != 1) return std::nullopt;
    }
    if (!is_permutation(images)) return std::nullopt;
    return images;
  }

  bool entry_alive(const Matrix& basis, std::size_t row, std::size_t col) const {
    return (q_.row(idx(row, col)) * basis).norm() > kRankTol;
  }

  void descend(const Matrix& basis, std::size_t col, std::vector<std::size_t>& pattern, std::vector<bool>& used) {
    count_node();
    if (col == n_) {
      if (auto cls = solve_leaf(basis, pattern)) found_.push_back(std::move(*cls));
      return;
    }
    for (std::size_t row = 0; row < n_; ++row) {
      if (used[row] || !entry_alive(basis, row, col)) continue;
      std::vector<Index> zeros;
      for (std::size_t x = 0; x < n_; ++x) {
        if (x != row) zeros.push_back(idx(x, col));
      }
      const Matrix next = restrict(basis, zeros);
      if (next.cols() == 0 || !entry_alive(next, row, col)) continue;
      used[row] = true;
      pattern[col] = row;
      if (later_columns_feasible(next, col + 1, used)) descend(next, col + 1, pattern, used);
      used[row] = false;
    }
  }

  bool later_columns_feasible(const Matrix& basis, std::size_t from, const std::vector<bool>& used) const {
    for (std::size_t col = from; col < n_; ++col) {
      bool any = false;
      for (std::size_t row = 0; row < n_ && !any; ++row) any = !used[row] && entry_alive(basis, row, col);
      if (!any) return false;
    }
    return true;
  }

  std::optional<UnitaryClass> solve_leaf(const Matrix& basis, const std::vector<std::size_t>& pattern) const {
    const auto k = basis.cols();
    Matrix e(static_cast<Index>(n_), k);  // pattern entries as functions of the coefficients
    for (std::size_t y = 0; y < n_; ++y) e.row(static_cast<Index>(y)) = q_.row(idx(pattern[y], y)) * basis;

    Vector values;
    const Vector ones = Vector::Ones(static_cast<Index>(n_));
    const auto solver = e.colPivHouseholderQr();
    const Vector through_ones = e * solver.solve(ones);
    if ((through_ones - ones).cwiseAbs().maxCoeff() <= kUnimodularTol) {
      values = through_ones;
    } else if (k == 1) {
      values = e.col(0);
    } else {
      // Alternate between the unimodular entry vectors and the span.
      values = through_ones;
      for (int it = 0; it < 2000; ++it) {
        Vector target(values.size());
        for (Index y = 0; y < values.size(); ++y) {
          target(y) = std::abs(values(y)) == 0.0 ? complex(1.0) : values(y) / std::abs(values(y));
        }
        values = e * solver.solve(target);
        if ((values.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-14) break;
      }
    }
    const double scale = std::abs(values(0));
    if (scale <= kRankTol) return std::nullopt;
    std::vector<complex> f(n_);
    for (std::size_t y = 0; y < n_; ++y) {
      const complex v = values(static_cast<Index>(y)) / scale;
      if (std::abs(std::abs(v) - 1.0) > kUnimodularTol) return std::nullopt;
      f[pattern[y]] = v / std::abs(v);
    }
    const complex phase = f[pattern[0]];
    for (auto& v : f) v /= phase;
    f[pattern[0]] = 1.0;
    return UnitaryClass{LampertiForm(MeasurableFunction(algebra_, std::move(f)),
                                     BooleanAutomorphism(algebra_, Permutation(pattern))),
                        static_cast<std::size_t>(k)};
  }

  std::size_t n_;
  Matrix q_;
  EnumerationLimits limits_;
  FiniteMeasureAlgebra algebra_;
  std::size_t nodes_ = 0;
  std::vector<UnitaryClass> found_;
};

}  // namespace

std::vector<UnitaryClass> unitary_group_enumerate(const AlgebraBasis& a, double p, const EnumerationLimits& limits) {
  require_isometry_exponent(p);
  PatternSearch search(a, limits);
  return a.n() <= limits.full_search_max_n ? search.full_search() : search.seeded_search(a);
}

}  // namespace lpgroup
