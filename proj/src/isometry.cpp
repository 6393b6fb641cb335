#include "lpgroup/isometry.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "lpgroup/error.hpp"

namespace lpgroup {

LpContext::LpContext(FiniteMeasureAlgebra algebra, double p) : algebra_(std::move(algebra)), p_(p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::POutOfRange, "exponent must be finite and at least 1");
  }
}

double LpContext::dual_p() const noexcept {
  return p_ == 1.0 ? std::numeric_limits<double>::infinity() : p_ / (p_ - 1.0);
}

double LpContext::norm(const Vector& xi) const {
  if (static_cast<std::size_t>(xi.size()) != dim()) {
    throw Error(ErrorKind::InvalidArgument, "vector length differs from atom count");
  }
  double total = 0.0;
  for (Eigen::Index x = 0; x < xi.size(); ++x) {
    total += std::pow(std::abs(xi(x)), p_) * algebra_.weight(static_cast<std::size_t>(x));
  }
  return std::pow(total, 1.0 / p_);
}

Operator::Operator(LpContext ctx, Matrix m) : context(std::move(ctx)), matrix(std::move(m)) {
  const auto n = static_cast<Eigen::Index>(context.dim());
  if (matrix.rows() != n || matrix.cols() != n) {
    throw Error(ErrorKind::InvalidArgument, "operator matrix must be square of the atom count");
  }
}

LampertiForm::LampertiForm(MeasurableFunction f_in, BooleanAutomorphism phi_in)
    : f(std::move(f_in)), phi(std::move(phi_in)) {
  if (!(f.algebra() == phi.algebra())) {
    throw Error(ErrorKind::MismatchedAlgebras, "Lamperti form parts live on different algebras");
  }
  if (!f.is_unimodular(1e-12)) throw Error(ErrorKind::NotUnimodular, "Lamperti multiplier must be unimodular");
}

Operator mult_isometry(const MeasurableFunction& f, const LpContext& ctx) {
  if (!(f.algebra() == ctx.algebra())) throw Error(ErrorKind::MismatchedAlgebras, "function on another algebra");
  if (!f.is_unimodular(1e-12)) throw Error(ErrorKind::NotUnimodular, "m_f needs |f| = 1");
  const auto n = static_cast<Eigen::Index>(ctx.dim());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index x = 0; x < n; ++x) m(x, x) = f(static_cast<std::size_t>(x));
  return Operator(ctx, std::move(m));
}

Operator transform_isometry(const BooleanAutomorphism& phi, const LpContext& ctx) {
  if (!(phi.algebra() == ctx.algebra())) {
    throw Error(ErrorKind::MismatchedAlgebras, "automorphism on another algebra");
  }
  const std::size_t n = ctx.dim();
  const auto& w = ctx.algebra().weights();
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t y = 0; y < n; ++y) {
    const std::size_t x = phi(y);
    m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = std::pow(w[y] / w[x], 1.0 / ctx.p());
  }
  return Operator(ctx, std::move(m));
}

Operator compose(const LampertiForm& form, const LpContext& ctx) {
  const Operator u = transform_isometry(form.phi, ctx);
  Matrix m = u.matrix;
  for (Eigen::Index x = 0; x < m.rows(); ++x) m.row(x) *= form.f(static_cast<std::size_t>(x));
  return Operator(ctx, std::move(m));
}

double interplay_check(const BooleanAutomorphism& phi, const MeasurableFunction& f, const LpContext& ctx) {
  const Matrix lhs = transform_isometry(phi, ctx).matrix * mult_isometry(f, ctx).matrix *
                     transform_isometry(phi.inverse(), ctx).matrix;
  const Matrix rhs = mult_isometry(phi.push(f), ctx).matrix;
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double clarkson_gap(const Vector& xi, const Vector& eta, const LpContext& ctx) {
  if (std::abs(ctx.p() - 2.0) < 1e-12) {
    throw Error(ErrorKind::P2Unsupported, "the Clarkson gap vanishes identically at p = 2");
  }
  const double p = ctx.p();
  auto pow_norm = [&](const Vector& v) { return std::pow(ctx.norm(v), p); };
  return pow_norm(xi + eta) + pow_norm(xi - eta) - 2.0 * (pow_norm(xi) + pow_norm(eta));
}

bool is_disjointness_preserving(const Operator& t) {
  const Eigen::MatrixXd moduli = t.matrix.cwiseAbs();
  for (Eigen::Index x = 0; x < moduli.cols(); ++x) {
    for (Eigen::Index y = x + 1; y < moduli.cols(); ++y) {
      if (moduli.col(x).cwiseProduct(moduli.col(y)).maxCoeff() > kDisjointnessTol) return false;
    }
  }
  return true;
}

IsometryCheck validate_isometry(const Operator& t, std::size_t random_vectors, std::uint64_t seed) {
  IsometryCheck check;
  const auto n = static_cast<Eigen::Index>(t.dim());
  auto defect = [&](const Vector& xi) {
    const double before = t.context.norm(xi);
    return std::abs(t.context.norm(t.matrix * xi) - before) / before;
  };
  for (Eigen::Index x = 0; x < n; ++x) {
    check.max_relative_defect = std::max(check.max_relative_defect, defect(Vector::Unit(n, x)));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (std::size_t k = 0; k < random_vectors; ++k) {
    Vector xi(n);
    for (Eigen::Index x = 0; x < n; ++x) xi(x) = complex(normal(rng), normal(rng));
    check.max_relative_defect = std::max(check.max_relative_defect, defect(xi));
  }
  check.invertible = Eigen::FullPivLU<Matrix>(t.matrix).isInvertible();
  check.ok = check.invertible && check.max_relative_defect <= kIsometryTol;
  return check;
}

LampertiForm lamperti_decompose(const Operator& t) {
  const LpContext& ctx = t.context;
  if (std::abs(ctx.p() - 2.0) < 1e-12) {
    throw Error(ErrorKind::P2Unsupported,
                "isometries of L^2 need not be disjointness preserving; no Lamperti form");
  }
  if (ctx.p() <= 1.0) throw Error(ErrorKind::POutOfRange, "decomposition needs p in (1, inf)");

  const IsometryCheck check = validate_isometry(t);
  if (!check.ok) {
    throw Error(ErrorKind::NotIsometry, check.invertible ? "operator does not preserve the p-norm"
                                                         : "operator is not invertible");
  }

  const std::size_t n = t.dim();
  const auto& w = ctx.algebra().weights();
  std::vector<std::size_t> images(n);
  for (std::size_t y = 0; y < n; ++y) {
    std::size_t hits = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (std::abs(t.matrix(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y))) > kSupportTol) {
        images[y] = x;
        ++hits;
      }
    }
    if (hits != 1) {
      throw Error(ErrorKind::NotIsometry, "column " + std::to_string(y) + " has " + std::to_string(hits) +
                                              " entries above the support threshold");
    }
  }
  if (!is_permutation(images)) throw Error(ErrorKind::NotIsometry, "column supports are not a permutation");

  std::vector<complex> f(n);
  for (std::size_t y = 0; y < n; ++y) {
    const std::size_t x = images[y];
    const complex entry = t.matrix(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
    f[x] = entry / std::pow(w[y] / w[x], 1.0 / ctx.p());
    if (std::abs(std::abs(f[x]) - 1.0) > kIsometryTol) {
      throw Error(ErrorKind::NotIsometry, "multiplier part is not unimodular");
    }
    f[x] /= std::abs(f[x]);
  }
  return LampertiForm(MeasurableFunction(ctx.algebra(), std::move(f)),
                      BooleanAutomorphism(ctx.algebra(), Permutation(std::move(images))));
}

double lamperti_distance(const LampertiForm& a, const LampertiForm& b, const LpContext& ctx) {
  if (!(a.f.algebra() == ctx.algebra()) || !(b.f.algebra() == ctx.algebra())) {
    throw Error(ErrorKind::MismatchedAlgebras, "Lamperti forms on another algebra");
  }
  double sup = 0.0;
  for (std::size_t x = 0; x < ctx.dim(); ++x) sup = std::max(sup, std::abs(a.f(x) - b.f(x)));
  return std::max(sup, a.phi.perm() == b.phi.perm() ? 0.0 : 2.0);
}

}  // namespace lpgroup
