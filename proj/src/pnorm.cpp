#include "lpgroup/pnorm.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "lpgroup/error.hpp"

namespace lpgroup {

namespace {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Relative slack absorbing the rounding in a Schur certificate.
constexpr double kCertificateSlack = 1e-13;

void require_open_exponent(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorKind::POutOfRange, "p-norm engine needs p in (1, inf)");
}

Eigen::VectorXd scaling(const LpContext& ctx) {
  const auto& w = ctx.algebra().weights();
  Eigen::VectorXd d(static_cast<Eigen::Index>(w.size()));
  for (std::size_t x = 0; x < w.size(); ++x) d(static_cast<Eigen::Index>(x)) = std::pow(w[x], 1.0 / ctx.p());
  return d;
}

// D A D^{-1}: ||A||_{p,w} = ||D A D^{-1}||_p.
template <typename M>
M unweighted(const M& a, const Eigen::VectorXd& d) {
  return d.asDiagonal() * a * d.cwiseInverse().asDiagonal();
}

double plain_norm(const RealVector& v, double p) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) total += std::pow(std::abs(v(i)), p);
  return std::pow(total, 1.0 / p);
}

double plain_norm(const Vector& v, double p) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) total += std::pow(std::abs(v(i)), p);
  return std::pow(total, 1.0 / p);
}

// Psi_q(z) = z |z|^{q-2}, the duality map of l^q (up to normalization).
Vector duality_map(const Vector& v, double q) {
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    out(i) = m == 0.0 ? complex(0.0) : v(i) * std::pow(m, q - 2.0);
  }
  return out;
}

// ||B||_1^{1/p} ||B||_inf^{1/p'} for B >= 0.
double riesz_thorin_bound(const RealMatrix& b, double p) {
  const double col = b.colwise().sum().maxCoeff();
  const double row = b.rowwise().sum().maxCoeff();
  return std::pow(col, 1.0 / p) * std::pow(row, 1.0 - 1.0 / p);
}

// Schur test with h^{p'} = x, k^{p'} = B x:
// ||B|| <= (max_j (B^T (Bx)^{p-1})_j / x_j^{p-1})^{1/p}. Infinite if some
// x_j vanishes under a nonzero column.
double schur_bound(const RealVector& x, const RealVector& back, double p) {
  double ratio = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (back(j) == 0.0) continue;
    if (x(j) == 0.0) return std::numeric_limits<double>::infinity();
    ratio = std::max(ratio, back(j) / std::pow(x(j), p - 1.0));
  }
  return std::pow(ratio, 1.0 / p) * (1.0 + kCertificateSlack);
}

struct AscentResult {
  Vector x;
  double value = 0.0;
  std::size_t iterations = 0;
  std::vector<double> history;
};

// Power iteration x <- Psi_{p'}(B^H Psi_p(B x)) on the unit l^p sphere. Each
// step does not decrease ||B x||_p.
AscentResult ascend(const Matrix& b, Vector x, double p, std::size_t max_iter) {
  const double q = p / (p - 1.0);
  AscentResult result;
  x /= plain_norm(x, p);
  double value = plain_norm(Vector(b * x), p);
  result.history.push_back(value);
  result.x = x;
  result.value = value;
  for (std::size_t k = 0; k < max_iter; ++k) {
    const Vector v = b.adjoint() * duality_map(b * x, p);
    if (v.cwiseAbs().maxCoeff() == 0.0) break;
    Vector next = duality_map(v, q);
    next /= plain_norm(next, p);
    const double next_value = plain_norm(Vector(b * next), p);
    ++result.iterations;
    result.history.push_back(next_value);
    const bool stalled = next_value <= value * (1.0 + 1e-15);
    x = next;
    if (next_value > result.value) {
      result.value = next_value;
      result.x = x;
    }
    value = next_value;
    if (stalled) break;
  }
  return result;
}

}  // namespace

bool is_generalized_permutation(const Matrix& m) {
  for (Eigen::Index x = 0; x < m.rows(); ++x) {
    if ((m.row(x).array() != complex(0.0)).count() > 1) return false;
  }
  for (Eigen::Index y = 0; y < m.cols(); ++y) {
    if ((m.col(y).array() != complex(0.0)).count() > 1) return false;
  }
  return true;
}

double pnorm_genperm_exact(const Operator& a) {
  if (!is_generalized_permutation(a.matrix)) {
    throw Error(ErrorKind::NotGeneralizedPermutation, "operator has a row or column with two nonzeros");
  }
  const auto& w = a.context.algebra().weights();
  double best = 0.0;
  for (Eigen::Index x = 0; x < a.matrix.rows(); ++x) {
    for (Eigen::Index y = 0; y < a.matrix.cols(); ++y) {
      const double c = std::abs(a.matrix(x, y));
      if (c == 0.0) continue;
      best = std::max(best, c * std::pow(w[static_cast<std::size_t>(x)] / w[static_cast<std::size_t>(y)],
                                         1.0 / a.context.p()));
    }
  }
  return best;
}

double pnorm_genperm_exact(const LampertiForm& form, const LpContext& ctx) {
  return pnorm_genperm_exact(compose(form, ctx));
}

Operator weighted_transpose(const Operator& a) {
  const auto& w = a.context.algebra().weights();
  Eigen::VectorXd wv(static_cast<Eigen::Index>(w.size()));
  for (std::size_t x = 0; x < w.size(); ++x) wv(static_cast<Eigen::Index>(x)) = w[x];
  Matrix t = wv.cwiseInverse().asDiagonal() * a.matrix.transpose() * wv.asDiagonal();
  return Operator(a.context.dual(), std::move(t));
}

namespace {

// lower = upper = the exact value, witnessed by the basis vector of the
// largest weighted entry.
NormEstimate genperm_estimate(const Operator& a) {
  const double p = a.context.p();
  const Eigen::Index n = a.matrix.cols();
  NormEstimate est;
  est.upper = pnorm_genperm_exact(a);
  est.lower = est.upper;
  est.converged = true;
  est.witness = Vector::Unit(n, 0);
  const auto& w = a.context.algebra().weights();
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y) {
      const double c = std::abs(a.matrix(x, y));
      if (c != 0.0 && c * std::pow(w[static_cast<std::size_t>(x)] / w[static_cast<std::size_t>(y)], 1.0 / p) ==
                          est.upper) {
        est.witness = Vector::Unit(n, y);
      }
    }
  }
  est.history.push_back(est.lower);
  return est;
}

}  // namespace

NormEstimate boyd_iterate(const Operator& a, double tol, std::size_t max_iter) {
  const double p = a.context.p();
  require_open_exponent(p);
  if (a.matrix.imag().cwiseAbs().maxCoeff() != 0.0 || a.matrix.real().minCoeff() < 0.0) {
    throw Error(ErrorKind::NotNonnegative, "Boyd iteration needs an entrywise nonnegative matrix");
  }
  if (is_generalized_permutation(a.matrix)) return genperm_estimate(a);
  const double q = p / (p - 1.0);
  const Eigen::VectorXd d = scaling(a.context);
  const RealMatrix b = unweighted(RealMatrix(a.matrix.real()), d);
  const Eigen::Index n = b.cols();

  NormEstimate est;
  RealVector x = RealVector::Ones(n);
  x /= plain_norm(x, p);
  double upper = riesz_thorin_bound(b, p) * (1.0 + kCertificateSlack);
  double value = 0.0;
  for (std::size_t k = 0;; ++k) {
    const RealVector y = b * x;
    value = plain_norm(y, p);
    est.history.push_back(value);
    if (value == 0.0) {
      upper = 0.0;
      est.converged = true;
      break;
    }
    const RealVector back = b.transpose() * y.array().pow(p - 1.0).matrix();
    upper = std::min(upper, schur_bound(x, back, p));
    if (upper - value <= tol * upper) {
      est.converged = true;
      break;
    }
    if (k == max_iter) break;
    RealVector next = back.array().pow(q - 1.0).matrix();
    next /= plain_norm(next, p);
    if (next == x) {
      // A fixed point with an open bracket: the Schur test cannot certify
      // more, so report what was attained.
      break;
    }
    x = next;
    est.iterations = k + 1;
  }

  est.witness = (x.cwiseQuotient(d)).cast<complex>();
  est.lower = a.context.norm(a.matrix * est.witness) / a.context.norm(est.witness);
  est.upper = std::max(upper, 0.0);
  return est;
}

NormEstimate pnorm_estimate(const Operator& a, std::size_t starts, std::uint64_t seed) {
  const double p = a.context.p();
  require_open_exponent(p);
  const Eigen::Index n = a.matrix.cols();

  if (is_generalized_permutation(a.matrix)) return genperm_estimate(a);

  const NormEstimate majorant = boyd_iterate(Operator(a.context, a.matrix.cwiseAbs().cast<complex>()));
  const Eigen::VectorXd d = scaling(a.context);
  const Matrix b = unweighted(a.matrix, d);

  std::vector<Vector> seeds;
  for (Eigen::Index j = 0; j < n; ++j) seeds.push_back(Vector::Unit(n, j));
  seeds.push_back(d.cast<complex>().cwiseProduct(majorant.witness));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (std::size_t k = 0; k < starts; ++k) {
    Vector v(n);
    for (Eigen::Index j = 0; j < n; ++j) v(j) = complex(normal(rng), normal(rng));
    seeds.push_back(v);
  }

  AscentResult best;
  std::size_t iterations = 0;
  for (const Vector& s : seeds) {
    AscentResult r = ascend(b, s, p, 1000);
    iterations += r.iterations;
    if (r.value > best.value || best.x.size() == 0) best = std::move(r);  // first found wins ties
  }

  NormEstimate est;
  est.witness = best.x.cwiseQuotient(d.cast<complex>());
  est.lower = a.context.norm(a.matrix * est.witness) / a.context.norm(est.witness);
  est.upper = majorant.upper;
  est.iterations = iterations;
  est.history = std::move(best.history);
  est.converged = est.upper - est.lower <= 1e-9 * std::max(est.upper, 1.0);
  return est;
}

Vector norm_witness_disjoint(const LampertiForm& a, const LampertiForm& b, const LpContext& ctx) {
  const std::size_t n = ctx.dim();
  for (std::size_t c = 0; c < n; ++c) {
    if (a.phi(c) != b.phi(c)) {
      Vector xi = Vector::Zero(static_cast<Eigen::Index>(n));
      xi(static_cast<Eigen::Index>(c)) = 1.0 / std::pow(ctx.algebra().weight(c), 1.0 / ctx.p());
      return xi;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "disjoint witness needs phi != psi");
}

}  // namespace lpgroup
