#include "lpgroup/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <string>

#include "lpgroup/error.hpp"

namespace lpgroup {

namespace {

using Index = Eigen::Index;

Matrix random_translation_combination(const ConvolutionContext& ctx, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  const auto n = static_cast<Index>(ctx.order());
  Matrix a = Matrix::Zero(n, n);
  for (std::size_t s = 0; s < ctx.order(); ++s) {
    a += complex(normal(rng), normal(rng)) * left_regular(ctx, s).matrix;
  }
  return a;
}

// Plain triple loop with a fixed summation order, so that (ab)^T and
// b^T a^T are computed from identical products.
Matrix naive_product(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < b.cols(); ++j) {
      complex acc = 0.0;
      for (Index k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  }
  return out;
}

double spectral_norm(const Matrix& m) {
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

std::vector<complex> sorted_eigenvalues(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> solver(m, false);
  std::vector<complex> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + m.rows());
  for (auto& v : ev) {
    // snap rounding noise so that the ordering below is stable
    v = complex(std::round(v.real() * 1e12) / 1e12, std::round(v.imag() * 1e12) / 1e12);
  }
  std::sort(ev.begin(), ev.end(), [](const complex& a, const complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return ev;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Isomorphic: return "Isomorphic";
    case Verdict::AntiIsomorphic: return "AntiIsomorphic";
    case Verdict::Distinct: return "Distinct";
  }
  return "Distinct";
}

ComponentTable components(const std::vector<UnitaryClass>& unitaries) {
  if (unitaries.empty()) throw Error(ErrorKind::NotGroupLike, "no invertible isometries to group");
  std::map<Permutation, std::size_t> index;
  for (const auto& u : unitaries) index.emplace(u.perm(), 0);

  ComponentTable out;
  const std::size_t n = unitaries.front().perm().size();
  const Permutation identity = Permutation::identity(n);
  if (index.count(identity) == 0) throw Error(ErrorKind::NotGroupLike, "identity class is missing");
  // std::map orders lexicographically and the identity is the smallest image array.
  for (auto& [perm, i] : index) {
    i = out.perms.size();
    out.perms.push_back(perm);
  }

  const std::size_t m = out.perms.size();
  out.table.assign(m, std::vector<std::size_t>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto it = index.find(out.perms[i] * out.perms[j]);
      if (it == index.end()) {
        throw Error(ErrorKind::NotGroupLike, "isometry classes are not closed under composition");
      }
      out.table[i][j] = it->second;
    }
  }
  for (const auto& u : unitaries) out.component_of.push_back(index.at(u.perm()));
  return out;
}

std::size_t left_translation_match(const Permutation& pi, const ConvolutionContext& ctx) {
  const FiniteGroup& g = ctx.group;
  if (pi.size() != g.order()) throw Error(ErrorKind::InvalidArgument, "permutation size differs from |G|");
  for (std::size_t t = 0; t < g.order(); ++t) {
    const Permutation r = g.right_translation(t);
    if (!(pi * r == r * pi)) {
      throw Error(ErrorKind::NotRightInvariant, "permutation does not commute with a right translation");
    }
  }
  // pi(x) = pi(r_{x^{-1}}(e)) = r_{x^{-1}}(pi(e)) = pi(e) x
  const std::size_t s = pi(g.identity());
  if (!(g.left_translation(s) == pi)) {
    throw Error(ErrorKind::NotRightInvariant, "permutation is not a left translation");
  }
  return s;
}

RecoveredGroup recover_group(const AlgebraBasis& a, double p, const EnumerationLimits& limits) {
  const std::vector<UnitaryClass> unitaries = unitary_group_enumerate(a, p, limits);
  const ComponentTable comps = components(unitaries);

  std::vector<std::optional<UnitaryClass>> reps(comps.perms.size());
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    auto& slot = reps[comps.component_of[i]];
    if (!slot) slot = unitaries[i];
  }
  std::vector<UnitaryClass> representatives;
  for (auto& r : reps) representatives.push_back(std::move(*r));

  try {
    return RecoveredGroup{FiniteGroup(comps.table, 0), std::move(representatives)};
  } catch (const Error& e) {
    throw Error(ErrorKind::NotGroupLike, std::string("component table is not a group: ") + e.what());
  }
}

Decision decide_isomorphism(const AlgebraBasis& a, double p, const AlgebraBasis& b, double q) {
  Decision d{Verdict::Distinct, recover_group(a, p), recover_group(b, q), std::nullopt};
  d.witness = is_isomorphic(d.first.group, d.second.group);
  if (!d.witness) return d;
  if (std::abs(p - q) <= kExponentTol) {
    d.verdict = Verdict::Isomorphic;
  } else if (std::abs(q - p / (p - 1.0)) <= kExponentTol) {
    d.verdict = Verdict::AntiIsomorphic;
  }
  return d;
}

DualityReport dual_antiisomorphism_check(const ConvolutionContext& ctx, std::size_t samples, std::uint64_t seed) {
  if (!(ctx.p > 1.0)) throw Error(ErrorKind::POutOfRange, "duality check needs p in (1, inf)");
  DualityReport report;
  report.p = ctx.p;
  report.dual_p = ctx.p / (ctx.p - 1.0);
  const LpContext lp = ctx.lp();
  const LpContext dual = lp.dual();

  report.transpose_inverts_translations = true;
  for (std::size_t s = 0; s < ctx.order(); ++s) {
    const IntMatrix l = left_regular_exact(ctx.group, s);
    IntMatrix lt(l.cols, l.rows);
    for (std::size_t i = 0; i < l.rows; ++i) {
      for (std::size_t j = 0; j < l.cols; ++j) lt(j, i) = l(i, j);
    }
    report.transpose_inverts_translations &= lt == left_regular_exact(ctx.group, ctx.group.inverse(s));
  }

  std::mt19937_64 rng(seed);
  report.worst_separation = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < samples; ++k) {
    const Matrix a = random_translation_combination(ctx, rng);
    const Matrix b = random_translation_combination(ctx, rng);
    DualitySample sample;
    sample.at_p = pnorm_estimate(Operator(lp, a));
    sample.transpose_at_q = pnorm_estimate(Operator(dual, a.transpose()));
    sample.bracket_separation = std::max(sample.at_p.lower, sample.transpose_at_q.lower) -
                                std::min(sample.at_p.upper, sample.transpose_at_q.upper);
    const Matrix lhs = naive_product(a, b).transpose();
    const Matrix rhs = naive_product(b.transpose(), a.transpose());
    sample.reversal_residual = (lhs - rhs).cwiseAbs().maxCoeff();
    report.worst_separation = std::max(report.worst_separation, sample.bracket_separation);
    report.worst_reversal = std::max(report.worst_reversal, sample.reversal_residual);
    report.samples.push_back(std::move(sample));
  }
  report.passed = report.transpose_inverts_translations && report.worst_separation <= kDualityOverlapTol &&
                  report.worst_reversal == 0.0;
  return report;
}

DegeneracyReport p2_degeneracy_demo(std::size_t samples, std::uint64_t seed) {
  DegeneracyReport report;
  const ConvolutionContext cyclic(make_cyclic(4), 2.0);
  const ConvolutionContext klein(make_direct_product(make_cyclic(2), make_cyclic(2)), 2.0);
  const AlgebraBasis cv_cyclic = convolver_algebra(cyclic);
  const AlgebraBasis cv_klein = convolver_algebra(klein);

  // Character tables as unitary matrices, column k holding the k-th
  // character. Character k of Z4 is matched with character k of Z2 x Z2
  // (k = 2 a + b <-> (a, b)); the trivial characters correspond.
  Matrix u_cyclic(4, 4), u_klein(4, 4);
  for (Index x = 0; x < 4; ++x) {
    for (Index k = 0; k < 4; ++k) {
      u_cyclic(x, k) = std::polar(0.5, std::numbers::pi / 2.0 * static_cast<double>((x * k) % 4));
      const int pairing = static_cast<int>((x / 2) * (k / 2) + (x % 2) * (k % 2));
      u_klein(x, k) = pairing % 2 == 0 ? 0.5 : -0.5;
    }
  }
  double off_diagonal = 0.0;
  auto transfer = [&](const Matrix& a) {
    Matrix d = u_cyclic.adjoint() * a * u_cyclic;
    off_diagonal = std::max(off_diagonal, (d - Matrix(d.diagonal().asDiagonal())).cwiseAbs().maxCoeff());
    return Matrix(u_klein * d.diagonal().asDiagonal() * u_klein.adjoint());
  };

  report.image_in_target = true;
  for (const auto& b : cv_cyclic.elements()) {
    report.image_in_target &= algebra_membership(cv_klein, transfer(b)).has_value();
  }
  for (const auto& a : cv_cyclic.elements()) {
    for (const auto& b : cv_cyclic.elements()) {
      report.multiplicativity_residual = std::max(
          report.multiplicativity_residual, (transfer(a * b) - transfer(a) * transfer(b)).cwiseAbs().maxCoeff());
    }
  }

  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const Matrix a = random_translation_combination(cyclic, rng);
    const Matrix image = transfer(a);
    Eigen::ComplexEigenSolver<Matrix> solver(image, false);
    const double radius = solver.eigenvalues().cwiseAbs().maxCoeff();
    const double norm_a = spectral_norm(a);
    report.norm_agreement = std::max({report.norm_agreement, std::abs(norm_a - spectral_norm(image)),
                                      std::abs(norm_a - radius)});
    ++report.norm_samples;
  }

  const Matrix generator = left_regular(cyclic, 1).matrix;
  report.cyclic_generator_spectrum = sorted_eigenvalues(generator);
  report.klein_involution_spectrum = sorted_eigenvalues(left_regular(klein, 1).matrix);
  const Matrix generator_image = transfer(generator);
  report.generator_image_is_generalized_permutation = true;
  for (Index y = 0; y < 4; ++y) {
    if ((generator_image.col(y).cwiseAbs().array() > 1e-9).count() != 1) {
      report.generator_image_is_generalized_permutation = false;
    }
  }

  try {
    (void)unitary_group_enumerate(cv_cyclic, 2.0);
  } catch (const Error& e) {
    report.enumeration_refused_at_p2 = e.kind() == ErrorKind::P2Unsupported;
  }

  const ConvolutionContext cyclic3(make_cyclic(4), 3.0);
  const ConvolutionContext klein3(make_direct_product(make_cyclic(2), make_cyclic(2)), 3.0);
  report.verdict_at_p3 = decide_isomorphism(convolver_algebra(cyclic3), 3.0, convolver_algebra(klein3), 3.0).verdict;

  const std::vector<complex> expected_cyclic{{-1, 0}, {0, -1}, {0, 1}, {1, 0}};
  const std::vector<complex> expected_klein{{-1, 0}, {-1, 0}, {1, 0}, {1, 0}};
  report.passed = off_diagonal < kMultiplicativityTol && report.image_in_target &&
                  report.multiplicativity_residual < kMultiplicativityTol &&
                  report.norm_agreement < kNormAgreementTol && report.cyclic_generator_spectrum == expected_cyclic &&
                  report.klein_involution_spectrum == expected_klein &&
                  !report.generator_image_is_generalized_permutation && report.enumeration_refused_at_p2 &&
                  report.verdict_at_p3 == Verdict::Distinct;
  return report;
}

}  // namespace lpgroup
