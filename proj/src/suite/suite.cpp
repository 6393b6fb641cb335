#include "suite/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <future>
#include <iostream>
#include <map>
#include <numbers>
#include <random>

#include "lpgroup/error.hpp"
#include "lpgroup/reconstruction.hpp"
#include "suite/oracles.hpp"

namespace lpgroup::suite {

namespace {

std::string printf_string(const char* format, ...) {
  char buffer[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof buffer, format, args);
  va_end(args);
  return buffer;
}

std::mt19937_64 criterion_rng(std::uint64_t seed, int id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id)};
  return std::mt19937_64(seq);
}

constexpr double kExponents[] = {1.2, 1.5, 3.0, 4.0};

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double pick_exponent(std::mt19937_64& rng) { return kExponents[pick(rng, 0, 3)]; }

std::vector<double> random_weights(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> dist(0.25, 4.0);
  std::vector<double> w(n);
  for (auto& x : w) x = dist(rng);
  return w;
}

Permutation random_perm(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = i;
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(std::move(images));
}

MeasurableFunction random_unimodular(std::mt19937_64& rng, const FiniteMeasureAlgebra& algebra) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::vector<complex> values(algebra.atoms());
  for (auto& v : values) v = std::polar(1.0, angle(rng));
  return MeasurableFunction(algebra, std::move(values));
}

Vector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complex(normal(rng), normal(rng));
  return v;
}

CriterionResult reconstruction_rigidity(std::uint64_t) {
  CriterionResult r{1, "reconstruction rigidity", false, {}};
  const auto start = std::chrono::steady_clock::now();
  const auto groups = zoo();
  std::vector<std::future<std::vector<std::string>>> jobs;
  for (const auto& [name, g] : groups) {
    jobs.push_back(std::async(std::launch::async, [&name, &g] {
      std::vector<std::string> failures;
      for (double p : kExponents) {
        try {
          const ConvolutionContext ctx(g, p);
          const RecoveredGroup rec = recover_group(convolver_algebra(ctx), p);
          const auto iso = is_isomorphic(rec.group, g);
          if (!iso || !verify_iso(rec.group, g, *iso)) failures.push_back(printf_string("%s at p=%g", name.c_str(), p));
        } catch (const Error& e) {
          failures.push_back(printf_string("%s at p=%g: %s", name.c_str(), p, e.what()));
        }
      }
      return failures;
    }));
  }
  std::vector<std::string> failures;
  for (auto& job : jobs) {
    for (auto& f : job.get()) failures.push_back(std::move(f));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << printf_string("criterion 1 runtime %.2f s\n", seconds);
  const std::size_t total = groups.size() * std::size(kExponents);
  r.passed = failures.empty() && seconds < 60.0;
  r.detail = printf_string("%zu/%zu recoveries isomorphic with verified witness", total - failures.size(), total);
  if (seconds >= 60.0) r.detail += "; runtime limit of 60 s exceeded";
  for (const auto& f : failures) r.detail += "; failed " + f;
  return r;
}

CriterionResult p2_degeneracy(std::uint64_t seed) {
  CriterionResult r{2, "p=2 degeneracy", false, {}};
  const DegeneracyReport d = p2_degeneracy_demo(100, seed);
  r.passed = d.passed && d.multiplicativity_residual < 1e-12 && d.norm_agreement < 1e-9 && d.norm_samples == 100 &&
             d.verdict_at_p3 == Verdict::Distinct;
  r.detail = printf_string("multiplicativity residual %.3g, norm agreement %.3g over %zu samples, p=3 verdict %s",
                           d.multiplicativity_residual, d.norm_agreement, d.norm_samples,
                           std::string(to_string(d.verdict_at_p3)).c_str());
  return r;
}

CriterionResult lamperti_round_trip(std::uint64_t seed) {
  CriterionResult r{3, "Lamperti round-trip", false, {}};
  auto rng = criterion_rng(seed, 3);
  std::size_t perm_failures = 0;
  double worst_phase = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = pick(rng, 1, 8);
    const LpContext ctx(FiniteMeasureAlgebra(random_weights(rng, n)), pick_exponent(rng));
    const LampertiForm form(random_unimodular(rng, ctx.algebra()), BooleanAutomorphism(ctx.algebra(), random_perm(rng, n)));
    const LampertiForm back = lamperti_decompose(compose(form, ctx));
    if (!(back.phi == form.phi)) ++perm_failures;
    for (std::size_t x = 0; x < n; ++x) worst_phase = std::max(worst_phase, std::abs(back.f(x) - form.f(x)));
  }
  bool rotation_rejected = false;
  {
    const double c = std::sqrt(0.5);
    Matrix rotation(2, 2);
    rotation << c, -c, c, c;
    try {
      lamperti_decompose(Operator(LpContext(FiniteMeasureAlgebra::counting(2), 2.0), rotation));
    } catch (const Error& e) {
      rotation_rejected = e.kind() == ErrorKind::P2Unsupported;
    }
  }
  r.passed = perm_failures == 0 && worst_phase <= 1e-12 && rotation_rejected;
  r.detail = printf_string("1000 trials, %zu permutation mismatches, max phase error %.3g, p=2 rotation %s",
                           perm_failures, worst_phase, rotation_rejected ? "rejected" : "NOT rejected");
  return r;
}

CriterionResult distance_formulas(std::uint64_t seed) {
  CriterionResult r{4, "distance formulas", false, {}};
  auto rng = criterion_rng(seed, 4);
  std::size_t same = 0, same_ok = 0, differ = 0, differ_ok = 0, witness_ok = 0;
  double norm_lo = INFINITY, norm_hi = 0.0, ratio_lo = INFINITY, ratio_hi = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = pick(rng, 2, 6);
    const LpContext ctx(FiniteMeasureAlgebra(random_weights(rng, n)), pick_exponent(rng));
    const BooleanAutomorphism phi(ctx.algebra(), random_perm(rng, n));
    Permutation psi_perm = phi.perm();
    if (trial % 2 == 1) {
      while (psi_perm == phi.perm()) psi_perm = random_perm(rng, n);
    }
    const LampertiForm a(random_unimodular(rng, ctx.algebra()), phi);
    const LampertiForm b(random_unimodular(rng, ctx.algebra()), BooleanAutomorphism(ctx.algebra(), psi_perm));
    const double closed = lamperti_distance(a, b, ctx);
    const Operator diff(ctx, compose(a, ctx).matrix - compose(b, ctx).matrix);
    const NormEstimate est = pnorm_estimate(diff);
    const bool match = std::abs(closed - est.lower) <= 1e-6 && est.lower <= est.upper && closed <= est.upper + 1e-6;
    if (trial % 2 == 0) {
      ++same;
      same_ok += match;
      continue;
    }
    ++differ;
    differ_ok += match;
    norm_lo = std::min(norm_lo, est.lower);
    norm_hi = std::max(norm_hi, est.lower);
    const Vector xi = norm_witness_disjoint(a, b, ctx);
    const double ratio = ctx.norm(diff.matrix * xi) / ctx.norm(xi);
    ratio_lo = std::min(ratio_lo, ratio);
    ratio_hi = std::max(ratio_hi, ratio);
    witness_ok += std::abs(ratio - 2.0) <= 1e-12;
  }
  r.passed = same_ok == same && differ_ok == differ && witness_ok == differ;
  r.detail = printf_string(
      "equal permutations: %zu/%zu match; distinct permutations: %zu/%zu match closed form 2, numeric norm in "
      "[%.6f, %.6f], %zu/%zu witness ratios equal 2 (observed [%.6f, %.6f])",
      same_ok, same, differ_ok, differ, norm_lo, norm_hi, witness_ok, differ, ratio_lo, ratio_hi);
  return r;
}

CriterionResult radon_nikodym(std::uint64_t seed) {
  CriterionResult r{5, "Radon-Nikodym", false, {}};
  auto rng = criterion_rng(seed, 5);
  std::size_t ratio_mismatch = 0, level_set_mismatch = 0;
  double worst_integral = 0.0, worst_chain = 0.0, worst_layer_cake = 0.0;
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = pick(rng, 1, 8);
    const FiniteMeasureAlgebra algebra(random_weights(rng, n));
    const Valuation mu = Valuation::of(algebra);
    const Valuation sigma(algebra, random_weights(rng, n));
    const Valuation rho(algebra, random_weights(rng, n));

    const MeasurableFunction d = rn_derivative(sigma, mu);
    const auto ratio = oracle::atomic_ratio(sigma, mu);
    for (std::size_t x = 0; x < n; ++x) ratio_mismatch += d(x) != complex(ratio[x], 0.0);

    auto cuts = ratio;
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> probes{cuts.front() / 2, cuts.back() * 2};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (cuts[i] < cuts[i + 1]) probes.push_back((cuts[i] + cuts[i + 1]) / 2);
    }
    for (double t : probes) level_set_mismatch += rn_level_set(sigma, mu, t) != oracle::level_set_by_subsets(sigma, mu, t);

    std::vector<complex> values(n);
    for (auto& v : values) v = complex(normal(rng), normal(rng));
    const MeasurableFunction f(algebra, values);
    worst_integral = std::max(worst_integral, std::abs(integrate(f, sigma) - integrate(f * d, mu)));
    worst_layer_cake = std::max(worst_layer_cake, std::abs(integrate(f, mu) - integrate_layer_cake(f, mu)));
    worst_chain = std::max(worst_chain,
                           rn_chain_rules(mu, sigma, rho, BooleanAutomorphism(algebra, random_perm(rng, n))).max_deviation());
  }
  r.passed = ratio_mismatch == 0 && level_set_mismatch == 0 && worst_integral <= 1e-12 && worst_chain <= 1e-12 &&
             worst_layer_cake <= 1e-12;
  r.detail = printf_string(
      "500 algebras, %zu atomic-ratio mismatches, %zu level-set mismatches, integral identity %.3g, layer cake %.3g, "
      "chain and push rules %.3g",
      ratio_mismatch, level_set_mismatch, worst_integral, worst_layer_cake, worst_chain);
  return r;
}

CriterionResult clarkson_dichotomy(std::uint64_t seed) {
  CriterionResult r{6, "Clarkson dichotomy", false, {}};
  auto rng = criterion_rng(seed, 6);
  std::size_t failures = 0, rejected = 0;
  double worst_disjoint = 0.0, smallest_overlap = INFINITY;
  for (double p : {1.5, 4.0}) {
    const double sign = p > 2 ? 1.0 : -1.0;
    for (int trial = 0; trial < 500; ++trial) {
      const std::size_t n = pick(rng, 2, 8);
      const LpContext ctx(FiniteMeasureAlgebra(random_weights(rng, n)), p);
      Vector xi = random_vector(rng, n);
      Vector eta = random_vector(rng, n);
      if (trial % 2 == 0) {
        // split the atoms between the two vectors, each side nonempty
        const std::size_t cut = pick(rng, 1, n - 1);
        const Permutation order = random_perm(rng, n);
        for (std::size_t i = 0; i < n; ++i) {
          if (i < cut) eta(static_cast<Eigen::Index>(order(i))) = 0.0;
          else xi(static_cast<Eigen::Index>(order(i))) = 0.0;
        }
        const double gap = clarkson_gap(xi, eta, ctx);
        worst_disjoint = std::max(worst_disjoint, std::abs(gap));
        failures += std::abs(gap) > 1e-10;
        continue;
      }
      // degenerate draws: the pointwise product is negligible
      while ((xi.array().abs() * eta.array().abs()).maxCoeff() < 1e-2) {
        ++rejected;
        xi = random_vector(rng, n);
        eta = random_vector(rng, n);
      }
      const double gap = clarkson_gap(xi, eta, ctx);
      smallest_overlap = std::min(smallest_overlap, std::abs(gap));
      failures += !(sign * gap > 1e-6);
    }
  }
  r.passed = failures == 0;
  r.detail = printf_string(
      "1000 pairs, %zu failures, disjoint |gap| <= %.3g, overlapping |gap| >= %.3g with correct sign, %zu degenerate "
      "draws rejected",
      failures, worst_disjoint, smallest_overlap, rejected);
  return r;
}

CriterionResult algebra_structure(std::uint64_t) {
  CriterionResult r{7, "algebra structure", false, {}};
  std::vector<std::string> failures;
  for (const auto& [name, g] : zoo()) {
    const auto cv = convolver_exact_basis(g);
    const auto pf = pseudofunction_exact_basis(g);
    if (cv.size() != g.order() || exact_span_rank(cv) != g.order() || !exact_span_equal(cv, pf)) {
      failures.push_back(name + " (exact)");
      continue;
    }
    for (double p : kExponents) {
      const ConvolutionContext ctx(g, p);
      const AlgebraBasis a = convolver_algebra(ctx);
      bool ok = a.dim() == g.order();
      for (std::size_t s = 0; s < g.order() && ok; ++s) ok = algebra_membership(a, left_regular(ctx, s).matrix).has_value();
      if (!ok) failures.push_back(printf_string("%s at p=%g", name.c_str(), p));
    }
  }
  r.passed = failures.empty();
  r.detail = printf_string("%zu zoo groups: dim CV = |G| and CV = PF exactly at every exponent", zoo().size());
  for (const auto& f : failures) r.detail += "; failed " + f;
  return r;
}

CriterionResult dual_antiisomorphism(std::uint64_t seed) {
  CriterionResult r{8, "dual anti-isomorphism", false, {}};
  std::vector<std::string> failures;
  double worst_separation = -INFINITY;
  std::uint64_t group_seed = seed;
  for (const auto& [name, g] : zoo()) {
    const DualityReport report = dual_antiisomorphism_check(ConvolutionContext(g, 3.0), 20, group_seed++);
    worst_separation = std::max(worst_separation, report.worst_separation);
    if (!report.passed) failures.push_back(name + " (norm brackets or transpose)");
    const Decision d = decide_isomorphism(convolver_algebra(ConvolutionContext(g, 3.0)), 3.0,
                                          convolver_algebra(ConvolutionContext(g, 1.5)), 1.5);
    if (d.verdict != Verdict::AntiIsomorphic) {
      failures.push_back(name + " verdict " + std::string(to_string(d.verdict)));
    }
  }
  r.passed = failures.empty();
  r.detail = printf_string("%zu zoo groups x 20 samples at p=3, worst bracket separation %.3g, all verdicts checked",
                           zoo().size(), worst_separation);
  for (const auto& f : failures) r.detail += "; failed " + f;
  return r;
}

CriterionResult norm_engine_honesty(std::uint64_t seed) {
  CriterionResult r{9, "norm engine honesty", false, {}};
  auto rng = criterion_rng(seed, 9);
  std::uniform_real_distribution<double> entry(0.0, 1.0);
  std::map<double, std::vector<Eigen::Matrix3d>> by_exponent;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Matrix3d a;
    for (Eigen::Index i = 0; i < 9; ++i) a(i) = entry(rng);
    by_exponent[kExponents[trial % 4]].push_back(a);
  }
  std::size_t disagreements = 0, inverted = 0;
  double worst_gap = 0.0;
  for (const auto& [p, matrices] : by_exponent) {
    const auto grid = oracle::nonnegative_sphere_grid(p, 1e-3);
    const LpContext ctx(FiniteMeasureAlgebra::counting(3), p);
    for (const auto& a : matrices) {
      const Operator op(ctx, a.cast<complex>());
      const NormEstimate boyd = boyd_iterate(op);
      const NormEstimate general = pnorm_estimate(op);
      const double oracle_value = oracle::grid_search_norm(a, p, grid);
      worst_gap = std::max(worst_gap, std::abs(boyd.lower - oracle_value));
      disagreements += std::abs(boyd.lower - oracle_value) > 1e-3;
      inverted += boyd.lower > boyd.upper || general.lower > general.upper || oracle_value > boyd.upper;
    }
  }
  r.passed = disagreements == 0 && inverted == 0;
  r.detail = printf_string("100 matrices, max |Boyd - grid| %.3g, %zu disagreements, %zu inverted sandwiches",
                           worst_gap, disagreements, inverted);
  return r;
}

}  // namespace

std::vector<std::pair<std::string, FiniteGroup>> zoo() {
  std::vector<std::pair<std::string, FiniteGroup>> groups;
  for (std::size_t n = 1; n <= 8; ++n) groups.emplace_back("Z" + std::to_string(n), make_cyclic(n));
  groups.emplace_back("Z2xZ2", make_direct_product(make_cyclic(2), make_cyclic(2)));
  groups.emplace_back("Z2xZ4", make_direct_product(make_cyclic(2), make_cyclic(4)));
  groups.emplace_back("S3", make_symmetric(3));
  groups.emplace_back("D4", make_dihedral(4));
  groups.emplace_back("Q8", make_quaternion());
  return groups;
}

std::vector<double> zoo_exponents() { return {std::begin(kExponents), std::end(kExponents)}; }

CriterionResult run_criterion(int id, std::uint64_t seed) {
  using Runner = CriterionResult (*)(std::uint64_t);
  static constexpr Runner runners[] = {reconstruction_rigidity, p2_degeneracy,   lamperti_round_trip,
                                       distance_formulas,       radon_nikodym,   clarkson_dichotomy,
                                       algebra_structure,       dual_antiisomorphism, norm_engine_honesty};
  if (id < 1 || id > kCriteria) throw Error(ErrorKind::InvalidArgument, "criteria are numbered 1 to 9");
  try {
    return runners[id - 1](seed);
  } catch (const Error& e) {
    return {id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what()};
  }
}

std::vector<CriterionResult> run_all(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

std::string format_line(const CriterionResult& r) {
  return printf_string("criterion %d  %s  %s: ", r.id, r.passed ? "PASS" : "FAIL", r.name.c_str()) + r.detail;
}

}  // namespace lpgroup::suite
