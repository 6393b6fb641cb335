#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lpgroup/convolution.hpp"
#include "lpgroup/pnorm.hpp"

namespace lpgroup {

/// The quotient of a set of invertible isometries by "same permutation
/// part", with its multiplication table. Component 0 is the identity.
struct ComponentTable {
  std::vector<Permutation> perms;
  std::vector<std::vector<std::size_t>> table;
  /// component index of each input unitary
  std::vector<std::size_t> component_of;
};

/// Groups the unitaries by permutation part (identity first, the rest in
/// lexicographic order) and tabulates products. Throws NotGroupLike if the
/// classes are not closed under composition or miss the identity.
ComponentTable components(const std::vector<UnitaryClass>& unitaries);

/// The unique s with pi = l_s, namely s = pi(e). Throws NotRightInvariant if
/// pi fails to commute with some right translation.
std::size_t left_translation_match(const Permutation& pi, const ConvolutionContext& ctx);

struct RecoveredGroup {
  FiniteGroup group;
  /// representatives[i] is a unitary in component i
  std::vector<UnitaryClass> representatives;
};

/// pi_0 of the invertible isometries of span(A), as an abstract group.
RecoveredGroup recover_group(const AlgebraBasis& a, double p, const EnumerationLimits& limits = {});

enum class Verdict { Isomorphic, AntiIsomorphic, Distinct };
std::string_view to_string(Verdict v);

struct Decision {
  Verdict verdict = Verdict::Distinct;
  RecoveredGroup first;
  RecoveredGroup second;
  /// witness from first.group onto second.group, when they are isomorphic
  std::optional<GroupIso> witness;
};

inline constexpr double kExponentTol = 1e-12;

/// Isomorphic iff p = q and the recovered groups are isomorphic;
/// AntiIsomorphic iff q = p' and the groups are isomorphic; Distinct
/// otherwise.
Decision decide_isomorphism(const AlgebraBasis& a, double p, const AlgebraBasis& b, double q);

struct DualitySample {
  NormEstimate at_p;            // a on L^p
  NormEstimate transpose_at_q;  // a^T on L^{p'}
  /// max(lower) - min(upper) over the two brackets; <= 0 when they overlap
  double bracket_separation = 0.0;
  /// max |(ab)^T - b^T a^T| against a second random element b
  double reversal_residual = 0.0;
};

struct DualityReport {
  double p = 0.0;
  double dual_p = 0.0;
  std::vector<DualitySample> samples;
  double worst_separation = 0.0;
  double worst_reversal = 0.0;
  /// lambda(s)^T == lambda(s^{-1}) exactly for every s
  bool transpose_inverts_translations = false;
  bool passed = false;
};

inline constexpr double kDualityOverlapTol = 2e-6;

/// Random complex combinations a of left translations: the brackets for
/// ||a||_p and ||a^T||_{p'} overlap within kDualityOverlapTol and transpose
/// reverses products exactly.
DualityReport dual_antiisomorphism_check(const ConvolutionContext& ctx, std::size_t samples, std::uint64_t seed);

struct DegeneracyReport {
  /// eigenvalues of lambda(1) in Z4 and of an order-2 element of Z2 x Z2
  std::vector<complex> cyclic_generator_spectrum;
  std::vector<complex> klein_involution_spectrum;
  /// the character-matching map sends every basis element of CV_2(Z4) into
  /// CV_2(Z2 x Z2)
  bool image_in_target = false;
  double multiplicativity_residual = 0.0;  // over basis products
  double norm_agreement = 0.0;             // over random samples, 2->2 norms
  std::size_t norm_samples = 0;
  /// the image of lambda(1) is a unitary that is not gamma * lambda(t)
  bool generator_image_is_generalized_permutation = true;
  /// unitary_group_enumerate refuses p = 2 with P2Unsupported
  bool enumeration_refused_at_p2 = false;
  Verdict verdict_at_p3 = Verdict::Isomorphic;
  bool passed = false;
};

inline constexpr double kMultiplicativityTol = 1e-12;
inline constexpr double kNormAgreementTol = 1e-9;

/// CV_2(Z4) and CV_2(Z2 x Z2) are isometrically isomorphic through their
/// character tables, while the p = 3 procedure tells them apart.
DegeneracyReport p2_degeneracy_demo(std::size_t samples = 100, std::uint64_t seed = 2);

}  // namespace lpgroup
