#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lpgroup/permutation.hpp"

namespace lpgroup {

/// A finite group given by its multiplication table.
///
/// `product(a, b)` is the element `ab`. The constructor checks the Latin
/// square property, associativity, the identity and inverses exactly, so a
/// constructed value is always a group.
class FiniteGroup {
 public:
  FiniteGroup(std::vector<std::vector<std::size_t>> table, std::size_t identity);

  std::size_t order() const noexcept { return table_.size(); }
  std::size_t identity() const noexcept { return identity_; }
  std::size_t product(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverses_[a]; }
  std::size_t element_order(std::size_t a) const;
  bool is_abelian() const;

  const std::vector<std::vector<std::size_t>>& table() const noexcept { return table_; }

  /// x -> s x
  Permutation left_translation(std::size_t s) const;
  /// x -> x s^{-1}
  Permutation right_translation(std::size_t s) const;

  /// Sorted multiset of element orders.
  std::vector<std::size_t> order_profile() const;

  friend bool operator==(const FiniteGroup&, const FiniteGroup&) = default;

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_;
  std::vector<std::size_t> inverses_;
};

FiniteGroup make_cyclic(std::size_t n);
/// Dihedral group of the regular n-gon, order 2n. Elements r^k s^j are
/// indexed k + n*j.
FiniteGroup make_dihedral(std::size_t n);
/// Symmetric group on n letters, elements in lexicographic order of their
/// image arrays (identity first). Limited to n <= 5.
FiniteGroup make_symmetric(std::size_t n);
/// Quaternion group Q8 with elements 1, -1, i, -i, j, -j, k, -k.
FiniteGroup make_quaternion();
/// G x H with (g, h) indexed g * |H| + h.
FiniteGroup make_direct_product(const FiniteGroup& g, const FiniteGroup& h);
/// The same group with elements renamed: new index of old element x is
/// relabel(x).
FiniteGroup relabel(const FiniteGroup& g, const Permutation& relabel);

/// A generating set chosen greedily by decreasing element order.
std::vector<std::size_t> generating_set(const FiniteGroup& g);

/// A bijection `map` from the elements of one group onto another with
/// map(xy) = map(x) map(y).
struct GroupIso {
  std::vector<std::size_t> map;

  GroupIso inverse() const;
  /// (outer o inner)(x) = outer(inner(x))
  static GroupIso compose(const GroupIso& outer, const GroupIso& inner);
};

/// True iff `iso` is a bijective homomorphism from `source` onto `target`.
bool verify_iso(const FiniteGroup& source, const FiniteGroup& target, const GroupIso& iso);

inline constexpr std::size_t kDefaultIsoOrderBound = 64;

/// Exact isomorphism test: order and element-order profile pruning, then
/// backtracking over the images of a generating set.
std::optional<GroupIso> is_isomorphic(const FiniteGroup& g, const FiniteGroup& h,
                                      std::size_t order_bound = kDefaultIsoOrderBound);

}  // namespace lpgroup
