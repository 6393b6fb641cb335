#include "lpgroup/group.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <string>

#include "lpgroup/error.hpp"

namespace lpgroup {

FiniteGroup::FiniteGroup(std::vector<std::vector<std::size_t>> table, std::size_t identity)
    : table_(std::move(table)), identity_(identity) {
  const std::size_t n = table_.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "group must have at least one element");
  if (identity_ >= n) throw Error(ErrorKind::InvalidArgument, "identity index out of range");
  for (const auto& row : table_) {
    if (row.size() != n) throw Error(ErrorKind::InvalidArgument, "table is not square");
    if (!is_permutation(row)) throw Error(ErrorKind::InvalidArgument, "table row is not a permutation");
  }
  for (std::size_t b = 0; b < n; ++b) {
    std::vector<std::size_t> column(n);
    for (std::size_t a = 0; a < n; ++a) column[a] = table_[a][b];
    if (!is_permutation(column)) {
      throw Error(ErrorKind::InvalidArgument, "table column is not a permutation");
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (table_[identity_][x] != x || table_[x][identity_] != x) {
      throw Error(ErrorKind::InvalidArgument, "identity element does not act trivially");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab = table_[a][b];
      for (std::size_t c = 0; c < n; ++c) {
        if (table_[ab][c] != table_[a][table_[b][c]]) {
          throw Error(ErrorKind::InvalidArgument, "table is not associative");
        }
      }
    }
  }
  // A Latin square with identity has a unique right inverse per row; it is
  // two-sided by associativity.
  inverses_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto& row = table_[a];
    inverses_[a] = static_cast<std::size_t>(std::find(row.begin(), row.end(), identity_) - row.begin());
    if (table_[inverses_[a]][a] != identity_) {
      throw Error(ErrorKind::InvalidArgument, "element has no two-sided inverse");
    }
  }
}

std::size_t FiniteGroup::element_order(std::size_t a) const {
  std::size_t k = 1;
  for (std::size_t x = a; x != identity_; x = table_[x][a]) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order(); ++a) {
    for (std::size_t b = a + 1; b < order(); ++b) {
      if (table_[a][b] != table_[b][a]) return false;
    }
  }
  return true;
}

Permutation FiniteGroup::left_translation(std::size_t s) const {
  return Permutation(table_[s]);
}

Permutation FiniteGroup::right_translation(std::size_t s) const {
  std::vector<std::size_t> images(order());
  const std::size_t s_inv = inverses_[s];
  for (std::size_t x = 0; x < order(); ++x) images[x] = table_[x][s_inv];
  return Permutation(std::move(images));
}

std::vector<std::size_t> FiniteGroup::order_profile() const {
  std::vector<std::size_t> profile(order());
  for (std::size_t a = 0; a < order(); ++a) profile[a] = element_order(a);
  std::sort(profile.begin(), profile.end());
  return profile;
}

FiniteGroup make_cyclic(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "cyclic group order must be positive");
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  }
  return FiniteGroup(std::move(table), 0);
}

FiniteGroup make_dihedral(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "dihedral parameter must be positive");
  if (n > 32) throw Error(ErrorKind::Budget, "dihedral group larger than order 64");
  const std::size_t order = 2 * n;
  std::vector<std::vector<std::size_t>> table(order, std::vector<std::size_t>(order));
  // (r^a s^i)(r^b s^j) = r^{a + (-1)^i b} s^{i+j}
  for (std::size_t x = 0; x < order; ++x) {
    const std::size_t a = x % n, i = x / n;
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t b = y % n, j = y / n;
      const std::size_t rot = i == 0 ? (a + b) % n : (a + n - b) % n;
      table[x][y] = rot + n * ((i + j) % 2);
    }
  }
  return FiniteGroup(std::move(table), 0);
}

FiniteGroup make_symmetric(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "symmetric group degree must be positive");
  if (n > 5) throw Error(ErrorKind::Budget, "symmetric group degree above 5");
  std::vector<std::vector<std::size_t>> elements;
  std::vector<std::size_t> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = i;
  do {
    elements.push_back(images);
  } while (std::next_permutation(images.begin(), images.end()));

  const std::size_t order = elements.size();
  std::vector<std::vector<std::size_t>> table(order, std::vector<std::size_t>(order));
  std::vector<std::size_t> composed(n);
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      for (std::size_t i = 0; i < n; ++i) composed[i] = elements[a][elements[b][i]];
      const auto it = std::lower_bound(elements.begin(), elements.end(), composed);
      table[a][b] = static_cast<std::size_t>(it - elements.begin());
    }
  }
  return FiniteGroup(std::move(table), 0);
}

FiniteGroup make_quaternion() {
  // Units 1, i, j, k; unit_product[u][v] = (sign, unit) of u*v.
  constexpr std::array<std::array<std::pair<int, std::size_t>, 4>, 4> unit_product{{
      {{{1, 0}, {1, 1}, {1, 2}, {1, 3}}},
      {{{1, 1}, {-1, 0}, {1, 3}, {-1, 2}}},
      {{{1, 2}, {-1, 3}, {-1, 0}, {1, 1}}},
      {{{1, 3}, {1, 2}, {-1, 1}, {-1, 0}}},
  }};
  std::vector<std::vector<std::size_t>> table(8, std::vector<std::size_t>(8));
  for (std::size_t x = 0; x < 8; ++x) {
    for (std::size_t y = 0; y < 8; ++y) {
      const auto [sign, unit] = unit_product[x / 2][y / 2];
      const bool negative = ((x % 2) + (y % 2) + (sign < 0 ? 1 : 0)) % 2 == 1;
      table[x][y] = 2 * unit + (negative ? 1 : 0);
    }
  }
  return FiniteGroup(std::move(table), 0);
}

FiniteGroup make_direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t m = h.order();
  const std::size_t order = g.order() * m;
  if (order > 4096) throw Error(ErrorKind::Budget, "direct product too large");
  std::vector<std::vector<std::size_t>> table(order, std::vector<std::size_t>(order));
  for (std::size_t x = 0; x < order; ++x) {
    for (std::size_t y = 0; y < order; ++y) {
      table[x][y] = g.product(x / m, y / m) * m + h.product(x % m, y % m);
    }
  }
  return FiniteGroup(std::move(table), g.identity() * m + h.identity());
}

FiniteGroup relabel(const FiniteGroup& g, const Permutation& r) {
  if (r.size() != g.order()) throw Error(ErrorKind::InvalidArgument, "relabelling has wrong size");
  std::vector<std::vector<std::size_t>> table(g.order(), std::vector<std::size_t>(g.order()));
  for (std::size_t a = 0; a < g.order(); ++a) {
    for (std::size_t b = 0; b < g.order(); ++b) table[r(a)][r(b)] = r(g.product(a, b));
  }
  return FiniteGroup(std::move(table), r(g.identity()));
}

GroupIso GroupIso::inverse() const {
  GroupIso inv{std::vector<std::size_t>(map.size())};
  for (std::size_t x = 0; x < map.size(); ++x) inv.map[map[x]] = x;
  return inv;
}

GroupIso GroupIso::compose(const GroupIso& outer, const GroupIso& inner) {
  GroupIso out{std::vector<std::size_t>(inner.map.size())};
  for (std::size_t x = 0; x < inner.map.size(); ++x) out.map[x] = outer.map[inner.map[x]];
  return out;
}

bool verify_iso(const FiniteGroup& source, const FiniteGroup& target, const GroupIso& iso) {
  if (source.order() != target.order() || iso.map.size() != source.order()) return false;
  if (!is_permutation(iso.map)) return false;
  for (std::size_t a = 0; a < source.order(); ++a) {
    for (std::size_t b = 0; b < source.order(); ++b) {
      if (iso.map[source.product(a, b)] != target.product(iso.map[a], iso.map[b])) return false;
    }
  }
  return true;
}

namespace {

constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

}  // namespace

std::vector<std::size_t> generating_set(const FiniteGroup& g) {
  std::vector<std::size_t> by_order(g.order());
  for (std::size_t a = 0; a < g.order(); ++a) by_order[a] = a;
  std::stable_sort(by_order.begin(), by_order.end(), [&](std::size_t a, std::size_t b) {
    return g.element_order(a) > g.element_order(b);
  });

  std::vector<std::size_t> gens;
  std::vector<bool> in_subgroup(g.order(), false);
  in_subgroup[g.identity()] = true;
  for (std::size_t x : by_order) {
    if (in_subgroup[x]) continue;
    gens.push_back(x);
    std::deque<std::size_t> queue;
    for (std::size_t y = 0; y < g.order(); ++y) {
      if (in_subgroup[y]) queue.push_back(y);
    }
    while (!queue.empty()) {
      const std::size_t y = queue.front();
      queue.pop_front();
      for (std::size_t s : gens) {
        const std::size_t z = g.product(s, y);
        if (!in_subgroup[z]) {
          in_subgroup[z] = true;
          queue.push_back(z);
        }
      }
    }
  }
  return gens;
}

namespace {

// Extends `map` over the subgroup generated by the first `count` generators
// by map(s y) = map(s) map(y). Returns false on a conflict or a collision.
bool extend(const FiniteGroup& g, const FiniteGroup& h, const std::vector<std::size_t>& gens,
            const std::vector<std::size_t>& images, std::size_t count, std::vector<std::size_t>& map) {
  std::fill(map.begin(), map.end(), kUnset);
  std::vector<bool> used(h.order(), false);
  map[g.identity()] = h.identity();
  used[h.identity()] = true;
  std::deque<std::size_t> queue{g.identity()};
  while (!queue.empty()) {
    const std::size_t y = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t z = g.product(gens[k], y);
      const std::size_t image = h.product(images[k], map[y]);
      if (map[z] == kUnset) {
        if (used[image]) return false;
        map[z] = image;
        used[image] = true;
        queue.push_back(z);
      } else if (map[z] != image) {
        return false;
      }
    }
  }
  return true;
}

bool search(const FiniteGroup& g, const FiniteGroup& h, const std::vector<std::size_t>& gens,
            std::vector<std::size_t>& images, std::size_t depth, std::vector<std::size_t>& map) {
  if (depth == gens.size()) {
    return extend(g, h, gens, images, depth, map) && verify_iso(g, h, GroupIso{map});
  }
  const std::size_t wanted = g.element_order(gens[depth]);
  for (std::size_t candidate = 0; candidate < h.order(); ++candidate) {
    if (h.element_order(candidate) != wanted) continue;
    images[depth] = candidate;
    if (!extend(g, h, gens, images, depth + 1, map)) continue;
    if (search(g, h, gens, images, depth + 1, map)) return true;
  }
  return false;
}

}  // namespace

std::optional<GroupIso> is_isomorphic(const FiniteGroup& g, const FiniteGroup& h,
                                      std::size_t order_bound) {
  if (g.order() > order_bound || h.order() > order_bound) {
    throw Error(ErrorKind::Budget, "group order " + std::to_string(std::max(g.order(), h.order())) +
                                       " exceeds isomorphism search bound " + std::to_string(order_bound));
  }
  if (g.order() != h.order()) return std::nullopt;
  if (g.order_profile() != h.order_profile()) return std::nullopt;
  if (g.is_abelian() != h.is_abelian()) return std::nullopt;

  const std::vector<std::size_t> gens = generating_set(g);
  std::vector<std::size_t> images(gens.size(), kUnset);
  std::vector<std::size_t> map(g.order(), kUnset);
  if (!search(g, h, gens, images, 0, map)) return std::nullopt;
  return GroupIso{map};
}

}  // namespace lpgroup
