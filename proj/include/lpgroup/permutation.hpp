#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace lpgroup {

/// A bijection of {0, ..., n-1}, stored as its image array.
///
/// Composition follows function notation: `(a * b)(x) == a(b(x))`.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> images);
  Permutation(std::initializer_list<std::size_t> images);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return images_.size(); }
  std::size_t operator()(std::size_t x) const { return images_[x]; }
  std::span<const std::size_t> images() const noexcept { return images_; }

  Permutation inverse() const;
  bool is_identity() const noexcept;

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

/// True iff `images` lists every index in [0, images.size()) exactly once.
bool is_permutation(std::span<const std::size_t> images);

}  // namespace lpgroup
