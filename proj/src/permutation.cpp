#include "lpgroup/permutation.hpp"

#include <numeric>
#include <string>

#include "lpgroup/error.hpp"

namespace lpgroup {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Budget: return "Budget";
    case ErrorKind::MismatchedAlgebras: return "MismatchedAlgebras";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::NotIsometry: return "NotIsometry";
    case ErrorKind::P2Unsupported: return "P2Unsupported";
    case ErrorKind::POutOfRange: return "POutOfRange";
    case ErrorKind::NotGeneralizedPermutation: return "NotGeneralizedPermutation";
    case ErrorKind::NotNonnegative: return "NotNonnegative";
    case ErrorKind::NotGroupLike: return "NotGroupLike";
    case ErrorKind::NotRightInvariant: return "NotRightInvariant";
    case ErrorKind::Malformed: return "Malformed";
  }
  return "Unknown";
}

bool is_permutation(std::span<const std::size_t> images) {
  std::vector<bool> seen(images.size(), false);
  for (std::size_t y : images) {
    if (y >= images.size() || seen[y]) return false;
    seen[y] = true;
  }
  return true;
}

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  if (!is_permutation(images_)) {
    throw Error(ErrorKind::InvalidArgument, "image array is not a permutation");
  }
}

Permutation::Permutation(std::initializer_list<std::size_t> images)
    : Permutation(std::vector<std::size_t>(images)) {}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> images(n);
  std::iota(images.begin(), images.end(), std::size_t{0});
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) inv[images_[x]] = x;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] != x) return false;
  }
  return true;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::InvalidArgument, "composing permutations of different sizes");
  }
  std::vector<std::size_t> images(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) images[x] = a(b(x));
  return Permutation(std::move(images));
}

}  // namespace lpgroup
