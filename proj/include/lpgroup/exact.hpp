#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace lpgroup {

/// A dense integer matrix, row-major.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  std::int64_t& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

/// One linear equation sum coeff * x_col = 0 with integer coefficients.
using SparseIntRow = std::vector<std::pair<std::size_t, std::int64_t>>;

/// Rank over the rationals of the given integer rows.
std::size_t exact_rank(const std::vector<std::vector<std::int64_t>>& rows);

/// Basis of the rational nullspace of the system, one primitive integer
/// vector per free column of the reduced row echelon form.
std::vector<std::vector<std::int64_t>> exact_nullspace(std::size_t columns, const std::vector<SparseIntRow>& rows);

/// Basis of {X : X M = M X for every M in `generators`}, computed exactly.
std::vector<IntMatrix> exact_commutant(const std::vector<IntMatrix>& generators);

/// Rank of the span of the matrices, each read as a vector of entries.
std::size_t exact_span_rank(const std::vector<IntMatrix>& matrices);

/// span(a) == span(b), decided exactly.
bool exact_span_equal(const std::vector<IntMatrix>& a, const std::vector<IntMatrix>& b);

}  // namespace lpgroup
