#include "lpgroup/exact.hpp"

#include <algorithm>
#include <map>

#include <gmpxx.h>

#include "lpgroup/error.hpp"

namespace lpgroup {

namespace {

using Row = std::vector<std::pair<std::size_t, mpq_class>>;  // sorted by column, no zeros

// row += factor * other
Row axpy(const Row& row, const mpq_class& factor, const Row& other) {
  Row out;
  out.reserve(row.size() + other.size());
  auto a = row.begin();
  auto b = other.begin();
  while (a != row.end() || b != other.end()) {
    if (b == other.end() || (a != row.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == row.end() || b->first < a->first) {
      out.emplace_back(b->first, factor * b->second);
      ++b;
    } else {
      mpq_class v = a->second + factor * b->second;
      if (v != 0) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  return out;
}

const mpq_class* find_entry(const Row& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& entry, std::size_t c) { return entry.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

// Reduced row echelon form maintained incrementally: every stored row has a
// leading 1 in its pivot column and zeros in all other pivot columns.
class Echelon {
 public:
  void insert(Row row) {
    for (const auto& [col, pivot_row] : pivots_) {
      if (const mpq_class* v = find_entry(row, col)) {
        const mpq_class factor = -*v;
        row = axpy(row, factor, pivot_row);
      }
    }
    if (row.empty()) return;
    const std::size_t col = row.front().first;
    const mpq_class lead = row.front().second;
    for (auto& entry : row) entry.second /= lead;
    for (auto& [other_col, other_row] : pivots_) {
      if (const mpq_class* v = find_entry(other_row, col)) {
        const mpq_class factor = -*v;
        other_row = axpy(other_row, factor, row);
      }
    }
    pivots_.emplace(col, std::move(row));
  }

  std::size_t rank() const { return pivots_.size(); }
  const std::map<std::size_t, Row>& pivots() const { return pivots_; }

 private:
  std::map<std::size_t, Row> pivots_;
};

Row to_row(const std::vector<std::pair<std::size_t, std::int64_t>>& entries) {
  std::map<std::size_t, mpq_class> merged;
  for (const auto& [col, v] : entries) merged[col] += mpq_class(static_cast<long>(v));
  Row row;
  for (auto& [col, v] : merged) {
    if (v != 0) row.emplace_back(col, std::move(v));
  }
  return row;
}

std::int64_t to_int64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw Error(ErrorKind::Budget, "nullspace entry exceeds 64-bit range");
  return z.get_si();
}

}  // namespace

std::size_t exact_rank(const std::vector<std::vector<std::int64_t>>& rows) {
  Echelon echelon;
  for (const auto& dense : rows) {
    std::vector<std::pair<std::size_t, std::int64_t>> entries;
    for (std::size_t c = 0; c < dense.size(); ++c) {
      if (dense[c] != 0) entries.emplace_back(c, dense[c]);
    }
    echelon.insert(to_row(entries));
  }
  return echelon.rank();
}

std::vector<std::vector<std::int64_t>> exact_nullspace(std::size_t columns, const std::vector<SparseIntRow>& rows) {
  Echelon echelon;
  for (const auto& r : rows) {
    for (const auto& [col, v] : r) {
      (void)v;
      if (col >= columns) throw Error(ErrorKind::InvalidArgument, "equation refers to a missing unknown");
    }
    echelon.insert(to_row(r));
  }

  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (echelon.pivots().count(free) != 0) continue;
    std::vector<mpq_class> v(columns);
    v[free] = 1;
    for (const auto& [col, row] : echelon.pivots()) {
      if (const mpq_class* entry = find_entry(row, free)) v[col] = -*entry;
    }
    mpz_class denominators = 1;
    for (const auto& x : v) denominators = lcm(denominators, mpz_class(x.get_den()));
    mpz_class content = 0;
    std::vector<mpz_class> scaled(columns);
    for (std::size_t i = 0; i < columns; ++i) {
      scaled[i] = mpz_class(v[i] * denominators);
      content = gcd(content, scaled[i]);
    }
    std::vector<std::int64_t> out(columns);
    for (std::size_t i = 0; i < columns; ++i) out[i] = to_int64(mpz_class(scaled[i] / content));
    basis.push_back(std::move(out));
  }
  return basis;
}

std::vector<IntMatrix> exact_commutant(const std::vector<IntMatrix>& generators) {
  if (generators.empty()) throw Error(ErrorKind::InvalidArgument, "commutant needs at least one matrix");
  const std::size_t n = generators.front().rows;
  for (const auto& m : generators) {
    if (m.rows != n || m.cols != n) throw Error(ErrorKind::InvalidArgument, "commutant of non-square matrices");
  }
  // Unknown X(i, j) is column i * n + j; equation (XM - MX)(i, j) = 0.
  std::vector<SparseIntRow> equations;
  for (const auto& m : generators) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        SparseIntRow eq;
        for (std::size_t k = 0; k < n; ++k) {
          if (m(k, j) != 0) eq.emplace_back(i * n + k, m(k, j));
          if (m(i, k) != 0) eq.emplace_back(k * n + j, -m(i, k));
        }
        if (!eq.empty()) equations.push_back(std::move(eq));
      }
    }
  }
  std::vector<IntMatrix> basis;
  for (const auto& v : exact_nullspace(n * n, equations)) {
    IntMatrix x(n, n);
    x.data = v;
    basis.push_back(std::move(x));
  }
  return basis;
}

std::size_t exact_span_rank(const std::vector<IntMatrix>& matrices) {
  std::vector<std::vector<std::int64_t>> rows;
  rows.reserve(matrices.size());
  for (const auto& m : matrices) rows.push_back(m.data);
  return exact_rank(rows);
}

bool exact_span_equal(const std::vector<IntMatrix>& a, const std::vector<IntMatrix>& b) {
  std::vector<IntMatrix> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t joint = exact_span_rank(both);
  return exact_span_rank(a) == joint && exact_span_rank(b) == joint;
}

}  // namespace lpgroup
