#pragma once

#include <algorithm>
#include <numbers>
#include <optional>
#include <random>

#include "lpgroup/error.hpp"
#include "lpgroup/reconstruction.hpp"

namespace test_support {

using namespace lpgroup;

template <typename F>
std::optional<ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline std::vector<double> weights(std::mt19937_64& rng, std::size_t n, double lo = 0.25, double hi = 4.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> w(n);
  for (auto& x : w) x = dist(rng);
  return w;
}

inline Permutation random_perm(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = i;
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(std::move(images));
}

inline MeasurableFunction unimodular(std::mt19937_64& rng, const FiniteMeasureAlgebra& algebra) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::vector<complex> values(algebra.atoms());
  for (auto& v : values) v = std::polar(1.0, angle(rng));
  return MeasurableFunction(algebra, std::move(values));
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complex(normal(rng), normal(rng));
  return v;
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace test_support
