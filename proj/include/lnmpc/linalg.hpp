#pragma once

#include <Eigen/Dense>
#include <random>
#include <stdexcept>
#include <string>

namespace lnmpc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Rng = std::mt19937_64;

inline bool all_finite(const Matrix& m) { return m.allFinite(); }
inline bool all_finite(const Vector& v) { return v.allFinite(); }

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

/// Uniform init in +-1/sqrt(fan_in), the convention used for all trainable layers.
inline Matrix uniform_init(int rows, int cols, int fan_in, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  std::uniform_real_distribution<double> dist(-bound, bound);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

inline Vector uniform_init_vec(int n, int fan_in, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  std::uniform_real_distribution<double> dist(-bound, bound);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

}  // namespace lnmpc
