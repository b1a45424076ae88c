#pragma once

// Shared helpers for the unit suites. The finite-difference machinery here is
// the independent oracle for every analytic derivative in the library; it must
// not call any lnmpc jacobian code.

#include <functional>

#include "lnmpc/linalg.hpp"

namespace testutil {

using lnmpc::Matrix;
using lnmpc::Vector;

constexpr double kFdStep = 1e-6;

/// Central-difference Jacobian of f at x, one column per perturbed input.
inline Matrix fd_jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x,
                          double step = kFdStep) {
  const Vector f0 = f(x);
  Matrix jac(f0.size(), x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    Vector xp = x, xm = x;
    xp(j) += step;
    xm(j) -= step;
    jac.col(j) = (f(xp) - f(xm)) / (2.0 * step);
  }
  return jac;
}

inline double fd_derivative(const std::function<double(double)>& f, double x,
                            double step = kFdStep) {
  return (f(x + step) - f(x - step)) / (2.0 * step);
}

/// Central-difference gradient of a scalar function.
inline Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x,
                          double step = kFdStep) {
  Vector g(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    Vector xp = x, xm = x;
    xp(j) += step;
    xm(j) -= step;
    g(j) = (f(xp) - f(xm)) / (2.0 * step);
  }
  return g;
}

/// Relative error with an absolute floor so near-zero entries compare sanely.
inline double rel_error(const Matrix& a, const Matrix& b, double floor = 1e-6) {
  const double denom = std::max({a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff(), floor});
  return (a - b).cwiseAbs().maxCoeff() / denom;
}

inline Vector random_vector(Eigen::Index n, lnmpc::Rng& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

}  // namespace testutil
