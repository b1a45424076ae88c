#pragma once

#include <cmath>

#include "lnmpc/linalg.hpp"

namespace lnmpc {

/// Logistic function 1/(1+e^-z). Saturates cleanly for large |z|.
inline double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double ez = std::exp(z);
  return ez / (1.0 + ez);
}

inline double tanh_act(double z) { return std::tanh(z); }

inline double relu(double z) { return z > 0.0 ? z : 0.0; }

// Derivatives expressed in terms of the activation value, which is what the
// backward passes have at hand.
inline double sigmoid_deriv_from_value(double s) { return s * (1.0 - s); }
inline double tanh_deriv_from_value(double t) { return 1.0 - t * t; }

inline Vector sigmoid(const Vector& z) {
  Vector out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) out(i) = sigmoid(z(i));
  return out;
}

inline Vector tanh_act(const Vector& z) { return z.array().tanh().matrix(); }

inline Vector relu(const Vector& z) { return z.cwiseMax(0.0); }

}  // namespace lnmpc
