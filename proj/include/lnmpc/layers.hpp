#pragma once

#include <string>

#include "lnmpc/activations.hpp"
#include "lnmpc/linalg.hpp"

namespace lnmpc {

enum class Activation { Relu, Linear };

inline std::string to_string(Activation a) {
  return a == Activation::Relu ? "relu" : "linear";
}

inline Activation activation_from_string(const std::string& s) {
  if (s == "relu") return Activation::Relu;
  if (s == "linear") return Activation::Linear;
  throw std::runtime_error("unknown activation '" + s + "'");
}

/// Dense layer y = act(W u + b). `weights` is (out x in).
struct FcLayer {
  std::string name;
  Matrix weights;
  Vector bias;
  Activation activation = Activation::Relu;

  int in_size() const { return static_cast<int>(weights.cols()); }
  int out_size() const { return static_cast<int>(weights.rows()); }

  void check() const {
    require(bias.size() == weights.rows(),
            "fc layer '" + name + "': bias length " + std::to_string(bias.size()) +
                " != rows " + std::to_string(weights.rows()));
    require(all_finite(weights) && all_finite(bias),
            "fc layer '" + name + "': non-finite parameter");
  }
};

inline FcLayer make_fc(const std::string& name, int out, int in, Activation act, Rng& rng) {
  FcLayer fc;
  fc.name = name;
  fc.weights = uniform_init(out, in, in, rng);
  fc.bias = uniform_init_vec(out, in, rng);
  fc.activation = act;
  return fc;
}

struct FcCache {
  Vector input;
  Vector pre;  // W u + b, before the activation
};

inline Vector fc_forward(const FcLayer& layer, const Vector& u, FcCache* cache = nullptr) {
  if (u.size() != layer.weights.cols()) {
    throw std::runtime_error("fc layer '" + layer.name + "': input length " +
                             std::to_string(u.size()) + " != expected " +
                             std::to_string(layer.weights.cols()));
  }
  Vector pre = layer.weights * u + layer.bias;
  if (cache) {
    cache->input = u;
    cache->pre = pre;
  }
  if (layer.activation == Activation::Relu) return relu(pre);
  return pre;
}

/// d(output)/d(input). ReLU rows with pre-activation <= 0 are zero
/// (subgradient 0 at the kink).
inline Matrix fc_jacobian(const FcLayer& layer, const Vector& u) {
  FcCache cache;
  fc_forward(layer, u, &cache);
  if (layer.activation == Activation::Linear) return layer.weights;
  Matrix jac = layer.weights;
  for (int i = 0; i < jac.rows(); ++i) {
    if (cache.pre(i) <= 0.0) jac.row(i).setZero();
  }
  return jac;
}

/// Smallest |pre-activation| over the layer at input u. Used by derivative
/// tests to stay away from ReLU kinks.
inline double fc_kink_margin(const FcLayer& layer, const Vector& u) {
  if (layer.activation == Activation::Linear) return std::numeric_limits<double>::infinity();
  Vector pre = layer.weights * u + layer.bias;
  return pre.cwiseAbs().minCoeff();
}

/// One recurrent layer. The input and recurrent weight matrices stack the four
/// gates as row blocks in the fixed order (i, f, g, o):
///   rows [0, n)    input gate        i = sigmoid(.)
///   rows [n, 2n)   forget gate       f = sigmoid(.)
///   rows [2n, 3n)  cell candidate    g = tanh(.)
///   rows [3n, 4n)  output gate       o = sigmoid(.)
/// with c' = f.c + i.g and h' = o.tanh(c').
struct LstmLayer {
  std::string name;
  Matrix w_input;   // (4 n_h) x n_u
  Matrix w_hidden;  // (4 n_h) x n_h
  Vector bias;      // 4 n_h
  int hidden_size = 0;

  int input_size() const { return static_cast<int>(w_input.cols()); }

  void check() const {
    const int n = hidden_size;
    require(n > 0, "lstm layer '" + name + "': hidden_size must be positive");
    require(w_input.rows() == 4 * n && w_hidden.rows() == 4 * n && w_hidden.cols() == n &&
                bias.size() == 4 * n,
            "lstm layer '" + name + "': inconsistent gate-block dimensions");
    require(all_finite(w_input) && all_finite(w_hidden) && all_finite(bias),
            "lstm layer '" + name + "': non-finite parameter");
  }
};

inline LstmLayer make_lstm(const std::string& name, int hidden, int input, Rng& rng) {
  LstmLayer l;
  l.name = name;
  l.hidden_size = hidden;
  l.w_input = uniform_init(4 * hidden, input, input, rng);
  l.w_hidden = uniform_init(4 * hidden, hidden, hidden, rng);
  l.bias = uniform_init_vec(4 * hidden, hidden, rng);
  return l;
}

struct LstmState {
  Vector h;  // short-term state, each component in (-1, 1) after a step
  Vector c;  // long-term state
};

inline LstmState zero_state(int hidden) {
  return LstmState{Vector::Zero(hidden), Vector::Zero(hidden)};
}

/// Per-step values the backward pass needs.
struct LstmCache {
  Vector input;
  Vector h_prev, c_prev;
  Vector i, f, g, o;  // gate activations
  Vector c_new, tanh_c_new;
};

struct LstmStepResult {
  Vector y;  // == state.h
  LstmState state;
};

inline LstmStepResult lstm_step(const LstmLayer& layer, const Vector& u, const LstmState& prev,
                                LstmCache* cache = nullptr) {
  const int n = layer.hidden_size;
  if (u.size() != layer.w_input.cols() || prev.h.size() != n || prev.c.size() != n) {
    throw std::runtime_error("lstm layer '" + layer.name + "': dimension mismatch (input " +
                             std::to_string(u.size()) + ", state " + std::to_string(prev.h.size()) +
                             ", expected input " + std::to_string(layer.w_input.cols()) +
                             ", hidden " + std::to_string(n) + ")");
  }
  Vector pre = layer.w_input * u + layer.w_hidden * prev.h + layer.bias;
  Vector gi = sigmoid(pre.segment(0, n));
  Vector gf = sigmoid(pre.segment(n, n));
  Vector gg = tanh_act(pre.segment(2 * n, n));
  Vector go = sigmoid(pre.segment(3 * n, n));
  Vector c_new = gf.cwiseProduct(prev.c) + gi.cwiseProduct(gg);
  Vector tc = tanh_act(c_new);
  Vector h_new = go.cwiseProduct(tc);
  if (cache) {
    cache->input = u;
    cache->h_prev = prev.h;
    cache->c_prev = prev.c;
    cache->i = gi;
    cache->f = gf;
    cache->g = gg;
    cache->o = go;
    cache->c_new = c_new;
    cache->tanh_c_new = tc;
  }
  return LstmStepResult{h_new, LstmState{std::move(h_new), std::move(c_new)}};
}

struct LstmJacobians {
  Matrix dh_du, dh_dh, dh_dc;  // new h wrt input, prev h, prev c
  Matrix dc_du, dc_dh, dc_dc;  // new c wrt input, prev h, prev c
};

/// Analytic Jacobians of one step. Derivation: each gate row is an
/// elementwise activation of an affine map, so
///   dc'/dv = diag(c_prev . f') Wf_v + diag(g . i') Wi_v + diag(i . g') Wg_v
///   dh'/dv = diag(tanh(c') . o') Wo_v + diag(o . (1 - tanh^2 c')) dc'/dv
/// for v in {u, h_prev}, and dc'/dc_prev = diag(f).
inline LstmJacobians lstm_step_jacobians(const LstmLayer& layer, const Vector& u,
                                         const LstmState& prev) {
  const int n = layer.hidden_size;
  LstmCache cc;
  lstm_step(layer, u, prev, &cc);

  const Vector di = cc.i.unaryExpr([](double s) { return sigmoid_deriv_from_value(s); });
  const Vector df = cc.f.unaryExpr([](double s) { return sigmoid_deriv_from_value(s); });
  const Vector dg = cc.g.unaryExpr([](double t) { return tanh_deriv_from_value(t); });
  const Vector do_ = cc.o.unaryExpr([](double s) { return sigmoid_deriv_from_value(s); });
  const Vector dtc = cc.tanh_c_new.unaryExpr([](double t) { return tanh_deriv_from_value(t); });

  const auto wi_u = layer.w_input.middleRows(0, n);
  const auto wf_u = layer.w_input.middleRows(n, n);
  const auto wg_u = layer.w_input.middleRows(2 * n, n);
  const auto wo_u = layer.w_input.middleRows(3 * n, n);
  const auto wi_h = layer.w_hidden.middleRows(0, n);
  const auto wf_h = layer.w_hidden.middleRows(n, n);
  const auto wg_h = layer.w_hidden.middleRows(2 * n, n);
  const auto wo_h = layer.w_hidden.middleRows(3 * n, n);

  LstmJacobians jac;
  jac.dc_du = (cc.c_prev.cwiseProduct(df)).asDiagonal() * wf_u +
              (cc.g.cwiseProduct(di)).asDiagonal() * wi_u +
              (cc.i.cwiseProduct(dg)).asDiagonal() * wg_u;
  jac.dc_dh = (cc.c_prev.cwiseProduct(df)).asDiagonal() * wf_h +
              (cc.g.cwiseProduct(di)).asDiagonal() * wi_h +
              (cc.i.cwiseProduct(dg)).asDiagonal() * wg_h;
  jac.dc_dc = Matrix(cc.f.asDiagonal());

  const Vector o_dtc = cc.o.cwiseProduct(dtc);
  jac.dh_du = (cc.tanh_c_new.cwiseProduct(do_)).asDiagonal() * wo_u +
              o_dtc.asDiagonal() * jac.dc_du;
  jac.dh_dh = (cc.tanh_c_new.cwiseProduct(do_)).asDiagonal() * wo_h +
              o_dtc.asDiagonal() * jac.dc_dh;
  jac.dh_dc = o_dtc.asDiagonal() * jac.dc_dc;
  return jac;
}

}  // namespace lnmpc
