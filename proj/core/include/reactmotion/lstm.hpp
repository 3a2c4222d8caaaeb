#pragma once

#include <string>

#include "reactmotion/param_store.hpp"
#include "reactmotion/tape.hpp"

namespace reactmotion::nn {

/// Adds the weight block of one LSTM cell: `prefix.W` of shape
/// 4*hidden x (input_dim + hidden) with gate rows ordered [i; f; o; u],
/// and `prefix.b` of shape 4*hidden x 1 (zero-initialised).
void add_lstm_params(diff::ParamStore& params, const std::string& prefix, int input_dim,
                     int hidden, Rng& rng);

struct LstmState {
  diff::Var h;
  diff::Var c;
};

/// Gate update from a pre-activation column `pre` (first 4*hidden rows are
/// [i; f; o; u]):
///   c = sigmoid(f) . c_prev + sigmoid(i) . tanh(u)
///   h = sigmoid(o) . tanh(c)
LstmState lstm_update(diff::Tape& tape, diff::Var pre, diff::Var c_prev, int hidden);

/// Standard step: pre = W * [x; h_prev] + b, then lstm_update.
LstmState lstm_step(diff::Tape& tape, diff::Var w, diff::Var b, diff::Var x,
                    const LstmState& prev, int hidden);

}  // namespace reactmotion::nn
