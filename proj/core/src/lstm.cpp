#include "reactmotion/lstm.hpp"

namespace reactmotion::nn {

using diff::Tape;
using diff::Var;

void add_lstm_params(diff::ParamStore& params, const std::string& prefix, int input_dim,
                     int hidden, Rng& rng) {
  params.add_uniform(prefix + ".W", 4 * hidden, input_dim + hidden, input_dim + hidden, rng);
  params.add(prefix + ".b", diff::Tensor(4 * hidden, 1));
}

LstmState lstm_update(Tape& t, Var pre, Var c_prev, int hidden) {
  const Var i = t.sigmoid(t.slice(pre, 0, 0, hidden));
  const Var f = t.sigmoid(t.slice(pre, 0, hidden, hidden));
  const Var o = t.sigmoid(t.slice(pre, 0, 2 * hidden, hidden));
  const Var u = t.tanh(t.slice(pre, 0, 3 * hidden, hidden));
  const Var c = f * c_prev + i * u;
  const Var h = o * t.tanh(c);
  return LstmState{h, c};
}

LstmState lstm_step(Tape& t, Var w, Var b, Var x, const LstmState& prev, int hidden) {
  const Var pre = t.matmul(w, t.concat({x, prev.h}, 0)) + b;
  return lstm_update(t, pre, prev.c, hidden);
}

}  // namespace reactmotion::nn
