#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "reactmotion/param_store.hpp"

namespace reactmotion::diff {

struct RmspropConfig {
  double learning_rate = 0.01;
  double rho = 0.9;
  double epsilon = 1e-8;
};

/// RMSprop over the parameters of one store whose names match a prefix
/// (all parameters when the prefix is empty). Per-parameter accumulator:
///   acc <- rho * acc + (1 - rho) * g^2
///   theta <- theta - lr * g / (sqrt(acc) + eps)
class Rmsprop {
 public:
  Rmsprop(const ParamStore& store, RmspropConfig config, std::string prefix = "");

  /// Applies one update. Throws NumericError naming the parameter if any
  /// gradient entry is non-finite.
  void step(ParamStore& params, const Gradients& grads);

  const RmspropConfig& config() const { return cfg_; }
  const Tensor& accumulator(std::string_view name) const;

 private:
  RmspropConfig cfg_;
  std::string prefix_;
  std::vector<int> indices_;
  std::vector<Tensor> acc_;
  const ParamStore* store_;
};

}  // namespace reactmotion::diff
