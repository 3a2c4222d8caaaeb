#include "reactmotion/optimizer.hpp"

#include <cmath>
#include <stdexcept>

#include "reactmotion/tape.hpp"

namespace reactmotion::diff {

Rmsprop::Rmsprop(const ParamStore& store, RmspropConfig config, std::string prefix)
    : cfg_(config), prefix_(std::move(prefix)), store_(&store) {
  for (int i = 0; i < store.size(); ++i) {
    if (!store.name(i).starts_with(prefix_)) continue;
    indices_.push_back(i);
    acc_.push_back(Tensor::zeros_like(store.at_index(i)));
  }
}

void Rmsprop::step(ParamStore& params, const Gradients& grads) {
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    const int i = indices_[k];
    const Tensor& g = grads.at_index(i);
    if (!g.all_finite()) {
      throw NumericError("rmsprop: non-finite gradient for parameter '" + params.name(i) + "'");
    }
    Tensor& theta = params.at_index(i);
    Tensor& acc = acc_[k];
    for (int j = 0; j < theta.size(); ++j) {
      acc[j] = cfg_.rho * acc[j] + (1.0 - cfg_.rho) * g[j] * g[j];
      theta[j] -= cfg_.learning_rate * g[j] / (std::sqrt(acc[j]) + cfg_.epsilon);
    }
  }
}

const Tensor& Rmsprop::accumulator(std::string_view name) const {
  const int i = store_->index_of(name);
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (indices_[k] == i) return acc_[k];
  }
  throw std::out_of_range("rmsprop: parameter '" + std::string(name) + "' not managed");
}

}  // namespace reactmotion::diff
