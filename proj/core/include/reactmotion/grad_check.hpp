#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "reactmotion/param_store.hpp"
#include "reactmotion/tape.hpp"

namespace reactmotion::diff {

using LossBuilder = std::function<Var(Tape&)>;

struct GradCheckReport {
  double max_rel_error = 0.0;
  int samples = 0;
  std::string worst_param;
  int worst_entry = -1;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  bool passed(double tolerance) const { return max_rel_error < tolerance; }
};

/// Compares the tape's analytic gradient against central finite differences
/// of the rebuilt loss. Relative error per sampled entry:
///   |analytic - difference| / max(|analytic|, |difference|, 1e-8)
/// At most max_samples entries are checked, drawn without replacement from a
/// stream seeded with `seed`. Throws NumericError if the loss is non-finite.
GradCheckReport grad_check(const LossBuilder& build_loss, ParamStore& params,
                           double step = 1e-5, int max_samples = 200,
                           std::uint64_t seed = 0);

}  // namespace reactmotion::diff
