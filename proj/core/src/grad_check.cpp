#include "reactmotion/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "reactmotion/rng.hpp"

namespace reactmotion::diff {

GradCheckReport grad_check(const LossBuilder& build_loss, ParamStore& params, double step,
                           int max_samples, std::uint64_t seed) {
  if (step <= 0.0) throw NumericError("grad_check: step must be positive");

  Tape tape(&params);
  Var loss = build_loss(tape);
  {
    const Tensor& v = tape.value(loss);
    if (v.rows() != 1 || v.cols() != 1) {
      throw GraphError("grad_check: loss builder produced " + v.shape_str() + ", expected 1x1");
    }
    if (!std::isfinite(v.item())) throw NumericError("grad_check: loss is non-finite");
  }
  tape.backward(loss);
  const Gradients analytic = tape.param_gradients();

  std::vector<std::pair<int, int>> entries;  // (param index, flat entry)
  for (int i = 0; i < params.size(); ++i) {
    for (int j = 0; j < params.at_index(i).size(); ++j) entries.emplace_back(i, j);
  }
  GradCheckReport report;
  if (entries.empty()) return report;  // zero-parameter model: vacuous, error 0

  if (static_cast<int>(entries.size()) > max_samples) {
    Rng rng(seed);
    rng.shuffle(entries);
    entries.resize(static_cast<std::size_t>(max_samples));
  }

  for (const auto& [pi, ei] : entries) {
    Tensor& theta = params.at_index(pi);
    const double saved = theta[ei];

    theta[ei] = saved + step;
    tape.forward();
    const double up = tape.value(loss).item();
    theta[ei] = saved - step;
    tape.forward();
    const double down = tape.value(loss).item();
    theta[ei] = saved;

    if (!std::isfinite(up) || !std::isfinite(down)) {
      theta[ei] = saved;
      tape.forward();
      throw NumericError("grad_check: perturbed loss non-finite at '" + params.name(pi) + "'");
    }
    const double numeric = (up - down) / (2.0 * step);
    const double a = analytic.at_index(pi)[ei];
    const double denom = std::max({std::abs(a), std::abs(numeric), 1e-8});
    const double rel = std::abs(a - numeric) / denom;
    ++report.samples;
    if (rel > report.max_rel_error) {
      report.max_rel_error = rel;
      report.worst_param = params.name(pi);
      report.worst_entry = ei;
      report.worst_analytic = a;
      report.worst_numeric = numeric;
    }
  }
  tape.forward();  // leave the tape consistent with the restored parameters
  return report;
}

}  // namespace reactmotion::diff
