#include "reactmotion/synthetic.hpp"

#include <cmath>
#include <stdexcept>

#include "reactmotion/rng.hpp"

namespace reactmotion::motion {

namespace {

constexpr double kPi = 3.14159265358979323846;

double raise_curve(int t, int length) {  // 0.5 * sin(pi*t/S)
  return 0.5 * std::sin(kPi * static_cast<double>(t) / length);
}

double lagged(double amplitude, int t, int length) {  // clamped at 0 below t = 3
  return amplitude * std::max(std::sin(kPi * static_cast<double>(t - 3) / length), 0.0);
}

}  // namespace

std::vector<InteractionClip> make_synthetic_dataset(const SyntheticSpec& spec,
                                                    std::uint64_t seed) {
  if (spec.classes != 2) throw std::invalid_argument("make_synthetic_dataset: classes must be 2");
  if (spec.length < 10) throw std::invalid_argument("make_synthetic_dataset: length must be >= 10");
  if (spec.clips_per_class < 1) {
    throw std::invalid_argument("make_synthetic_dataset: clips_per_class must be >= 1");
  }

  Rng rng(seed);
  const Pose base = t_pose();
  std::vector<InteractionClip> out;
  out.reserve(static_cast<std::size_t>(2 * spec.clips_per_class));

  int clip_index = 0;
  for (int label = 1; label <= 2; ++label) {
    for (int k = 0; k < spec.clips_per_class; ++k, ++clip_index) {
      InteractionClip clip;
      clip.label = label;
      clip.class_name = label == 1 ? "push-like" : "wave-like";
      clip.source = "synthetic";
      clip.fps = 15.0;
      clip.subjects = {"s" + std::to_string(1 + clip_index % 4),
                       "s" + std::to_string(1 + (clip_index + 1) % 4)};
      for (int t = 0; t < spec.length; ++t) {
        Pose a = base;
        Pose b = base;
        if (label == 1) {
          a.set(kRightHand, a.x(kRightHand), a.y(kRightHand),
                a.z(kRightHand) + raise_curve(t, spec.length));
          const double dz = lagged(0.4, t, spec.length);
          for (int j = 0; j < kJointCount; ++j) b.set(j, b.x(j), b.y(j), b.z(j) - dz);
        } else {
          const double amp = raise_curve(t, spec.length);
          a.set(kRightHand, a.x(kRightHand), a.y(kRightHand) + amp, a.z(kRightHand));
          a.set(kRightElbow, a.x(kRightElbow), a.y(kRightElbow) + 0.5 * amp, a.z(kRightElbow));
          const double bamp = lagged(0.5, t, spec.length);
          b.set(kRightHand, b.x(kRightHand), b.y(kRightHand) + bamp, b.z(kRightHand));
          b.set(kRightElbow, b.x(kRightElbow), b.y(kRightElbow) + 0.5 * bamp, b.z(kRightElbow));
        }
        if (spec.noise_sigma > 0.0) {
          for (double& v : a.c) v += rng.normal(0.0, spec.noise_sigma);
          for (double& v : b.c) v += rng.normal(0.0, spec.noise_sigma);
        }
        clip.motion_a.push_back(a);
        clip.motion_b.push_back(b);
      }
      out.push_back(std::move(clip));
    }
  }
  return out;
}

}  // namespace reactmotion::motion
