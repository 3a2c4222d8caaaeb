#pragma once

#include <cstdint>
#include <vector>

#include "reactmotion/clip.hpp"

namespace reactmotion::motion {

/// Two-class desk-scale dataset for verification. Class 1 "push-like": A's
/// right hand travels +z by 0.5*sin(pi*t/S) while B's whole body travels -z
/// by 0.4*sin(pi*(t-3)/S), clamped at 0. Class 2 "wave-like": A's and B's
/// right arms raise by 0.5*sin(pi*t/S) with B lagging 3 frames. All joints
/// start from the canonical T-pose; Gaussian noise of the given sigma is
/// added to every coordinate. Deterministic per seed.
struct SyntheticSpec {
  int classes = 2;  // fixed at 2
  int clips_per_class = 8;
  int length = 40;  // S, >= 10
  double noise_sigma = 0.0;
};

std::vector<InteractionClip> make_synthetic_dataset(const SyntheticSpec& spec,
                                                    std::uint64_t seed);

}  // namespace reactmotion::motion
