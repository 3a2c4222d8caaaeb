#pragma once

#include <array>

#include "reactmotion/clip.hpp"

namespace reactmotion::motion {

/// Rigid transform p' = R * p + t with R orthonormal, det +1.
struct NormalizationTransform {
  std::array<std::array<double, 3>, 3> rotation{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  std::array<double, 3> translation{0, 0, 0};

  Pose apply(const Pose& p) const;
  bool is_orthonormal(double tol = 1e-9) const;
};

struct NormalizedClip {
  InteractionClip clip;
  NormalizationTransform transform;
};

/// One rigid transform, computed from A's first frame, applied to every joint
/// of both characters in every frame. Afterwards A's pelvis (midpoint of the
/// hips) in frame 1 sits at the origin and A's facing direction in frame 1 is
/// +z; the rotation is about the vertical axis only. Throws ClipError when
/// the facing direction is degenerate (hips coincident).
NormalizedClip normalize_interaction(const InteractionClip& clip);

}  // namespace reactmotion::motion
