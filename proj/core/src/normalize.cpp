#include "reactmotion/normalize.hpp"

#include <cmath>

namespace reactmotion::motion {

Pose NormalizationTransform::apply(const Pose& p) const {
  Pose out;
  for (int j = 0; j < kJointCount; ++j) {
    const double x = p.x(j), y = p.y(j), z = p.z(j);
    out.set(j,
            rotation[0][0] * x + rotation[0][1] * y + rotation[0][2] * z + translation[0],
            rotation[1][0] * x + rotation[1][1] * y + rotation[1][2] * z + translation[1],
            rotation[2][0] * x + rotation[2][1] * y + rotation[2][2] * z + translation[2]);
  }
  return out;
}

bool NormalizationTransform::is_orthonormal(double tol) const {
  const auto& r = rotation;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 3; ++k) dot += r[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      const double want = i == j ? 1.0 : 0.0;
      if (std::abs(dot - want) > tol) return false;
    }
  }
  const double det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
                     r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
                     r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
  return std::abs(det - 1.0) <= tol;
}

NormalizedClip normalize_interaction(const InteractionClip& clip) {
  clip.validate();
  const Pose& first = clip.motion_a.front();

  // Pelvis proxy: midpoint of the two hips (the skeleton has no pelvis joint).
  const double px = 0.5 * (first.x(kLeftHip) + first.x(kRightHip));
  const double py = 0.5 * (first.y(kLeftHip) + first.y(kRightHip));
  const double pz = 0.5 * (first.z(kLeftHip) + first.z(kRightHip));

  // Facing: up x (right hip - left hip), projected to the ground plane.
  const double dx = first.x(kRightHip) - first.x(kLeftHip);
  const double dz = first.z(kRightHip) - first.z(kLeftHip);
  // up = (0,1,0): up x d = (d_z, 0, -d_x); y component is zero already.
  double fx = dz;
  double fz = -dx;
  const double norm = std::sqrt(fx * fx + fz * fz);
  if (norm < 1e-9) {
    throw ClipError("normalize_interaction: degenerate facing direction (hips coincident)");
  }
  fx /= norm;
  fz /= norm;

  // Rotation about the vertical axis mapping (fx, 0, fz) onto +z.
  NormalizationTransform tf;
  tf.rotation = {{{fz, 0.0, -fx}, {0.0, 1.0, 0.0}, {fx, 0.0, fz}}};
  // p' = R * (p - pelvis)
  tf.translation = {-(tf.rotation[0][0] * px + tf.rotation[0][2] * pz),
                    -py,
                    -(tf.rotation[2][0] * px + tf.rotation[2][2] * pz)};

  NormalizedClip out;
  out.transform = tf;
  out.clip = clip;
  for (Pose& p : out.clip.motion_a) p = tf.apply(p);
  for (Pose& p : out.clip.motion_b) p = tf.apply(p);
  return out;
}

}  // namespace reactmotion::motion
