#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "reactmotion/tensor.hpp"

namespace reactmotion::motion {

inline constexpr int kJointCount = 15;
inline constexpr int kPoseDim = 45;  // 15 joints x (x, y, z)
inline constexpr int kPartCount = 5;
inline constexpr int kBoneCount = 14;

/// Fixed joint order of every pose in the system.
enum Joint : int {
  kHead = 0,
  kNeck,
  kTorso,
  kLeftShoulder,
  kLeftElbow,
  kLeftHand,
  kRightShoulder,
  kRightElbow,
  kRightHand,
  kLeftHip,
  kLeftKnee,
  kLeftFoot,
  kRightHip,
  kRightKnee,
  kRightFoot,
};

const char* joint_name(int joint);

/// One skeleton frame: 15 joints in meters, flattened to 45 reals.
struct Pose {
  std::array<double, kPoseDim> c{};

  double x(int j) const { return c[static_cast<std::size_t>(3 * j)]; }
  double y(int j) const { return c[static_cast<std::size_t>(3 * j + 1)]; }
  double z(int j) const { return c[static_cast<std::size_t>(3 * j + 2)]; }
  void set(int j, double x, double y, double z) {
    c[static_cast<std::size_t>(3 * j)] = x;
    c[static_cast<std::size_t>(3 * j + 1)] = y;
    c[static_cast<std::size_t>(3 * j + 2)] = z;
  }
  bool all_finite() const;
};

/// Joint -> body-part assignment. Part order is fixed: trunk, left arm,
/// right arm, left leg, right leg.
struct PartitionSpec {
  std::array<int, kJointCount> part_of{};  // values in [0, 5)

  static PartitionSpec default_spec();
  /// Joints of each part in ascending joint index.
  std::vector<std::vector<int>> joints_by_part() const;
  bool covers_all_joints() const;
};

const char* part_name(int part);

/// 14 parent-child bones spanning the 15 joints as a tree, plus the
/// reference length per bone used by the bone loss.
struct ReferenceSkeleton {
  std::array<std::pair<int, int>, kBoneCount> bones;
  std::array<double, kBoneCount> ref_length{};

  /// Bone tree with reference lengths taken from the canonical T-pose.
  static ReferenceSkeleton canonical();
};

/// Canonical T-pose template (meters, y up, facing +z).
Pose t_pose();

/// Length of every bone of `skeleton` measured on `pose`.
std::array<double, kBoneCount> bone_lengths(const Pose& pose, const ReferenceSkeleton& skeleton);

/// Splits a pose into the five part vectors (each part's joints ascending).
std::vector<std::vector<double>> partition_pose(const Pose& pose, const PartitionSpec& spec);

/// Reassembles a pose from part vectors produced by partition_pose.
Pose assemble_pose(const std::vector<std::vector<double>>& parts, const PartitionSpec& spec);

// Pose sequence <-> 45 x T matrix (column t is frame t).
diff::Tensor to_matrix(std::span<const Pose> frames);
std::vector<Pose> to_poses(const diff::Tensor& m);

}  // namespace reactmotion::motion
