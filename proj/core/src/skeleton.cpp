#include "reactmotion/skeleton.hpp"

#include <cmath>
#include <stdexcept>

namespace reactmotion::motion {

const char* joint_name(int joint) {
  static const char* names[kJointCount] = {
      "head",           "neck",        "torso",      "left-shoulder", "left-elbow",
      "left-hand",      "right-shoulder", "right-elbow", "right-hand", "left-hip",
      "left-knee",      "left-foot",   "right-hip",  "right-knee",    "right-foot"};
  return names[joint];
}

const char* part_name(int part) {
  static const char* names[kPartCount] = {"trunk", "left-arm", "right-arm", "left-leg",
                                          "right-leg"};
  return names[part];
}

bool Pose::all_finite() const {
  for (double v : c) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

PartitionSpec PartitionSpec::default_spec() {
  PartitionSpec s;
  s.part_of[kHead] = 0;
  s.part_of[kNeck] = 0;
  s.part_of[kTorso] = 0;
  s.part_of[kLeftShoulder] = 1;
  s.part_of[kLeftElbow] = 1;
  s.part_of[kLeftHand] = 1;
  s.part_of[kRightShoulder] = 2;
  s.part_of[kRightElbow] = 2;
  s.part_of[kRightHand] = 2;
  s.part_of[kLeftHip] = 3;
  s.part_of[kLeftKnee] = 3;
  s.part_of[kLeftFoot] = 3;
  s.part_of[kRightHip] = 4;
  s.part_of[kRightKnee] = 4;
  s.part_of[kRightFoot] = 4;
  return s;
}

std::vector<std::vector<int>> PartitionSpec::joints_by_part() const {
  std::vector<std::vector<int>> parts(kPartCount);
  for (int j = 0; j < kJointCount; ++j) {
    const int p = part_of[static_cast<std::size_t>(j)];
    if (p < 0 || p >= kPartCount) {
      throw std::out_of_range("PartitionSpec: joint " + std::to_string(j) +
                              " assigned to invalid part " + std::to_string(p));
    }
    parts[static_cast<std::size_t>(p)].push_back(j);
  }
  for (int p = 0; p < kPartCount; ++p) {
    if (parts[static_cast<std::size_t>(p)].empty()) {
      throw std::logic_error(std::string("PartitionSpec: part '") + part_name(p) + "' is empty");
    }
  }
  return parts;
}

bool PartitionSpec::covers_all_joints() const {
  for (int j = 0; j < kJointCount; ++j) {
    const int p = part_of[static_cast<std::size_t>(j)];
    if (p < 0 || p >= kPartCount) return false;
  }
  return true;
}

Pose t_pose() {
  Pose p;
  p.set(kHead, 0.00, 1.45, 0.0);
  p.set(kNeck, 0.00, 1.25, 0.0);
  p.set(kTorso, 0.00, 0.90, 0.0);
  p.set(kLeftShoulder, 0.20, 1.20, 0.0);
  p.set(kLeftElbow, 0.45, 1.20, 0.0);
  p.set(kLeftHand, 0.70, 1.20, 0.0);
  p.set(kRightShoulder, -0.20, 1.20, 0.0);
  p.set(kRightElbow, -0.45, 1.20, 0.0);
  p.set(kRightHand, -0.70, 1.20, 0.0);
  p.set(kLeftHip, 0.12, 0.65, 0.0);
  p.set(kLeftKnee, 0.12, 0.35, 0.0);
  p.set(kLeftFoot, 0.12, 0.00, 0.0);
  p.set(kRightHip, -0.12, 0.65, 0.0);
  p.set(kRightKnee, -0.12, 0.35, 0.0);
  p.set(kRightFoot, -0.12, 0.00, 0.0);
  return p;
}

ReferenceSkeleton ReferenceSkeleton::canonical() {
  ReferenceSkeleton s;
  s.bones = {{{kNeck, kHead},
              {kNeck, kTorso},
              {kNeck, kLeftShoulder},
              {kLeftShoulder, kLeftElbow},
              {kLeftElbow, kLeftHand},
              {kNeck, kRightShoulder},
              {kRightShoulder, kRightElbow},
              {kRightElbow, kRightHand},
              {kTorso, kLeftHip},
              {kLeftHip, kLeftKnee},
              {kLeftKnee, kLeftFoot},
              {kTorso, kRightHip},
              {kRightHip, kRightKnee},
              {kRightKnee, kRightFoot}}};
  const Pose ref = t_pose();
  s.ref_length = bone_lengths(ref, s);
  return s;
}

std::array<double, kBoneCount> bone_lengths(const Pose& pose, const ReferenceSkeleton& skeleton) {
  std::array<double, kBoneCount> out{};
  for (int b = 0; b < kBoneCount; ++b) {
    const auto [pa, ch] = skeleton.bones[static_cast<std::size_t>(b)];
    const double dx = pose.x(pa) - pose.x(ch);
    const double dy = pose.y(pa) - pose.y(ch);
    const double dz = pose.z(pa) - pose.z(ch);
    out[static_cast<std::size_t>(b)] = std::sqrt(dx * dx + dy * dy + dz * dz);
  }
  return out;
}

std::vector<std::vector<double>> partition_pose(const Pose& pose, const PartitionSpec& spec) {
  const auto parts = spec.joints_by_part();
  std::vector<std::vector<double>> out;
  out.reserve(kPartCount);
  for (const auto& joints : parts) {
    std::vector<double> v;
    v.reserve(joints.size() * 3);
    for (int j : joints) {
      v.push_back(pose.x(j));
      v.push_back(pose.y(j));
      v.push_back(pose.z(j));
    }
    out.push_back(std::move(v));
  }
  return out;
}

Pose assemble_pose(const std::vector<std::vector<double>>& parts, const PartitionSpec& spec) {
  const auto joints = spec.joints_by_part();
  Pose pose;
  for (int p = 0; p < kPartCount; ++p) {
    const auto& part = parts[static_cast<std::size_t>(p)];
    if (part.size() != joints[static_cast<std::size_t>(p)].size() * 3) {
      throw std::invalid_argument("assemble_pose: part size mismatch");
    }
    for (std::size_t k = 0; k < joints[static_cast<std::size_t>(p)].size(); ++k) {
      const int j = joints[static_cast<std::size_t>(p)][k];
      pose.set(j, part[3 * k], part[3 * k + 1], part[3 * k + 2]);
    }
  }
  return pose;
}

diff::Tensor to_matrix(std::span<const Pose> frames) {
  diff::Tensor m(kPoseDim, static_cast<int>(frames.size()));
  for (int t = 0; t < static_cast<int>(frames.size()); ++t) {
    for (int i = 0; i < kPoseDim; ++i) m(i, t) = frames[static_cast<std::size_t>(t)].c[static_cast<std::size_t>(i)];
  }
  return m;
}

std::vector<Pose> to_poses(const diff::Tensor& m) {
  if (m.rows() != kPoseDim) {
    throw std::invalid_argument("to_poses: expected 45 rows, got " + m.shape_str());
  }
  std::vector<Pose> out(static_cast<std::size_t>(m.cols()));
  for (int t = 0; t < m.cols(); ++t) {
    for (int i = 0; i < kPoseDim; ++i) out[static_cast<std::size_t>(t)].c[static_cast<std::size_t>(i)] = m(i, t);
  }
  return out;
}

}  // namespace reactmotion::motion
