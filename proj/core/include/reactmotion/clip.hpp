#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "reactmotion/skeleton.hpp"

namespace reactmotion::motion {

struct ClipError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Paired active/reactive pose sequences with class label and subjects.
/// The unit of training and evaluation. Labels are 1-based; class N+1 is
/// reserved for "synthesized".
struct InteractionClip {
  std::vector<Pose> motion_a;
  std::vector<Pose> motion_b;
  int label = 1;
  std::string class_name;
  std::array<std::string, 2> subjects;
  std::string source;
  double fps = 15.0;

  int length() const { return static_cast<int>(motion_a.size()); }
  bool involves(const std::string& subject) const {
    return subjects[0] == subject || subjects[1] == subject;
  }
  /// Checks the clip invariants (equal lengths >= 2, finite, label >= 1).
  void validate() const;
};

// Canonical clip interchange document (JSON text; see docs/formats.md).
std::string clip_to_json(const InteractionClip& clip);
InteractionClip clip_from_json(const std::string& text);
void save_clip(const InteractionClip& clip, const std::string& path);
InteractionClip load_clip(const std::string& path);
/// Loads every *.json clip under a directory, sorted by filename.
std::vector<InteractionClip> load_clip_dir(const std::string& dir);

/// Sliding windows at offsets 0, stride, 2*stride, ... while a full window
/// fits. A clip shorter than `size` yields an empty list.
std::vector<InteractionClip> window_clip(const InteractionClip& clip, int size, int stride);

struct LosoSplit {
  std::vector<InteractionClip> train;
  std::vector<InteractionClip> test;
};

/// Leave-one-subject-out: test = clips involving the subject, train = rest.
/// Throws ClipError if the subject appears in no clip. An empty train set is
/// legal (degenerate fold, reported by the caller).
LosoSplit split_loso(const std::vector<InteractionClip>& dataset, const std::string& subject);

}  // namespace reactmotion::motion
