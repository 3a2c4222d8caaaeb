#pragma once

#include <array>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "reactmotion/clip.hpp"

namespace reactmotion::motion {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Optional per-axis affine pre-scale c' = s * c + o applied while importing
/// (SBU ships normalized device coordinates; conversion to meters is left to
/// the caller).
struct AffinePrescale {
  std::array<double, 3> scale{1, 1, 1};
  std::array<double, 3> offset{0, 0, 0};
};

/// Parses one SBU skeleton text stream: each non-empty line carries 91
/// comma-separated fields, frame index followed by 45 floats for character A
/// (the "active" agent) and 45 for character B. Frame indices must be
/// strictly increasing. Errors carry the offending line number.
InteractionClip parse_sbu_clip(std::istream& in, int label,
                               const std::array<std::string, 2>& subjects,
                               const std::optional<AffinePrescale>& prescale = std::nullopt);

/// Category directory -> (label, class name) for the six interaction classes
/// kept for training ("approach" and "depart" carry no reactive movement and
/// are excluded unless include_all is set).
struct SbuImportOptions {
  std::optional<AffinePrescale> prescale;
  bool include_all = false;
  double fps = 15.0;
};

struct SbuImportResult {
  std::vector<InteractionClip> clips;
  std::vector<std::string> class_names;  // index = label - 1
  std::vector<std::string> skipped;      // category dirs excluded
};

/// Walks root/<category>/<participant-pair>/<take>/*.txt. Category dirs are
/// the SBU numbers 01..08; the participant pair "s01s02" names the subjects.
SbuImportResult import_sbu_tree(const std::string& root, const SbuImportOptions& options = {});

}  // namespace reactmotion::motion
