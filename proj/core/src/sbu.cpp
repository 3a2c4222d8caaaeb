#include "reactmotion/sbu.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace reactmotion::motion {

namespace {

constexpr int kFieldsPerLine = 1 + 2 * kPoseDim;  // frame index + A + B

double parse_field(const std::string& field, int line_no, int field_no) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end) {
    throw ParseError("sbu line " + std::to_string(line_no) + ": field " +
                     std::to_string(field_no + 1) + " is not numeric: '" + field + "'");
  }
  return value;
}

void apply_prescale(Pose& p, const AffinePrescale& ps) {
  for (int j = 0; j < kJointCount; ++j) {
    p.set(j, ps.scale[0] * p.x(j) + ps.offset[0], ps.scale[1] * p.y(j) + ps.offset[1],
          ps.scale[2] * p.z(j) + ps.offset[2]);
  }
}

// SBU category directories, in dataset numbering.
const std::map<std::string, std::string> kSbuCategories = {
    {"01", "approach"}, {"02", "depart"},   {"03", "push"},
    {"04", "kick"},     {"05", "punch"},    {"06", "exchange-objects"},
    {"07", "hug"},      {"08", "shake-hands"}};

}  // namespace

InteractionClip parse_sbu_clip(std::istream& in, int label,
                               const std::array<std::string, 2>& subjects,
                               const std::optional<AffinePrescale>& prescale) {
  InteractionClip clip;
  clip.label = label;
  clip.subjects = subjects;
  clip.source = "sbu";

  std::string line;
  int line_no = 0;
  double prev_frame = 0.0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    // tolerate blank lines and trailing CR
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (static_cast<int>(fields.size()) != kFieldsPerLine) {
      throw ParseError("sbu line " + std::to_string(line_no) + ": expected " +
                       std::to_string(kFieldsPerLine) + " comma-separated fields, got " +
                       std::to_string(fields.size()));
    }

    const double frame = parse_field(fields[0], line_no, 0);
    if (!first && frame <= prev_frame) {
      throw ParseError("sbu line " + std::to_string(line_no) +
                       ": frame index not strictly increasing");
    }
    prev_frame = frame;
    first = false;

    Pose a, b;
    for (int i = 0; i < kPoseDim; ++i) {
      a.c[static_cast<std::size_t>(i)] = parse_field(fields[static_cast<std::size_t>(1 + i)], line_no, 1 + i);
      b.c[static_cast<std::size_t>(i)] = parse_field(fields[static_cast<std::size_t>(1 + kPoseDim + i)], line_no, 1 + kPoseDim + i);
    }
    if (prescale) {
      apply_prescale(a, *prescale);
      apply_prescale(b, *prescale);
    }
    clip.motion_a.push_back(a);
    clip.motion_b.push_back(b);
  }
  if (clip.motion_a.empty()) throw ParseError("sbu: stream holds no frames");
  return clip;
}

SbuImportResult import_sbu_tree(const std::string& root, const SbuImportOptions& options) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) throw ParseError("import_sbu: '" + root + "' is not a directory");

  std::vector<std::string> categories;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) categories.push_back(entry.path().filename().string());
  }
  std::sort(categories.begin(), categories.end());

  SbuImportResult result;
  int next_label = 0;
  for (const std::string& cat : categories) {
    std::string class_name = cat;
    if (auto it = kSbuCategories.find(cat); it != kSbuCategories.end()) class_name = it->second;
    if (!options.include_all && (class_name == "approach" || class_name == "depart")) {
      result.skipped.push_back(cat);
      continue;
    }
    const int label = ++next_label;
    result.class_names.push_back(class_name);

    const fs::path cat_dir = fs::path(root) / cat;
    std::vector<fs::path> pair_dirs;
    for (const auto& e : fs::directory_iterator(cat_dir)) {
      if (e.is_directory()) pair_dirs.push_back(e.path());
    }
    std::sort(pair_dirs.begin(), pair_dirs.end());
    for (const fs::path& pair_dir : pair_dirs) {
      // participant pair directory, e.g. "s01s02" -> subjects s01, s02
      const std::string pair = pair_dir.filename().string();
      std::array<std::string, 2> subjects;
      if (pair.size() >= 6 && pair.size() % 2 == 0) {
        subjects = {pair.substr(0, pair.size() / 2), pair.substr(pair.size() / 2)};
      } else {
        subjects = {pair, pair};
      }
      std::vector<fs::path> take_dirs;
      for (const auto& e : fs::directory_iterator(pair_dir)) {
        if (e.is_directory()) take_dirs.push_back(e.path());
      }
      std::sort(take_dirs.begin(), take_dirs.end());
      for (const fs::path& take : take_dirs) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(take)) {
          if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) continue;
        std::ifstream f(files.front());
        if (!f) throw ParseError("import_sbu: cannot open '" + files.front().string() + "'");
        try {
          InteractionClip clip = parse_sbu_clip(f, label, subjects, options.prescale);
          clip.class_name = class_name;
          clip.fps = options.fps;
          result.clips.push_back(std::move(clip));
        } catch (const ParseError& e) {
          throw ParseError(files.front().string() + ": " + e.what());
        }
      }
    }
  }
  return result;
}

}  // namespace reactmotion::motion
