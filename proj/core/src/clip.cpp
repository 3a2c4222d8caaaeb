#include "reactmotion/clip.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace reactmotion::motion {

using nlohmann::json;

void InteractionClip::validate() const {
  if (motion_a.size() != motion_b.size()) {
    throw ClipError("clip: motionA length " + std::to_string(motion_a.size()) +
                    " != motionB length " + std::to_string(motion_b.size()));
  }
  if (motion_a.size() < 2) throw ClipError("clip: length must be >= 2");
  if (label < 1) throw ClipError("clip: label must be >= 1");
  for (const Pose& p : motion_a) {
    if (!p.all_finite()) throw ClipError("clip: non-finite coordinate in motionA");
  }
  for (const Pose& p : motion_b) {
    if (!p.all_finite()) throw ClipError("clip: non-finite coordinate in motionB");
  }
}

namespace {

json frames_to_json(const std::vector<Pose>& frames) {
  json rows = json::array();
  for (const Pose& p : frames) {
    json row = json::array();
    for (double v : p.c) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Pose> frames_from_json(const json& rows, const char* field) {
  if (!rows.is_array()) throw ClipError(std::string("clip json: ") + field + " must be an array");
  std::vector<Pose> out;
  out.reserve(rows.size());
  for (const json& row : rows) {
    if (!row.is_array() || row.size() != kPoseDim) {
      throw ClipError(std::string("clip json: every ") + field + " row must hold 45 numbers");
    }
    Pose p;
    for (int i = 0; i < kPoseDim; ++i) p.c[static_cast<std::size_t>(i)] = row[static_cast<std::size_t>(i)].get<double>();
    out.push_back(p);
  }
  return out;
}

}  // namespace

std::string clip_to_json(const InteractionClip& clip) {
  json doc;
  doc["version"] = 1;
  doc["source"] = clip.source;
  doc["label"] = clip.label;
  doc["class-name"] = clip.class_name;
  doc["subjects"] = {clip.subjects[0], clip.subjects[1]};
  doc["fps"] = clip.fps;
  doc["frames-A"] = frames_to_json(clip.motion_a);
  doc["frames-B"] = frames_to_json(clip.motion_b);
  return doc.dump(1);
}

InteractionClip clip_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ClipError(std::string("clip json: ") + e.what());
  }
  if (!doc.contains("version") || doc["version"].get<int>() != 1) {
    throw ClipError("clip json: missing or unsupported version");
  }
  InteractionClip clip;
  clip.source = doc.value("source", std::string());
  clip.label = doc.at("label").get<int>();
  clip.class_name = doc.value("class-name", std::string());
  const auto& subs = doc.at("subjects");
  if (!subs.is_array() || subs.size() != 2) throw ClipError("clip json: subjects must be a pair");
  clip.subjects = {subs[0].get<std::string>(), subs[1].get<std::string>()};
  clip.fps = doc.value("fps", 15.0);
  clip.motion_a = frames_from_json(doc.at("frames-A"), "frames-A");
  clip.motion_b = frames_from_json(doc.at("frames-B"), "frames-B");
  clip.validate();
  return clip;
}

void save_clip(const InteractionClip& clip, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ClipError("cannot open '" + path + "' for writing");
  f << clip_to_json(clip) << "\n";
  if (!f) throw ClipError("write failed for '" + path + "'");
}

InteractionClip load_clip(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ClipError("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  try {
    return clip_from_json(text);
  } catch (const ClipError& e) {
    throw ClipError(path + ": " + e.what());
  }
}

std::vector<InteractionClip> load_clip_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ClipError("'" + dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<InteractionClip> clips;
  clips.reserve(files.size());
  for (const auto& p : files) clips.push_back(load_clip(p.string()));
  return clips;
}

std::vector<InteractionClip> window_clip(const InteractionClip& clip, int size, int stride) {
  if (size < 2) throw ClipError("window_clip: size must be >= 2");
  if (stride < 1) throw ClipError("window_clip: stride must be >= 1");
  std::vector<InteractionClip> windows;
  const int n = clip.length();
  for (int start = 0; start + size <= n; start += stride) {
    InteractionClip w = clip;
    w.motion_a.assign(clip.motion_a.begin() + start, clip.motion_a.begin() + start + size);
    w.motion_b.assign(clip.motion_b.begin() + start, clip.motion_b.begin() + start + size);
    windows.push_back(std::move(w));
  }
  return windows;
}

LosoSplit split_loso(const std::vector<InteractionClip>& dataset, const std::string& subject) {
  LosoSplit split;
  bool seen = false;
  for (const InteractionClip& clip : dataset) {
    if (clip.involves(subject)) {
      seen = true;
      split.test.push_back(clip);
    } else {
      split.train.push_back(clip);
    }
  }
  if (!seen) throw ClipError("split_loso: subject '" + subject + "' appears in no clip");
  return split;
}

}  // namespace reactmotion::motion
