#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "reactmotion/rng.hpp"
#include "reactmotion/tensor.hpp"

namespace reactmotion::diff {

/// Named trainable parameters. Iteration order is the (deterministic)
/// insertion order, so two stores built by the same code path agree
/// entry for entry.
class ParamStore {
 public:
  ParamStore() = default;
  explicit ParamStore(std::uint64_t seed) : seed_(seed) {}

  Tensor& add(std::string name, Tensor value);
  /// Weight initialised uniformly in [-1/sqrt(fan_in), +1/sqrt(fan_in)].
  Tensor& add_uniform(std::string name, int rows, int cols, int fan_in, Rng& rng);

  bool contains(std::string_view name) const;
  int index_of(std::string_view name) const;  // -1 if absent
  Tensor& at(std::string_view name);
  const Tensor& at(std::string_view name) const;
  Tensor& at_index(int i) { return values_[static_cast<std::size_t>(i)]; }
  const Tensor& at_index(int i) const { return values_[static_cast<std::size_t>(i)]; }

  int size() const { return static_cast<int>(values_.size()); }
  const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }

  std::uint64_t seed() const { return seed_; }
  void set_seed(std::uint64_t s) { seed_ = s; }

  /// Total number of scalar entries across all parameters.
  long long entry_count() const;

 private:
  std::vector<std::string> names_;
  std::vector<Tensor> values_;
  std::unordered_map<std::string, int> index_;
  std::uint64_t seed_ = 0;
};

/// Per-parameter gradient arrays, index-aligned with a ParamStore.
/// Parameters never touched by a backward pass keep zero gradients.
class Gradients {
 public:
  explicit Gradients(const ParamStore& store);

  Tensor& at(std::string_view name);
  const Tensor& at(std::string_view name) const;
  Tensor& at_index(int i) { return g_[static_cast<std::size_t>(i)]; }
  const Tensor& at_index(int i) const { return g_[static_cast<std::size_t>(i)]; }
  int size() const { return static_cast<int>(g_.size()); }
  const ParamStore& store() const { return *store_; }

  /// Euclidean norm over entries of parameters whose name starts with
  /// `prefix` (all parameters when empty).
  double global_norm(std::string_view prefix = "") const;
  /// Scales matching gradients so their global norm is at most max_norm.
  /// Returns the pre-clip norm.
  double clip_global_norm(double max_norm, std::string_view prefix = "");

  /// Name of the first parameter with a non-finite gradient entry, or "".
  std::string first_non_finite() const;

 private:
  const ParamStore* store_;
  std::vector<Tensor> g_;
};

// Parameter checkpoint container (versioned binary layout; see
// docs/formats.md). Holds every parameter plus the seed and config hash and
// an embedded copy of the resolved run configuration document.
struct Checkpoint {
  ParamStore params;
  std::uint64_t config_hash = 0;
  std::string config_json;
};

std::string checkpoint_bytes(const ParamStore& params, std::uint64_t config_hash,
                             const std::string& config_json);
void save_checkpoint(const ParamStore& params, std::uint64_t config_hash,
                     const std::string& config_json, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);
Checkpoint parse_checkpoint(std::string_view bytes);

}  // namespace reactmotion::diff
