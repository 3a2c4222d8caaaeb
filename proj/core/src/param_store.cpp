#include "reactmotion/param_store.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <utility>

namespace reactmotion::diff {

Tensor& ParamStore::add(std::string name, Tensor value) {
  if (index_.count(name) != 0) {
    throw std::logic_error("ParamStore: duplicate parameter '" + name + "'");
  }
  index_.emplace(name, static_cast<int>(values_.size()));
  names_.push_back(std::move(name));
  values_.push_back(std::move(value));
  return values_.back();
}

Tensor& ParamStore::add_uniform(std::string name, int rows, int cols, int fan_in, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  Tensor t(rows, cols);
  for (int i = 0; i < t.size(); ++i) t[i] = rng.uniform(-bound, bound);
  return add(std::move(name), std::move(t));
}

bool ParamStore::contains(std::string_view name) const {
  return index_.find(std::string(name)) != index_.end();
}

int ParamStore::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? -1 : it->second;
}

Tensor& ParamStore::at(std::string_view name) {
  const int i = index_of(name);
  if (i < 0) throw std::out_of_range("ParamStore: unknown parameter '" + std::string(name) + "'");
  return values_[static_cast<std::size_t>(i)];
}

const Tensor& ParamStore::at(std::string_view name) const {
  const int i = index_of(name);
  if (i < 0) throw std::out_of_range("ParamStore: unknown parameter '" + std::string(name) + "'");
  return values_[static_cast<std::size_t>(i)];
}

long long ParamStore::entry_count() const {
  long long n = 0;
  for (const Tensor& t : values_) n += t.size();
  return n;
}

Gradients::Gradients(const ParamStore& store) : store_(&store) {
  g_.reserve(static_cast<std::size_t>(store.size()));
  for (int i = 0; i < store.size(); ++i) g_.push_back(Tensor::zeros_like(store.at_index(i)));
}

Tensor& Gradients::at(std::string_view name) {
  const int i = store_->index_of(name);
  if (i < 0) throw std::out_of_range("Gradients: unknown parameter '" + std::string(name) + "'");
  return g_[static_cast<std::size_t>(i)];
}

const Tensor& Gradients::at(std::string_view name) const {
  return const_cast<Gradients*>(this)->at(name);
}

double Gradients::global_norm(std::string_view prefix) const {
  double ss = 0.0;
  for (int i = 0; i < size(); ++i) {
    if (!store_->name(i).starts_with(prefix)) continue;
    ss += g_[static_cast<std::size_t>(i)].squared_norm();
  }
  return std::sqrt(ss);
}

double Gradients::clip_global_norm(double max_norm, std::string_view prefix) {
  const double norm = global_norm(prefix);
  if (norm > max_norm && norm > 0.0) {
    const double s = max_norm / norm;
    for (int i = 0; i < size(); ++i) {
      if (!store_->name(i).starts_with(prefix)) continue;
      Tensor& t = g_[static_cast<std::size_t>(i)];
      for (int j = 0; j < t.size(); ++j) t[j] *= s;
    }
  }
  return norm;
}

std::string Gradients::first_non_finite() const {
  for (int i = 0; i < size(); ++i) {
    if (!g_[static_cast<std::size_t>(i)].all_finite()) return store_->name(i);
  }
  return "";
}

namespace {

constexpr char kMagic[4] = {'R', 'M', 'C', 'P'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
T take(std::string_view bytes, std::size_t& pos) {
  if (pos + sizeof(T) > bytes.size()) {
    throw std::runtime_error("checkpoint: truncated file");
  }
  T v;
  std::memcpy(&v, bytes.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

}  // namespace

std::string checkpoint_bytes(const ParamStore& params, std::uint64_t config_hash,
                             const std::string& config_json) {
  std::string out;
  out.append(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kVersion);
  put<std::uint64_t>(out, params.seed());
  put<std::uint64_t>(out, config_hash);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(config_json.size()));
  out.append(config_json);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(params.size()));
  for (int i = 0; i < params.size(); ++i) {
    const std::string& name = params.name(i);
    const Tensor& t = params.at_index(i);
    put<std::uint16_t>(out, static_cast<std::uint16_t>(name.size()));
    out.append(name);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(t.rows()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(t.cols()));
    for (int j = 0; j < t.size(); ++j) put<double>(out, t[j]);
  }
  return out;
}

Checkpoint parse_checkpoint(std::string_view bytes) {
  std::size_t pos = 0;
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw std::runtime_error("checkpoint: bad magic");
  }
  pos += 4;
  const auto version = take<std::uint32_t>(bytes, pos);
  if (version != kVersion) {
    throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));
  }
  Checkpoint ck;
  const auto seed = take<std::uint64_t>(bytes, pos);
  ck.config_hash = take<std::uint64_t>(bytes, pos);
  const auto json_len = take<std::uint32_t>(bytes, pos);
  if (pos + json_len > bytes.size()) throw std::runtime_error("checkpoint: truncated config");
  ck.config_json.assign(bytes.data() + pos, json_len);
  pos += json_len;
  const auto count = take<std::uint32_t>(bytes, pos);
  ck.params.set_seed(seed);
  for (std::uint32_t p = 0; p < count; ++p) {
    const auto name_len = take<std::uint16_t>(bytes, pos);
    if (pos + name_len > bytes.size()) throw std::runtime_error("checkpoint: truncated name");
    std::string name(bytes.data() + pos, name_len);
    pos += name_len;
    const auto rows = static_cast<int>(take<std::uint32_t>(bytes, pos));
    const auto cols = static_cast<int>(take<std::uint32_t>(bytes, pos));
    Tensor t(rows, cols);
    for (int j = 0; j < t.size(); ++j) t[j] = take<double>(bytes, pos);
    ck.params.add(std::move(name), std::move(t));
  }
  return ck;
}

void save_checkpoint(const ParamStore& params, std::uint64_t config_hash,
                     const std::string& config_json, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("checkpoint: cannot open '" + path + "' for writing");
  const std::string bytes = checkpoint_bytes(params, config_hash, config_json);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("checkpoint: write failed for '" + path + "'");
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("checkpoint: cannot open '" + path + "'");
  std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return parse_checkpoint(bytes);
}

}  // namespace reactmotion::diff
