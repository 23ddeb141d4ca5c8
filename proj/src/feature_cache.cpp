#include "tgraph/feature_cache.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "tgraph/binary_io.hpp"

namespace tgraph {

std::string to_string(CachePolicy policy) {
  switch (policy) {
    case CachePolicy::kLRU: return "lru";
    case CachePolicy::kLFU: return "lfu";
    case CachePolicy::kFIFO: return "fifo";
  }
  return "unknown";
}

CachePolicy parse_cache_policy(const std::string& name) {
  if (name == "lru" || name == "LRU") return CachePolicy::kLRU;
  if (name == "lfu" || name == "LFU") return CachePolicy::kLFU;
  if (name == "fifo" || name == "FIFO") return CachePolicy::kFIFO;
  throw ConfigError("unknown cache policy '" + name + "'");
}

VectorCache::VectorCache(CacheConfig config) : config_(config) {
  if (!(config_.lambda > 0.0 && config_.lambda <= 1.0)) {
    throw ConfigError("cache lambda must be in (0, 1]");
  }
  if (static_cast<std::uint8_t>(config_.policy) > 2) throw ConfigError("unknown cache policy");
  keys_.assign(config_.capacity, kEmptySlot);
  scores_.assign(config_.capacity, 0);
  storage_.assign(config_.capacity * config_.dim, 0.0F);
}

std::size_t VectorCache::insert_limit() const {
  if (config_.capacity == 0) return 0;
  const auto cap = static_cast<std::size_t>(
      std::floor(config_.lambda * static_cast<double>(config_.capacity)));
  return std::max<std::size_t>(cap, 1);
}

FetchResult VectorCache::fetch(std::span<const CacheKey> keys) {
  FetchResult out{Matrix(keys.size(), config_.dim), std::vector<std::uint8_t>(keys.size(), 0), {}};
  if (keys.empty()) return out;

  if (config_.policy == CachePolicy::kLRU) {
    for (auto& s : scores_) --s;
  }
  std::unordered_set<CacheKey> missed;
  std::uint64_t hits = 0;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto it = slot_of_.find(keys[i]);
    if (it == slot_of_.end()) {
      if (missed.insert(keys[i]).second) out.miss_keys.push_back(keys[i]);
      continue;
    }
    const std::size_t slot = it->second;
    out.hit[i] = 1;
    ++hits;
    auto src = storage_.begin() + static_cast<std::ptrdiff_t>(slot * config_.dim);
    std::copy(src, src + static_cast<std::ptrdiff_t>(config_.dim), out.values.row(i).begin());
    switch (config_.policy) {
      case CachePolicy::kLRU: scores_[slot] = 0; break;
      case CachePolicy::kLFU: ++scores_[slot]; break;
      case CachePolicy::kFIFO: break;
    }
  }
  stats_.hits += hits;
  stats_.misses += keys.size() - hits;
  return out;
}

void VectorCache::place(std::size_t slot, CacheKey key, std::span<const float> row) {
  if (keys_[slot] != kEmptySlot) {
    slot_of_.erase(keys_[slot]);
    ++stats_.evictions;
  }
  keys_[slot] = key;
  slot_of_[key] = slot;
  scores_[slot] = config_.policy == CachePolicy::kLFU ? 1 : 0;
  std::copy(row.begin(), row.end(),
            storage_.begin() + static_cast<std::ptrdiff_t>(slot * config_.dim));
}

InsertResult VectorCache::insert_batch(std::span<const CacheKey> keys, const Matrix& values) {
  if (values.rows() != keys.size()) throw ArgumentError("values must be row-matched with keys");
  if (!keys.empty() && values.cols() != config_.dim) {
    throw ArgumentError("value dimension " + std::to_string(values.cols()) +
                        " does not match cache dimension " + std::to_string(config_.dim));
  }

  const std::size_t limit = insert_limit();
  std::vector<std::size_t> accepted;  // row indices into keys/values
  std::unordered_set<CacheKey> batch;
  for (std::size_t i = 0; i < keys.size() && accepted.size() < limit; ++i) {
    if (keys[i] == kEmptySlot || slot_of_.contains(keys[i])) continue;
    if (!batch.insert(keys[i]).second) continue;
    accepted.push_back(i);
  }
  InsertResult result{accepted.size(), 0};
  if (accepted.empty()) return result;

  std::vector<std::size_t> targets;
  targets.reserve(accepted.size());
  if (config_.policy == CachePolicy::kFIFO) {
    for (std::size_t k = 0; k < accepted.size(); ++k) {
      targets.push_back(fifo_head_);
      fifo_head_ = (fifo_head_ + 1) % config_.capacity;
    }
  } else {
    for (std::size_t s = 0; s < config_.capacity && targets.size() < accepted.size(); ++s) {
      if (keys_[s] == kEmptySlot) targets.push_back(s);
    }
    const std::size_t needed = accepted.size() - targets.size();
    if (needed > 0) {
      std::vector<std::pair<std::int64_t, std::size_t>> ranked;
      ranked.reserve(slot_of_.size());
      for (std::size_t s = 0; s < config_.capacity; ++s) {
        if (keys_[s] != kEmptySlot) ranked.emplace_back(scores_[s], s);
      }
      std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(needed),
                        ranked.end());
      for (std::size_t k = 0; k < needed; ++k) targets.push_back(ranked[k].second);
    }
  }

  for (std::size_t k = 0; k < accepted.size(); ++k) {
    if (keys_[targets[k]] != kEmptySlot) ++result.evicted;
    place(targets[k], keys[accepted[k]], values.row(accepted[k]));
  }
  return result;
}

CacheSnapshot VectorCache::snapshot() const {
  return {config_, keys_, scores_, fifo_head_, storage_};
}

void VectorCache::restore(const CacheSnapshot& snap) {
  if (snap.config.policy != config_.policy || snap.config.capacity != config_.capacity ||
      snap.config.dim != config_.dim) {
    throw ArgumentError("snapshot was taken from a cache with a different shape");
  }
  if (snap.keys.size() != config_.capacity || snap.scores.size() != config_.capacity ||
      snap.storage.size() != config_.capacity * config_.dim) {
    throw ArgumentError("snapshot arrays are inconsistent with its configuration");
  }
  keys_ = snap.keys;
  scores_ = snap.scores;
  fifo_head_ = snap.fifo_head;
  storage_ = snap.storage;
  slot_of_.clear();
  for (std::size_t s = 0; s < keys_.size(); ++s) {
    if (keys_[s] != kEmptySlot) slot_of_[keys_[s]] = s;
  }
}

void VectorCache::persist(std::ostream& out) const {
  io::ByteWriter w;
  w.magic(kCacheMagic);
  w.put(kCacheVersion);
  w.put(static_cast<std::uint8_t>(config_.policy));
  w.put(static_cast<std::uint64_t>(config_.capacity));
  w.put(static_cast<std::uint32_t>(config_.dim));
  w.put_f64(config_.lambda);
  for (auto k : keys_) w.put<std::uint64_t>(k);
  for (auto s : scores_) w.put<std::int64_t>(s);
  w.put<std::uint64_t>(fifo_head_);
  for (float v : storage_) w.put_f32(v);
  out.write(w.bytes().data(), static_cast<std::streamsize>(w.size()));
  out.flush();
  if (!out) throw IoError("cache snapshot write failed");
}

VectorCache VectorCache::load(std::istream& in) {
  const std::string data = io::read_all(in);
  io::ByteReader r(data);
  r.expect_magic(kCacheMagic);
  if (const auto v = r.get<std::uint32_t>(); v != kCacheVersion) {
    throw FormatError("unsupported cache snapshot version " + std::to_string(v));
  }
  CacheConfig config;
  const auto policy = r.get<std::uint8_t>();
  if (policy > 2) throw FormatError("unknown cache policy in snapshot");
  config.policy = static_cast<CachePolicy>(policy);
  config.capacity = r.get<std::uint64_t>();
  config.dim = r.get<std::uint32_t>();
  config.lambda = r.get_f64();
  if (!(config.lambda > 0.0 && config.lambda <= 1.0)) throw FormatError("bad lambda in snapshot");
  const std::uint64_t per_slot = 16 + static_cast<std::uint64_t>(config.dim) * 4;
  if (config.capacity > r.remaining() / per_slot) throw FormatError("truncated cache snapshot");

  CacheSnapshot snap;
  snap.config = config;
  snap.keys.resize(config.capacity);
  snap.scores.resize(config.capacity);
  snap.storage.resize(config.capacity * config.dim);
  for (auto& k : snap.keys) k = r.get<std::uint64_t>();
  for (auto& s : snap.scores) s = r.get<std::int64_t>();
  snap.fifo_head = r.get<std::uint64_t>();
  for (auto& v : snap.storage) v = r.get_f32();
  if (!r.done()) throw FormatError("trailing bytes in cache snapshot");
  if (config.capacity > 0 && snap.fifo_head >= config.capacity) {
    throw FormatError("fifo head out of range");
  }
  std::unordered_set<CacheKey> seen;
  for (auto k : snap.keys) {
    if (k != kEmptySlot && !seen.insert(k).second) throw FormatError("duplicate key in snapshot");
  }

  VectorCache cache(config);
  cache.restore(snap);
  return cache;
}

CacheStats VectorCache::stats() const {
  CacheStats s = stats_;
  const auto total = s.hits + s.misses;
  s.hit_rate = total == 0 ? 0.0 : static_cast<double>(s.hits) / static_cast<double>(total);
  return s;
}

}  // namespace tgraph
