#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tgraph/feature_store.hpp"

namespace tgraph {

enum class CachePolicy : std::uint8_t { kLRU = 0, kLFU = 1, kFIFO = 2 };

std::string to_string(CachePolicy policy);
CachePolicy parse_cache_policy(const std::string& name);

using CacheKey = std::uint64_t;
// Marks an unoccupied slot; this key value cannot be cached.
inline constexpr CacheKey kEmptySlot = std::numeric_limits<CacheKey>::max();

struct CacheConfig {
  CachePolicy policy = CachePolicy::kLRU;
  std::size_t capacity = 0;
  std::size_t dim = 0;
  double lambda = 0.2;  // max fraction of capacity replaced per insert_batch
};

struct FetchResult {
  Matrix values;                   // hit rows filled, miss rows zero
  std::vector<std::uint8_t> hit;   // per requested key
  std::vector<CacheKey> miss_keys; // distinct, first-occurrence order
};

struct InsertResult {
  std::size_t inserted = 0;
  std::size_t evicted = 0;
};

struct CacheStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t evictions = 0;
  double hit_rate = 0.0;
};

struct CacheSnapshot {
  CacheConfig config;
  std::vector<CacheKey> keys;
  std::vector<std::int64_t> scores;
  std::uint64_t fifo_head = 0;
  std::vector<float> storage;

  friend bool operator==(const CacheSnapshot& a, const CacheSnapshot& b) {
    return a.config.policy == b.config.policy && a.config.capacity == b.config.capacity &&
           a.config.dim == b.config.dim && a.config.lambda == b.config.lambda &&
           a.keys == b.keys && a.scores == b.scores && a.fifo_head == b.fifo_head &&
           a.storage == b.storage;
  }
};

inline constexpr char kCacheMagic[] = "TGCS";
inline constexpr std::uint32_t kCacheVersion = 1;

// Slot-array feature cache whose bookkeeping is a per-slot score vector, so a
// whole batch of keys is looked up and scored in one pass.
//
//   LRU  score = -(fetch batches since last access); each fetch decrements
//        every score once, then resets the hit slots to 0.
//   LFU  score = access count; a fetch adds each key's multiplicity.
//   FIFO ring buffer; fifo_head is the next slot to overwrite.
//
// Victims are the lowest (score, slot) pairs. One insert_batch call writes at
// most insert_limit() entries. Not thread-safe; one owner at a time.
class VectorCache {
 public:
  explicit VectorCache(CacheConfig config);

  FetchResult fetch(std::span<const CacheKey> keys);
  // Keys already cached, duplicated in the batch, or beyond the insert limit
  // are skipped; the batch is consumed front to back.
  InsertResult insert_batch(std::span<const CacheKey> keys, const Matrix& values);

  [[nodiscard]] CacheSnapshot snapshot() const;
  void restore(const CacheSnapshot& snap);

  void persist(std::ostream& out) const;
  static VectorCache load(std::istream& in);

  [[nodiscard]] CacheStats stats() const;
  void reset_stats() { stats_ = {}; }

  [[nodiscard]] const CacheConfig& config() const { return config_; }
  [[nodiscard]] std::size_t size() const { return slot_of_.size(); }
  [[nodiscard]] std::size_t insert_limit() const;
  [[nodiscard]] bool contains(CacheKey key) const { return slot_of_.contains(key); }
  [[nodiscard]] std::span<const CacheKey> slot_keys() const { return keys_; }
  [[nodiscard]] std::span<const std::int64_t> scores() const { return scores_; }
  [[nodiscard]] std::uint64_t fifo_head() const { return fifo_head_; }

 private:
  void place(std::size_t slot, CacheKey key, std::span<const float> row);

  CacheConfig config_;
  std::vector<CacheKey> keys_;
  std::vector<std::int64_t> scores_;
  std::unordered_map<CacheKey, std::size_t> slot_of_;
  std::uint64_t fifo_head_ = 0;
  std::vector<float> storage_;
  CacheStats stats_;
};

}  // namespace tgraph
