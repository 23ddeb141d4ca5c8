#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace tgraph {

using NodeId = std::uint64_t;
using EdgeId = std::uint64_t;
// Caller-defined granularity (seconds, milliseconds, ...).
using Timestamp = std::int64_t;

inline constexpr Timestamp kMinTimestamp = std::numeric_limits<Timestamp>::min();
inline constexpr Timestamp kMaxTimestamp = std::numeric_limits<Timestamp>::max();

enum class Directedness : std::uint8_t { kDirected = 0, kUndirected = 1 };

struct TemporalEdge {
  NodeId src = 0;
  NodeId dst = 0;
  Timestamp timestamp = 0;

  friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

// A group of edges ingested together. When `edge_ids` is empty the graph
// assigns fresh ids; otherwise it must be row-matched with `edges` and
// strictly increasing (used when a dispatcher pre-assigns global ids).
struct InsertionBatch {
  std::vector<TemporalEdge> edges;
  std::vector<EdgeId> edge_ids;

  [[nodiscard]] std::size_t size() const { return edges.size(); }
  [[nodiscard]] bool empty() const { return edges.empty(); }
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotFoundError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Malformed or truncated input (files, wire messages, CSV rows).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tgraph
