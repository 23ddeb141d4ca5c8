#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tgraph/graph_store.hpp"
#include "tgraph/types.hpp"

namespace tgraph {

enum class PolicyKind : std::uint8_t { kRecent = 0, kUniform = 1, kTimeWindow = 2 };

std::string to_string(PolicyKind kind);
PolicyKind parse_policy_kind(const std::string& name);

struct SamplingPolicy {
  PolicyKind kind = PolicyKind::kRecent;
  Timestamp delta = 0;  // TimeWindow only: the window is [t - delta, t)

  static SamplingPolicy recent() { return {PolicyKind::kRecent, 0}; }
  static SamplingPolicy uniform() { return {PolicyKind::kUniform, 0}; }
  static SamplingPolicy time_window(Timestamp delta) { return {PolicyKind::kTimeWindow, delta}; }

  void validate() const;

  friend bool operator==(const SamplingPolicy&, const SamplingPolicy&) = default;
};

struct SampleRequest {
  std::vector<NodeId> targets;
  std::vector<Timestamp> timestamps;  // query time per target
  std::vector<std::uint32_t> fanouts;  // one entry per hop
  SamplingPolicy policy;
  std::uint64_t seed = 0;
};

// One hop of a k-hop sample. Source i's picks are the half-open range
// [offsets[i], offsets[i+1]) of the neighbor/edge arrays.
struct SampleLayer {
  std::vector<NodeId> source_nodes;
  std::vector<Timestamp> source_times;
  std::vector<std::uint64_t> offsets{0};
  std::vector<NodeId> neighbors;
  std::vector<EdgeId> edge_ids;
  std::vector<Timestamp> timestamps;

  [[nodiscard]] std::size_t num_sources() const { return source_nodes.size(); }
  [[nodiscard]] std::size_t num_sampled() const { return neighbors.size(); }

  friend bool operator==(const SampleLayer&, const SampleLayer&) = default;
};

struct LayeredSample {
  std::vector<SampleLayer> layers;

  friend bool operator==(const LayeredSample&, const LayeredSample&) = default;
};

struct WalkStep {
  NodeId node = 0;
  Timestamp timestamp = 0;

  friend bool operator==(const WalkStep&, const WalkStep&) = default;
};

struct SamplerOptions {
  unsigned workers = 1;
  // Disable to scan every block regardless of its time range (reference
  // variant for differential tests).
  bool block_skipping = true;
};

// Seed of the per-source random stream. Derived from the layer seed and the
// source's query (node, window, occurrence among identical queries in the
// layer) so that any subset of a layer, sampled anywhere, reproduces the same
// picks for the same sources.
std::uint64_t source_stream_seed(std::uint64_t layer_seed, NodeId node, Timestamp t_start,
                                 Timestamp t_end, std::uint64_t occurrence);
std::uint64_t layer_seed(std::uint64_t request_seed, std::size_t hop);

// Temporal neighborhood sampling over a DynamicGraph. The graph must not be
// mutated while a sampler call is running.
class TemporalSampler {
 public:
  explicit TemporalSampler(const DynamicGraph& graph, SamplerOptions options = {});

  // Samples up to `fanout` neighbors per source inside [t_starts[i], t_ends[i]).
  // For TimeWindow the start is replaced by t_ends[i] - delta.
  [[nodiscard]] SampleLayer sample_layer(std::span<const NodeId> sources,
                                         std::span<const Timestamp> t_starts,
                                         std::span<const Timestamp> t_ends, std::uint32_t fanout,
                                         const SamplingPolicy& policy, std::uint64_t seed) const;

  [[nodiscard]] LayeredSample sample_khop(const SampleRequest& request) const;

  // Temporal random walk; stops early when a hop has no candidates. The start
  // node itself is not part of the returned path.
  [[nodiscard]] std::vector<WalkStep> random_walk(NodeId start, Timestamp t, std::uint32_t length,
                                                  const SamplingPolicy& policy,
                                                  std::uint64_t seed) const;

  [[nodiscard]] const DynamicGraph& graph() const { return graph_; }
  [[nodiscard]] const SamplerOptions& options() const { return options_; }

 private:
  const DynamicGraph& graph_;
  SamplerOptions options_;
};

// Hop-1 window start for a target queried at time t.
Timestamp window_start(const SamplingPolicy& policy, Timestamp t);

void validate_request(const SampleRequest& request);

}  // namespace tgraph
