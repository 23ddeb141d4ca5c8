#include "tgraph/sampler.hpp"

#include <algorithm>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "tgraph/random.hpp"

namespace tgraph {

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kRecent: return "recent";
    case PolicyKind::kUniform: return "uniform";
    case PolicyKind::kTimeWindow: return "time_window";
  }
  return "unknown";
}

PolicyKind parse_policy_kind(const std::string& name) {
  if (name == "recent") return PolicyKind::kRecent;
  if (name == "uniform") return PolicyKind::kUniform;
  if (name == "time_window" || name == "window") return PolicyKind::kTimeWindow;
  throw ConfigError("unknown sampling policy '" + name + "'");
}

void SamplingPolicy::validate() const {
  if (kind == PolicyKind::kTimeWindow && delta <= 0) {
    throw ArgumentError("time-window sampling needs delta > 0");
  }
}

Timestamp window_start(const SamplingPolicy& policy, Timestamp t) {
  if (policy.kind != PolicyKind::kTimeWindow) return kMinTimestamp;
  // saturate instead of overflowing for very early query times
  return t < kMinTimestamp + policy.delta ? kMinTimestamp : t - policy.delta;
}

std::uint64_t layer_seed(std::uint64_t request_seed, std::size_t hop) {
  return hash_combine(request_seed, 0xC0FFEEULL + hop);
}

std::uint64_t source_stream_seed(std::uint64_t layer_seed, NodeId node, Timestamp t_start,
                                 Timestamp t_end, std::uint64_t occurrence) {
  std::uint64_t h = hash_combine(layer_seed, node);
  h = hash_combine(h, static_cast<std::uint64_t>(t_start));
  h = hash_combine(h, static_cast<std::uint64_t>(t_end));
  return hash_combine(h, occurrence);
}

void validate_request(const SampleRequest& request) {
  if (request.targets.size() != request.timestamps.size()) {
    throw ArgumentError("targets and timestamps differ in length");
  }
  for (auto f : request.fanouts) {
    if (f == 0) throw ArgumentError("every fanout must be >= 1");
  }
  request.policy.validate();
}

namespace {

struct Candidate {
  NodeId neighbor;
  EdgeId edge_id;
  Timestamp timestamp;
};

// Output of one contiguous chunk of sources.
struct ChunkResult {
  std::vector<std::uint64_t> counts;
  std::vector<NodeId> neighbors;
  std::vector<EdgeId> edge_ids;
  std::vector<Timestamp> timestamps;
};

struct SourceQuery {
  NodeId node;
  Timestamp t_start;
  Timestamp t_end;
  std::uint64_t stream_seed;
};

class SourceSampler {
 public:
  SourceSampler(const DynamicGraph& g, std::uint32_t fanout, PolicyKind kind, bool skip)
      : g_(g), fanout_(fanout), kind_(kind), skip_(skip) {}

  void run(const SourceQuery& q, ChunkResult& out) {
    candidates_.clear();
    std::uint64_t picked = 0;
    if (g_.is_live(q.node) && q.t_start < q.t_end) {
      collect(q);
      picked = select(q.stream_seed, out);
    }
    out.counts.push_back(picked);
  }

  void flush_counters() const { g_.record_access(meta_reads_, edge_reads_); }

 private:
  // Walks the list newest-to-oldest, so candidates come out ordered by
  // descending timestamp and, within a timestamp, descending edge id.
  void collect(const SourceQuery& q) {
    const bool early_stop = kind_ == PolicyKind::kRecent;
    const NodeEntry& ne = g_.node_entry(q.node);
    ++meta_reads_;
    for (BlockHandle h = ne.tail; h != kNoBlock;) {
      const BlockMeta& b = g_.block(h);
      ++meta_reads_;
      if (skip_) {
        if (q.t_end < b.t_min) {
          h = b.prev;
          continue;
        }
        if (q.t_start > b.t_max) break;
      }
      const EdgeSlice s = g_.edges(h);
      const auto lo = std::lower_bound(s.timestamps.begin(), s.timestamps.end(), q.t_start) -
                      s.timestamps.begin();
      const auto hi = std::lower_bound(s.timestamps.begin(), s.timestamps.end(), q.t_end) -
                      s.timestamps.begin();
      for (auto i = hi; i-- > lo;) {
        ++edge_reads_;
        const auto idx = static_cast<std::size_t>(i);
        if (!s.valid[idx] || !g_.is_live(s.neighbors[idx])) continue;
        candidates_.push_back({s.neighbors[idx], s.edge_ids[idx], s.timestamps[idx]});
        if (early_stop && candidates_.size() == fanout_) return;
      }
      h = b.prev;
    }
  }

  std::uint64_t select(std::uint64_t stream_seed, ChunkResult& out) {
    const std::size_t n = candidates_.size();
    auto emit = [&](const Candidate& c) {
      out.neighbors.push_back(c.neighbor);
      out.edge_ids.push_back(c.edge_id);
      out.timestamps.push_back(c.timestamp);
    };
    if (kind_ == PolicyKind::kRecent || n <= fanout_) {
      const std::size_t take = std::min<std::size_t>(n, fanout_);
      for (std::size_t i = 0; i < take; ++i) emit(candidates_[i]);
      return take;
    }
    // partial Fisher-Yates over candidate positions
    positions_.resize(n);
    std::iota(positions_.begin(), positions_.end(), std::size_t{0});
    SplitMix64 rng(stream_seed);
    for (std::size_t k = 0; k < fanout_; ++k) {
      const std::size_t j = k + static_cast<std::size_t>(rng.below(n - k));
      std::swap(positions_[k], positions_[j]);
    }
    std::sort(positions_.begin(), positions_.begin() + fanout_);
    for (std::size_t k = 0; k < fanout_; ++k) emit(candidates_[positions_[k]]);
    return fanout_;
  }

  const DynamicGraph& g_;
  std::uint32_t fanout_;
  PolicyKind kind_;
  bool skip_;
  std::vector<Candidate> candidates_;
  std::vector<std::size_t> positions_;
  std::uint64_t meta_reads_ = 0;
  std::uint64_t edge_reads_ = 0;
};

struct QueryKeyHash {
  std::size_t operator()(const std::tuple<NodeId, Timestamp, Timestamp>& k) const {
    return hash_combine(hash_combine(std::get<0>(k), static_cast<std::uint64_t>(std::get<1>(k))),
                        static_cast<std::uint64_t>(std::get<2>(k)));
  }
};

}  // namespace

TemporalSampler::TemporalSampler(const DynamicGraph& graph, SamplerOptions options)
    : graph_(graph), options_(options) {
  if (options_.workers == 0) options_.workers = 1;
}

SampleLayer TemporalSampler::sample_layer(std::span<const NodeId> sources,
                                          std::span<const Timestamp> t_starts,
                                          std::span<const Timestamp> t_ends, std::uint32_t fanout,
                                          const SamplingPolicy& policy,
                                          std::uint64_t seed) const {
  if (sources.size() != t_starts.size() || sources.size() != t_ends.size()) {
    throw ArgumentError("sources, t_starts and t_ends differ in length");
  }
  if (fanout == 0) throw ArgumentError("fanout must be >= 1");
  policy.validate();

  const std::size_t n = sources.size();
  std::vector<SourceQuery> queries(n);
  std::unordered_map<std::tuple<NodeId, Timestamp, Timestamp>, std::uint64_t, QueryKeyHash> seen;
  for (std::size_t i = 0; i < n; ++i) {
    const Timestamp ts =
        policy.kind == PolicyKind::kTimeWindow ? window_start(policy, t_ends[i]) : t_starts[i];
    const std::uint64_t occurrence = seen[{sources[i], ts, t_ends[i]}]++;
    queries[i] = {sources[i], ts, t_ends[i],
                  source_stream_seed(seed, sources[i], ts, t_ends[i], occurrence)};
  }

  const PolicyKind kind =
      policy.kind == PolicyKind::kTimeWindow ? PolicyKind::kUniform : policy.kind;
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(options_.workers, n));
  std::vector<ChunkResult> chunks(workers);
  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = n * c / workers;
    const std::size_t end = n * (c + 1) / workers;
    SourceSampler s(graph_, fanout, kind, options_.block_skipping);
    chunks[c].counts.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) s.run(queries[i], chunks[c]);
    s.flush_counters();
  };
  if (workers == 1) {
    run_chunk(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t c = 0; c < workers; ++c) threads.emplace_back(run_chunk, c);
  }

  SampleLayer layer;
  layer.source_nodes.assign(sources.begin(), sources.end());
  layer.source_times.assign(t_ends.begin(), t_ends.end());
  layer.offsets.reserve(n + 1);
  for (auto& chunk : chunks) {
    for (auto c : chunk.counts) layer.offsets.push_back(layer.offsets.back() + c);
    layer.neighbors.insert(layer.neighbors.end(), chunk.neighbors.begin(), chunk.neighbors.end());
    layer.edge_ids.insert(layer.edge_ids.end(), chunk.edge_ids.begin(), chunk.edge_ids.end());
    layer.timestamps.insert(layer.timestamps.end(), chunk.timestamps.begin(),
                            chunk.timestamps.end());
  }
  return layer;
}

LayeredSample TemporalSampler::sample_khop(const SampleRequest& request) const {
  validate_request(request);
  LayeredSample result;
  std::vector<NodeId> frontier = request.targets;
  std::vector<Timestamp> times = request.timestamps;
  for (std::size_t hop = 0; hop < request.fanouts.size(); ++hop) {
    std::vector<Timestamp> starts(times.size());
    std::transform(times.begin(), times.end(), starts.begin(),
                   [&](Timestamp t) { return window_start(request.policy, t); });
    SampleLayer layer = sample_layer(frontier, starts, times, request.fanouts[hop], request.policy,
                                     layer_seed(request.seed, hop));
    frontier = layer.neighbors;
    times = layer.timestamps;
    result.layers.push_back(std::move(layer));
  }
  return result;
}

std::vector<WalkStep> TemporalSampler::random_walk(NodeId start, Timestamp t,
                                                   std::uint32_t length,
                                                   const SamplingPolicy& policy,
                                                   std::uint64_t seed) const {
  if (length == 0) throw ArgumentError("walk length must be >= 1");
  std::vector<WalkStep> path;
  NodeId node = start;
  Timestamp time = t;
  for (std::uint32_t hop = 0; hop < length; ++hop) {
    const Timestamp ts = window_start(policy, time);
    const SampleLayer layer = sample_layer(std::span(&node, 1), std::span(&ts, 1),
                                           std::span(&time, 1), 1, policy, layer_seed(seed, hop));
    if (layer.neighbors.empty()) break;
    node = layer.neighbors.front();
    time = layer.timestamps.front();
    path.push_back({node, time});
  }
  return path;
}

}  // namespace tgraph
