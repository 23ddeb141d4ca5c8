#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "tgraph/cluster.hpp"
#include "tgraph/dataset.hpp"
#include "tgraph/feature_cache.hpp"
#include "tgraph/graph_store.hpp"
#include "tgraph/sampler.hpp"

namespace tgraph {

enum class BatchPolicy : std::uint8_t { kByCount = 0, kByTime = 1 };

struct RunConfig {
  std::string dataset;  // edge CSV; empty means use `generator`
  SyntheticSpec generator;
  double initial_fraction = 0.3;
  BatchPolicy batch_policy = BatchPolicy::kByCount;
  std::uint64_t batch_edges = 10000;
  Timestamp batch_interval = 86400;
  std::uint32_t epochs = 3;
  double replay_ratio = 0.0;
  std::size_t minibatch_size = 600;
  std::vector<std::uint32_t> fanouts{10};
  SamplingPolicy policy = SamplingPolicy::recent();
  Directedness directedness = Directedness::kUndirected;
  BlockSizing sizing = BlockSizing::adaptive(48);
  unsigned sampler_workers = 1;

  CachePolicy node_cache_policy = CachePolicy::kLRU;
  CachePolicy edge_cache_policy = CachePolicy::kLRU;
  double node_cache_fraction = 0.1;  // of all nodes in the stream
  double edge_cache_fraction = 0.1;  // of all edges in the stream
  double cache_lambda = 0.2;
  bool cache_reuse = true;    // carry the cache over from the previous round
  bool cache_restore = true;  // reset to the round-start snapshot every epoch
  std::string cache_dir;      // persist snapshots here between rounds when set
  std::size_t node_dim = 16;
  std::size_t edge_dim = 16;
  std::string node_feature_file;  // optional TGFF or CSV; synthesized otherwise
  std::string edge_feature_file;
  // Fraction of an epoch's mini-batches counted as its initial window.
  double initial_window_fraction = 0.1;

  ClusterSpec cluster;  // machines > 1 or tcp routes sampling through Cluster
  TransportKind transport = TransportKind::kInProcess;

  std::uint64_t seed = 42;
  std::size_t max_rounds = 0;  // 0 = all
  double sleep_ms = 0.0;       // stand-in for per-iteration model compute
  bool trace = false;          // keep per-round id sets in the reports

  void validate() const;
};

// Applies one `key=value` setting; throws ConfigError for unknown keys or bad
// values.
void apply_config_key(RunConfig& config, const std::string& key, const std::string& value);
// Flat `key = value` lines; '#' starts a comment.
RunConfig parse_run_config(std::istream& in);
// TG_SEED overrides the configured seed.
void apply_env_overrides(RunConfig& config);

struct EpochReport {
  double node_hit_rate = 0.0;
  double edge_hit_rate = 0.0;
  double node_window_hit_rate = 0.0;
  double edge_window_hit_rate = 0.0;
  std::uint64_t minibatches = 0;
};

struct RoundTrace {
  std::vector<EdgeId> new_edges;
  std::vector<EdgeId> replay_edges;
  std::vector<std::vector<Timestamp>> minibatch_max_time;  // per epoch
  std::vector<NodeId> sampled_nodes;  // sorted, distinct
  std::vector<EdgeId> sampled_edges;  // sorted, distinct
};

struct RoundReport {
  std::size_t round = 0;
  std::uint64_t new_edges = 0;
  std::uint64_t training_edges = 0;
  std::uint64_t replay_edges = 0;
  double graph_update_seconds = 0.0;
  double sampling_seconds = 0.0;
  double fetch_seconds = 0.0;
  std::vector<EpochReport> epochs;
  double jaccard_nodes = 0.0;  // vs. the previous round; 0 for the first
  double jaccard_edges = 0.0;
  std::uint64_t distinct_nodes = 0;
  std::uint64_t distinct_edges = 0;
  double node_powerlaw_r2 = 0.0;
  double node_exponential_r2 = 0.0;
  double edge_powerlaw_r2 = 0.0;
  double edge_exponential_r2 = 0.0;
  std::vector<std::uint64_t> node_access_histogram;  // rank-frequency
  std::vector<std::uint64_t> edge_access_histogram;
  double partition_node_cv = 0.0;
  double partition_edge_cv = 0.0;
  std::optional<RoundTrace> trace;
};

using ReportSink = std::function<void(const RoundReport&)>;

// Loads or generates the stream named by the config, then runs the loop.
void run_continuous(const RunConfig& config, const ReportSink& sink);
void run_continuous(const RunConfig& config, const std::vector<TemporalEdge>& stream,
                    const ReportSink& sink);
std::vector<RoundReport> run_continuous(const RunConfig& config,
                                        const std::vector<TemporalEdge>& stream);

std::vector<TemporalEdge> load_stream(const RunConfig& config);

// Deterministic stand-in feature rows.
Matrix synthetic_features(std::span<const std::uint64_t> ids, std::size_t dim, std::uint64_t salt);

// Splits [begin, end) of a time-sorted stream into incremental batches.
std::vector<std::pair<std::size_t, std::size_t>> split_batches(
    std::span<const TemporalEdge> stream, std::size_t begin, BatchPolicy policy,
    std::uint64_t batch_edges, Timestamp interval);

}  // namespace tgraph
