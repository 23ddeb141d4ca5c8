#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tgraph/feature_cache.hpp"
#include "tgraph/graph_store.hpp"
#include "tgraph/sampler.hpp"

namespace tgraph {

struct BenchConfig {
  Directedness directedness = Directedness::kUndirected;
  BlockSizing sizing = BlockSizing::adaptive(48);
  std::size_t ingest_batch = 100000;
  std::vector<std::uint32_t> fanouts{10};
  SamplingPolicy policy = SamplingPolicy::recent();
  std::size_t targets_per_call = 600;
  std::size_t calls = 50;
  unsigned repeats = 5;
  unsigned warmup = 1;
  unsigned workers = 1;
  std::size_t feature_dim = 16;
  double cache_fraction = 0.1;
  CachePolicy cache_policy = CachePolicy::kLRU;
  std::uint64_t seed = 1;
};

struct BenchReport {
  std::string sizing;
  std::uint64_t edges = 0;
  double ingest_edges_per_sec = 0.0;
  double sampling_targets_per_sec = 0.0;  // median over repeats
  double sampled_edges_per_sec = 0.0;
  double fetch_rows_per_sec = 0.0;
  std::vector<double> sampling_runs;  // targets/s of each timed repeat
  std::uint64_t targets_per_run = 0;
};

// Builds the graph from `stream` in batches, then times repeated sampling
// runs over seeded query targets (edge endpoints at their edge's time) and a
// cache-fronted node feature fetch of the sampled ids.
BenchReport bench(const BenchConfig& config, std::span<const TemporalEdge> stream);

struct AblationRow {
  std::string name;
  BlockSizing sizing;
  StorageStats stats;
  double edge_overhead = 0.0;  // edge data bytes over the static array, minus 1
  double build_seconds = 0.0;
};

struct AblationResult {
  std::vector<AblationRow> grid;  // every configuration that was built
  AblationRow adaptive;           // best tau within the overhead budget
  AblationRow fixed;              // best block size within the budget
  AblationRow strawman;
  AblationRow adjacency_list;
  std::uint64_t static_bytes = 0;
};

AblationRow build_and_measure(std::span<const TemporalEdge> stream, Directedness directedness,
                              BlockSizing sizing, std::size_t batch_edges);

// Grid-searches tau and the fixed block size for the shortest average list
// whose edge-data overhead stays within `overhead_budget`; when nothing fits,
// the lowest-overhead setting is kept.
AblationResult block_sizing_ablation(std::span<const TemporalEdge> stream, Directedness directedness,
                                     std::size_t batch_edges, std::span<const std::uint32_t> taus,
                                     std::span<const std::uint32_t> fixed_sizes,
                                     double overhead_budget);

}  // namespace tgraph
