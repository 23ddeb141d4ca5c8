#include "tgraph/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <unordered_set>

#include "tgraph/continuous.hpp"
#include "tgraph/random.hpp"

namespace tgraph {

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

void build(DynamicGraph& g, std::span<const TemporalEdge> stream, std::size_t batch_edges) {
  for (std::size_t i = 0; i < stream.size(); i += batch_edges) {
    InsertionBatch b;
    const auto end = std::min(stream.size(), i + batch_edges);
    b.edges.assign(stream.begin() + static_cast<std::ptrdiff_t>(i),
                   stream.begin() + static_cast<std::ptrdiff_t>(end));
    g.add_edges(b);
  }
}

std::string describe(const BlockSizing& s) {
  switch (s.policy) {
    case SizingPolicy::kAdaptive: return "adaptive(" + std::to_string(s.param) + ")";
    case SizingPolicy::kFixed: return "fixed(" + std::to_string(s.param) + ")";
    default: return to_string(s.policy);
  }
}

}  // namespace

BenchReport bench(const BenchConfig& config, std::span<const TemporalEdge> stream) {
  if (stream.empty()) throw ArgumentError("bench needs a non-empty stream");
  if (config.ingest_batch == 0 || config.targets_per_call == 0 || config.calls == 0 ||
      config.repeats == 0) {
    throw ConfigError("bench sizes must be >= 1");
  }
  BenchReport report;
  report.sizing = describe(config.sizing);
  report.edges = stream.size();

  GraphOptions go;
  go.directedness = config.directedness;
  go.sizing = config.sizing;
  DynamicGraph graph(go);
  const auto t0 = Clock::now();
  build(graph, stream, config.ingest_batch);
  const double ingest_s = std::chrono::duration<double>(Clock::now() - t0).count();
  report.ingest_edges_per_sec = static_cast<double>(stream.size()) / std::max(ingest_s, 1e-9);

  // Query times sit just after the edge so that the edge itself is a candidate.
  SplitMix64 rng(hash_combine(config.seed, 0xBE7C));
  std::vector<SampleRequest> requests(config.calls);
  for (std::size_t c = 0; c < config.calls; ++c) {
    auto& req = requests[c];
    req.fanouts = config.fanouts;
    req.policy = config.policy;
    req.seed = hash_combine(config.seed, c);
    for (std::size_t k = 0; k < config.targets_per_call; ++k) {
      const TemporalEdge& e = stream[rng.below(stream.size())];
      req.targets.push_back(k % 2 == 0 ? e.src : e.dst);
      req.timestamps.push_back(e.timestamp == kMaxTimestamp ? e.timestamp : e.timestamp + 1);
    }
  }
  report.targets_per_run = config.calls * config.targets_per_call;

  const TemporalSampler sampler(graph, {config.workers, true});
  std::vector<double> sampled_rates;
  std::vector<LayeredSample> last;
  for (unsigned rep = 0; rep < config.warmup + config.repeats; ++rep) {
    std::vector<LayeredSample> out;
    out.reserve(requests.size());
    std::uint64_t edges = 0;
    const auto ts = Clock::now();
    for (const auto& req : requests) {
      out.push_back(sampler.sample_khop(req));
      for (const auto& layer : out.back().layers) edges += layer.num_sampled();
    }
    const double s = std::max(std::chrono::duration<double>(Clock::now() - ts).count(), 1e-9);
    if (rep >= config.warmup) {
      report.sampling_runs.push_back(static_cast<double>(report.targets_per_run) / s);
      sampled_rates.push_back(static_cast<double>(edges) / s);
    }
    last = std::move(out);
  }
  report.sampling_targets_per_sec = median(report.sampling_runs);
  report.sampled_edges_per_sec = median(sampled_rates);

  // Feature fetch: distinct node ids per call through a node cache.
  std::unordered_set<NodeId> all_nodes;
  for (const auto& e : stream) {
    all_nodes.insert(e.src);
    all_nodes.insert(e.dst);
  }
  const CacheConfig cc{config.cache_policy,
                       static_cast<std::size_t>(
                           std::llround(config.cache_fraction * static_cast<double>(all_nodes.size()))),
                       config.feature_dim, 0.2};
  std::vector<std::vector<NodeId>> keys(last.size());
  for (std::size_t c = 0; c < last.size(); ++c) {
    std::unordered_set<NodeId> seen;
    for (NodeId n : requests[c].targets) {
      if (seen.insert(n).second) keys[c].push_back(n);
    }
    for (const auto& layer : last[c].layers) {
      for (NodeId n : layer.neighbors) {
        if (seen.insert(n).second) keys[c].push_back(n);
      }
    }
  }
  std::vector<double> fetch_rates;
  for (unsigned rep = 0; rep < config.warmup + config.repeats; ++rep) {
    VectorCache cache(cc);
    std::uint64_t rows = 0;
    const auto ts = Clock::now();
    for (const auto& k : keys) {
      FetchResult r = cache.fetch(k);
      if (!r.miss_keys.empty()) {
        cache.insert_batch(r.miss_keys, synthetic_features(r.miss_keys, config.feature_dim, 0x4E0DE));
      }
      rows += k.size();
    }
    const double s = std::max(std::chrono::duration<double>(Clock::now() - ts).count(), 1e-9);
    if (rep >= config.warmup) fetch_rates.push_back(static_cast<double>(rows) / s);
  }
  report.fetch_rows_per_sec = median(fetch_rates);
  return report;
}

AblationRow build_and_measure(std::span<const TemporalEdge> stream, Directedness directedness,
                              BlockSizing sizing, std::size_t batch_edges) {
  if (batch_edges == 0) throw ConfigError("batch_edges must be >= 1");
  GraphOptions go;
  go.directedness = directedness;
  go.sizing = sizing;
  DynamicGraph g(go);
  const auto t0 = Clock::now();
  build(g, stream, batch_edges);
  AblationRow row;
  row.build_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  row.name = describe(sizing);
  row.sizing = sizing;
  row.stats = g.storage_stats();
  const double static_bytes = static_cast<double>(row.stats.stored_slots) * DynamicGraph::kEdgeSlotBytes;
  row.edge_overhead =
      static_bytes == 0.0 ? 0.0 : static_cast<double>(row.stats.edge_data_bytes) / static_bytes - 1.0;
  return row;
}

AblationResult block_sizing_ablation(std::span<const TemporalEdge> stream, Directedness directedness,
                                     std::size_t batch_edges, std::span<const std::uint32_t> taus,
                                     std::span<const std::uint32_t> fixed_sizes,
                                     double overhead_budget) {
  if (taus.empty() || fixed_sizes.empty()) throw ConfigError("ablation grids must be non-empty");
  AblationResult result;
  auto pick = [&](std::span<const std::uint32_t> grid, auto make) {
    std::optional<AblationRow> best_in_budget;
    std::optional<AblationRow> least_overhead;
    for (auto p : grid) {
      AblationRow row = build_and_measure(stream, directedness, make(p), batch_edges);
      result.grid.push_back(row);
      if (row.edge_overhead <= overhead_budget &&
          (!best_in_budget || row.stats.avg_list_len < best_in_budget->stats.avg_list_len)) {
        best_in_budget = row;
      }
      if (!least_overhead || row.edge_overhead < least_overhead->edge_overhead) least_overhead = row;
    }
    return best_in_budget ? *best_in_budget : *least_overhead;
  };
  result.adaptive = pick(taus, [](std::uint32_t t) { return BlockSizing::adaptive(t); });
  result.fixed = pick(fixed_sizes, [](std::uint32_t s) { return BlockSizing::fixed(s); });
  result.strawman = build_and_measure(stream, directedness, BlockSizing::strawman(), batch_edges);
  result.adjacency_list =
      build_and_measure(stream, directedness, BlockSizing::adjacency_list(), batch_edges);
  result.grid.push_back(result.strawman);
  result.grid.push_back(result.adjacency_list);
  result.static_bytes = result.strawman.stats.stored_slots * DynamicGraph::kEdgeSlotBytes;
  return result;
}

}  // namespace tgraph
