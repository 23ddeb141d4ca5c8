#include "tgraph/partition.hpp"

#include <cmath>
#include <numeric>
#include <unordered_set>

namespace tgraph {

std::vector<InsertionBatch> dispatch(const PartitionSpec& spec, const InsertionBatch& batch,
                                     Directedness directedness, EdgeId first_id) {
  spec.validate();
  const bool has_ids = !batch.edge_ids.empty();
  if (has_ids && batch.edge_ids.size() != batch.edges.size()) {
    throw ArgumentError("edge_ids must be row-matched with edges");
  }
  std::vector<InsertionBatch> out(spec.num_parts);
  for (std::size_t i = 0; i < batch.edges.size(); ++i) {
    const TemporalEdge& e = batch.edges[i];
    const EdgeId id = has_ids ? batch.edge_ids[i] : first_id + i;
    const std::uint32_t ps = assign(spec, e.src);
    out[ps].edges.push_back(e);
    out[ps].edge_ids.push_back(id);
    if (directedness == Directedness::kUndirected) {
      const std::uint32_t pd = assign(spec, e.dst);
      if (pd != ps) {
        out[pd].edges.push_back(e);
        out[pd].edge_ids.push_back(id);
      }
    }
  }
  return out;
}

double coefficient_of_variation(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (mean == 0.0) return 0.0;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / n) / mean;
}

double coefficient_of_variation(std::span<const std::uint64_t> values) {
  std::vector<double> d(values.begin(), values.end());
  return coefficient_of_variation(std::span<const double>(d));
}

BalanceStats balance_stats(const PartitionSpec& spec, std::span<const TemporalEdge> edges,
                           Directedness directedness) {
  spec.validate();
  BalanceStats s;
  s.node_counts.assign(spec.num_parts, 0);
  s.edge_counts.assign(spec.num_parts, 0);
  std::unordered_set<NodeId> seen;
  auto touch = [&](NodeId n) {
    if (seen.insert(n).second) ++s.node_counts[assign(spec, n)];
  };
  for (const auto& e : edges) {
    touch(e.src);
    touch(e.dst);
    ++s.edge_counts[assign(spec, e.src)];
    if (directedness == Directedness::kUndirected) ++s.edge_counts[assign(spec, e.dst)];
  }
  s.node_cv = coefficient_of_variation(std::span<const std::uint64_t>(s.node_counts));
  s.edge_cv = coefficient_of_variation(std::span<const std::uint64_t>(s.edge_counts));
  return s;
}

BalanceStats balance_stats(std::span<const DynamicGraph* const> partitions) {
  BalanceStats s;
  for (const DynamicGraph* g : partitions) {
    std::uint64_t nodes = 0;
    std::uint64_t edges = 0;
    for (NodeId n = 0; n < g->num_nodes(); ++n) {
      if (!g->is_live(n)) continue;
      const auto& ne = g->node_entry(n);
      if (ne.num_blocks > 0) ++nodes;
      edges += ne.degree;
    }
    s.node_counts.push_back(nodes);
    s.edge_counts.push_back(edges);
  }
  s.node_cv = coefficient_of_variation(std::span<const std::uint64_t>(s.node_counts));
  s.edge_cv = coefficient_of_variation(std::span<const std::uint64_t>(s.edge_counts));
  return s;
}

}  // namespace tgraph
