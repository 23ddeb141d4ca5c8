#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tgraph/graph_store.hpp"
#include "tgraph/types.hpp"

namespace tgraph {

enum class PartitionHash : std::uint8_t { kIdentity = 0 };

struct PartitionSpec {
  std::uint32_t num_parts = 1;
  PartitionHash hash = PartitionHash::kIdentity;

  void validate() const {
    if (num_parts == 0) throw ConfigError("partition count must be >= 1");
  }
};

// Owner partition of a node: hash(node) % P.
inline std::uint32_t assign(const PartitionSpec& spec, NodeId node) {
  return static_cast<std::uint32_t>(node % spec.num_parts);
}

// Routes each edge to the partitions that store it: the source's owner, plus
// the destination's owner for undirected graphs. Edge ids are carried over
// from the batch (fresh ids starting at `first_id` are attached when the batch
// has none), and relative order is preserved within each output.
std::vector<InsertionBatch> dispatch(const PartitionSpec& spec, const InsertionBatch& batch,
                                     Directedness directedness, EdgeId first_id = 0);

struct BalanceStats {
  std::vector<std::uint64_t> node_counts;
  std::vector<std::uint64_t> edge_counts;  // stored adjacency entries
  double node_cv = 0.0;
  double edge_cv = 0.0;
};

// Population coefficient of variation; 0 when the mean is 0.
double coefficient_of_variation(std::span<const double> values);
double coefficient_of_variation(std::span<const std::uint64_t> values);

// Balance of the placement a stream would get: distinct nodes and stored
// edge entries per partition.
BalanceStats balance_stats(const PartitionSpec& spec, std::span<const TemporalEdge> edges,
                           Directedness directedness);

// Balance of already-built partition graphs (live nodes with a non-empty list,
// live degree sums).
BalanceStats balance_stats(std::span<const DynamicGraph* const> partitions);

}  // namespace tgraph
