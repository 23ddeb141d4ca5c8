#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tgraph/types.hpp"

namespace tgraph {

// Stable index into the block arena. Shared by both storage tiers: block
// metadata lives at fast_tier[h], its edge arrays at shared_tier[h].
using BlockHandle = std::uint32_t;
inline constexpr BlockHandle kNoBlock = ~BlockHandle{0};

struct NodeEntry {
  BlockHandle head = kNoBlock;
  BlockHandle tail = kNoBlock;
  std::uint32_t num_blocks = 0;
  std::uint64_t degree = 0;  // live out-edges stored at this node
  bool valid = true;
};

struct BlockMeta {
  std::uint32_t capacity = 0;
  std::uint32_t size = 0;  // written slots, soft-deleted ones included
  Timestamp t_min = 0;
  Timestamp t_max = 0;
  BlockHandle prev = kNoBlock;
  BlockHandle next = kNoBlock;
  NodeId owner = 0;
};

// Read-only view of one block's edge arrays, limited to the written slots.
struct EdgeSlice {
  std::span<const NodeId> neighbors;
  std::span<const EdgeId> edge_ids;
  std::span<const Timestamp> timestamps;
  std::span<const std::uint8_t> valid;

  [[nodiscard]] std::size_t size() const { return timestamps.size(); }
};

enum class SizingPolicy : std::uint8_t {
  kAdaptive,       // min(max(deg, 1), tau)
  kFixed,          // constant capacity
  kStrawman,       // number of edges the node receives in the current batch
  kAdjacencyList,  // one edge per block
};

struct BlockSizing {
  SizingPolicy policy = SizingPolicy::kAdaptive;
  std::uint32_t param = 48;  // tau for kAdaptive, block size for kFixed

  static BlockSizing adaptive(std::uint32_t tau) { return {SizingPolicy::kAdaptive, tau}; }
  static BlockSizing fixed(std::uint32_t size) { return {SizingPolicy::kFixed, size}; }
  static BlockSizing strawman() { return {SizingPolicy::kStrawman, 1}; }
  static BlockSizing adjacency_list() { return {SizingPolicy::kAdjacencyList, 1}; }
};

std::string to_string(SizingPolicy policy);

// Restricts storage to the endpoints owned by one partition (node % count ==
// index). Edges are still accepted for non-owned endpoints but not stored.
struct PartitionView {
  std::uint32_t index = 0;
  std::uint32_t count = 1;

  [[nodiscard]] bool owns(NodeId node) const { return node % count == index; }
};

struct GraphOptions {
  Directedness directedness = Directedness::kUndirected;
  BlockSizing sizing = BlockSizing::adaptive(48);
  std::optional<PartitionView> partition;
};

struct RejectedEdge {
  std::size_t index = 0;  // position in the submitted batch
  std::string reason;
};

struct AddEdgesResult {
  std::vector<EdgeId> edge_ids;  // accepted edges, strictly increasing
  std::vector<RejectedEdge> rejected;
};

struct StorageStats {
  double avg_list_len = 0.0;  // over nodes with degree > 0
  std::uint64_t max_list_len = 0;
  std::uint64_t edge_data_bytes = 0;
  std::uint64_t metadata_bytes = 0;
  std::uint64_t wasted_slots = 0;
  std::uint64_t num_blocks = 0;
  std::uint64_t stored_slots = 0;  // written slots across all blocks
};

struct OffloadResult {
  std::uint64_t blocks = 0;
  std::uint64_t edges = 0;  // slots written to the sink, deleted ones included
};

struct OffloadedEdge {
  NodeId neighbor = 0;
  EdgeId edge_id = 0;
  Timestamp timestamp = 0;
  std::uint8_t valid = 1;

  friend bool operator==(const OffloadedEdge&, const OffloadedEdge&) = default;
};

struct OffloadedBlock {
  NodeId node = 0;
  std::vector<OffloadedEdge> edges;

  friend bool operator==(const OffloadedBlock&, const OffloadedBlock&) = default;
};

inline constexpr char kOffloadMagic[] = "TGOF";
inline constexpr std::uint32_t kOffloadVersion = 1;

std::vector<OffloadedBlock> read_offload_file(std::istream& in);

// Relaxed atomic counter that can live inside movable types.
class AccessCounter {
 public:
  AccessCounter() = default;
  AccessCounter(const AccessCounter& other) : value_(other.load()) {}
  AccessCounter& operator=(const AccessCounter& other) {
    value_.store(other.load(), std::memory_order_relaxed);
    return *this;
  }

  void add(std::uint64_t n) const { value_.fetch_add(n, std::memory_order_relaxed); }
  [[nodiscard]] std::uint64_t load() const { return value_.load(std::memory_order_relaxed); }
  void reset() const { value_.store(0, std::memory_order_relaxed); }

 private:
  mutable std::atomic<std::uint64_t> value_{0};
};

struct TierAccess {
  std::uint64_t metadata_reads = 0;   // node entries + block records touched
  std::uint64_t edge_data_reads = 0;  // edge slots touched
};

// Node table plus per-node doubly-linked lists of chronologically ordered edge
// blocks. Metadata (node entries, block records) and per-edge arrays are kept
// in two separate tiers with independent access counters.
//
// Single writer, many readers: const member functions are safe to call
// concurrently as long as no mutating call runs at the same time.
class DynamicGraph {
 public:
  DynamicGraph(Directedness directedness, std::uint32_t tau);
  explicit DynamicGraph(GraphOptions options);

  [[nodiscard]] const GraphOptions& options() const { return options_; }
  [[nodiscard]] Directedness directedness() const { return options_.directedness; }
  [[nodiscard]] bool directed() const { return options_.directedness == Directedness::kDirected; }

  // Capacity a block newly allocated for `node` would get right now.
  [[nodiscard]] std::uint32_t new_block_capacity(NodeId node) const;

  AddEdgesResult add_edges(const InsertionBatch& batch);
  std::uint64_t delete_edges(std::span<const EdgeId> edge_ids);
  bool delete_node(NodeId node);
  // Grows the node table so ids below `count` are known (and live).
  void reserve_nodes(std::size_t count) {
    if (count > nodes_.size()) nodes_.resize(count);
  }
  OffloadResult offload_before(Timestamp cutoff, std::ostream& sink);

  [[nodiscard]] StorageStats storage_stats() const;

  [[nodiscard]] std::size_t num_nodes() const { return nodes_.size(); }
  [[nodiscard]] bool has_node(NodeId node) const { return node < nodes_.size(); }
  [[nodiscard]] bool is_live(NodeId node) const {
    return node < nodes_.size() && nodes_[node].valid;
  }
  // Throws NotFoundError for unknown or deleted nodes.
  [[nodiscard]] std::uint64_t degree(NodeId node) const;
  [[nodiscard]] const NodeEntry& node_entry(NodeId node) const;
  [[nodiscard]] const BlockMeta& block(BlockHandle h) const { return blocks_[h]; }
  [[nodiscard]] EdgeSlice edges(BlockHandle h) const;
  // Live edges: sum of degrees, halved for undirected graphs.
  [[nodiscard]] std::uint64_t num_live_edges() const;
  [[nodiscard]] std::uint64_t num_inserted_edges() const { return inserted_edges_; }
  [[nodiscard]] EdgeId next_edge_id() const { return next_edge_id_; }

  void record_access(std::uint64_t metadata_reads, std::uint64_t edge_reads) const {
    metadata_reads_.add(metadata_reads);
    edge_data_reads_.add(edge_reads);
  }
  [[nodiscard]] TierAccess tier_access() const {
    return {metadata_reads_.load(), edge_data_reads_.load()};
  }
  void reset_tier_access() const {
    metadata_reads_.reset();
    edge_data_reads_.reset();
  }

  static constexpr std::uint64_t kEdgeSlotBytes =
      sizeof(NodeId) + sizeof(EdgeId) + sizeof(Timestamp) + sizeof(std::uint8_t);

 private:
  struct EdgeSlab {
    std::vector<NodeId> neighbors;
    std::vector<EdgeId> edge_ids;
    std::vector<Timestamp> timestamps;
    std::vector<std::uint8_t> valid;
  };

  struct IndexedEdge {
    EdgeId id;
    NodeId src;
    NodeId dst;
  };

  [[nodiscard]] bool stores(NodeId node) const {
    return !options_.partition || options_.partition->owns(node);
  }
  [[nodiscard]] std::uint32_t capacity_for(NodeId node, std::uint64_t pending) const;
  [[nodiscard]] Timestamp tail_time(NodeId node) const;
  void ensure_node(NodeId node);
  void append(NodeId node, NodeId neighbor, EdgeId id, Timestamp ts, std::uint64_t pending);
  BlockHandle allocate_block(NodeId node, std::uint32_t capacity);
  void release_block(BlockHandle h);
  std::uint64_t invalidate_in_list(NodeId node, EdgeId id);

  GraphOptions options_;

  // fast tier
  std::vector<NodeEntry> nodes_;
  std::vector<BlockMeta> blocks_;
  std::vector<BlockHandle> free_handles_;
  std::uint64_t live_blocks_ = 0;

  // shared tier
  std::vector<EdgeSlab> slabs_;

  std::vector<IndexedEdge> edge_index_;  // sorted by id, append-only
  EdgeId next_edge_id_ = 0;
  std::uint64_t inserted_edges_ = 0;

  AccessCounter metadata_reads_;
  AccessCounter edge_data_reads_;
};

}  // namespace tgraph
