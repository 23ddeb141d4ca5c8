#include "tgraph/graph_store.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "tgraph/binary_io.hpp"

namespace tgraph {

std::string to_string(SizingPolicy policy) {
  switch (policy) {
    case SizingPolicy::kAdaptive: return "adaptive";
    case SizingPolicy::kFixed: return "fixed";
    case SizingPolicy::kStrawman: return "strawman";
    case SizingPolicy::kAdjacencyList: return "adjacency_list";
  }
  return "unknown";
}

DynamicGraph::DynamicGraph(Directedness directedness, std::uint32_t tau)
    : DynamicGraph(GraphOptions{directedness, BlockSizing::adaptive(tau), std::nullopt}) {}

DynamicGraph::DynamicGraph(GraphOptions options) : options_(options) {
  const auto& s = options_.sizing;
  if ((s.policy == SizingPolicy::kAdaptive || s.policy == SizingPolicy::kFixed) && s.param == 0) {
    throw ConfigError("block size threshold must be >= 1");
  }
  if (options_.partition && (options_.partition->count == 0 ||
                             options_.partition->index >= options_.partition->count)) {
    throw ConfigError("invalid partition view");
  }
}

std::uint32_t DynamicGraph::new_block_capacity(NodeId node) const {
  if (!has_node(node)) throw NotFoundError("unknown node " + std::to_string(node));
  return capacity_for(node, 1);
}

std::uint32_t DynamicGraph::capacity_for(NodeId node, std::uint64_t pending) const {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint32_t>::max();
  const auto& s = options_.sizing;
  switch (s.policy) {
    case SizingPolicy::kAdaptive: {
      const std::uint64_t deg = std::max<std::uint64_t>(nodes_[node].degree, 1);
      return static_cast<std::uint32_t>(std::min<std::uint64_t>(deg, s.param));
    }
    case SizingPolicy::kFixed: return s.param;
    case SizingPolicy::kStrawman:
      return static_cast<std::uint32_t>(std::clamp<std::uint64_t>(pending, 1, kMax));
    case SizingPolicy::kAdjacencyList: return 1;
  }
  return 1;
}

Timestamp DynamicGraph::tail_time(NodeId node) const {
  const auto& ne = nodes_[node];
  return ne.tail == kNoBlock ? kMinTimestamp : blocks_[ne.tail].t_max;
}

void DynamicGraph::ensure_node(NodeId node) {
  if (node >= nodes_.size()) nodes_.resize(node + 1);
}

BlockHandle DynamicGraph::allocate_block(NodeId node, std::uint32_t capacity) {
  BlockHandle h;
  if (!free_handles_.empty()) {
    h = free_handles_.back();
    free_handles_.pop_back();
  } else {
    if (blocks_.size() >= kNoBlock) throw std::length_error("block arena exhausted");
    h = static_cast<BlockHandle>(blocks_.size());
    blocks_.emplace_back();
    slabs_.emplace_back();
  }
  blocks_[h] = BlockMeta{capacity, 0, 0, 0, kNoBlock, kNoBlock, node};
  auto& slab = slabs_[h];
  slab.neighbors.assign(capacity, 0);
  slab.edge_ids.assign(capacity, 0);
  slab.timestamps.assign(capacity, 0);
  slab.valid.assign(capacity, 0);
  ++live_blocks_;
  return h;
}

void DynamicGraph::release_block(BlockHandle h) {
  slabs_[h] = EdgeSlab{};
  blocks_[h] = BlockMeta{};
  free_handles_.push_back(h);
  --live_blocks_;
}

void DynamicGraph::append(NodeId node, NodeId neighbor, EdgeId id, Timestamp ts,
                          std::uint64_t pending) {
  NodeEntry& ne = nodes_[node];
  if (ne.tail == kNoBlock || blocks_[ne.tail].size == blocks_[ne.tail].capacity) {
    const BlockHandle h = allocate_block(node, capacity_for(node, pending));
    // allocate_block may not grow nodes_, so `ne` stays valid
    blocks_[h].prev = ne.tail;
    if (ne.tail != kNoBlock) {
      blocks_[ne.tail].next = h;
    } else {
      ne.head = h;
    }
    ne.tail = h;
    ++ne.num_blocks;
  }
  BlockMeta& b = blocks_[ne.tail];
  auto& slab = slabs_[ne.tail];
  slab.neighbors[b.size] = neighbor;
  slab.edge_ids[b.size] = id;
  slab.timestamps[b.size] = ts;
  slab.valid[b.size] = 1;
  if (b.size == 0) b.t_min = ts;
  b.t_max = ts;
  ++b.size;
  ++ne.degree;
}

AddEdgesResult DynamicGraph::add_edges(const InsertionBatch& batch) {
  const bool explicit_ids = !batch.edge_ids.empty();
  if (explicit_ids && batch.edge_ids.size() != batch.edges.size()) {
    throw ArgumentError("edge_ids must be row-matched with edges");
  }
  const bool undirected = !directed();

  // Strawman sizing needs how many edges each node still has to receive in
  // this batch.
  std::unordered_map<NodeId, std::uint64_t> pending;
  if (options_.sizing.policy == SizingPolicy::kStrawman) {
    for (const auto& e : batch.edges) {
      if (stores(e.src)) ++pending[e.src];
      if (undirected && stores(e.dst)) ++pending[e.dst];
    }
  }
  auto take_pending = [&](NodeId n) -> std::uint64_t {
    if (pending.empty()) return 1;
    auto it = pending.find(n);
    if (it == pending.end() || it->second == 0) return 1;
    return it->second--;
  };

  AddEdgesResult result;
  result.edge_ids.reserve(batch.size());
  for (std::size_t i = 0; i < batch.edges.size(); ++i) {
    const TemporalEdge& e = batch.edges[i];
    ensure_node(std::max(e.src, e.dst));

    const bool store_src = stores(e.src);
    const bool store_dst = undirected && stores(e.dst);
    auto reject = [&](std::string reason) {
      if (store_src) take_pending(e.src);
      if (store_dst) take_pending(e.dst);
      result.rejected.push_back({i, std::move(reason)});
    };

    if (!nodes_[e.src].valid || (undirected && !nodes_[e.dst].valid)) {
      reject("endpoint was deleted");
      continue;
    }
    if ((store_src && e.timestamp < tail_time(e.src)) ||
        (store_dst && e.timestamp < tail_time(e.dst))) {
      reject("timestamp " + std::to_string(e.timestamp) + " precedes the node's latest edge");
      continue;
    }
    EdgeId id = next_edge_id_;
    if (explicit_ids) {
      id = batch.edge_ids[i];
      if (id < next_edge_id_) {
        reject("edge id " + std::to_string(id) + " is not increasing");
        continue;
      }
    }
    next_edge_id_ = id + 1;

    if (store_src) append(e.src, e.dst, id, e.timestamp, take_pending(e.src));
    if (store_dst) append(e.dst, e.src, id, e.timestamp, take_pending(e.dst));
    edge_index_.push_back({id, e.src, e.dst});
    result.edge_ids.push_back(id);
    ++inserted_edges_;
  }
  return result;
}

std::uint64_t DynamicGraph::invalidate_in_list(NodeId node, EdgeId id) {
  // Edge ids increase along a node's list, so the newest block whose first id
  // is <= id holds it. An undirected self-loop stores the id twice and the two
  // copies may straddle a block boundary, hence the walk back.
  std::uint64_t n = 0;
  BlockHandle h = nodes_[node].tail;
  while (h != kNoBlock) {
    const BlockMeta& b = blocks_[h];
    auto& slab = slabs_[h];
    if (b.size > 0 && slab.edge_ids[0] <= id) {
      auto first = slab.edge_ids.begin();
      auto [lo, hi] = std::equal_range(first, first + b.size, id);
      for (auto it = lo; it != hi; ++it) {
        auto& v = slab.valid[static_cast<std::size_t>(it - first)];
        if (v) {
          v = 0;
          ++n;
        }
      }
      if (lo != first || lo == hi) break;
    }
    h = b.prev;
  }
  nodes_[node].degree -= n;
  return n;
}

std::uint64_t DynamicGraph::delete_edges(std::span<const EdgeId> edge_ids) {
  std::uint64_t deleted = 0;
  for (EdgeId id : edge_ids) {
    auto it = std::lower_bound(edge_index_.begin(), edge_index_.end(), id,
                               [](const IndexedEdge& e, EdgeId v) { return e.id < v; });
    if (it == edge_index_.end() || it->id != id) continue;
    std::uint64_t n = 0;
    if (stores(it->src)) n += invalidate_in_list(it->src, id);
    if (!directed() && it->dst != it->src && stores(it->dst)) n += invalidate_in_list(it->dst, id);
    if (n > 0) ++deleted;
  }
  return deleted;
}

bool DynamicGraph::delete_node(NodeId node) {
  if (!is_live(node)) return false;
  nodes_[node].valid = false;
  return true;
}

OffloadResult DynamicGraph::offload_before(Timestamp cutoff, std::ostream& sink) {
  struct Cut {
    NodeId node;
    BlockHandle new_head;
    std::uint32_t blocks;
    std::uint64_t live;
  };

  io::ByteWriter w;
  w.magic(kOffloadMagic);
  w.put(kOffloadVersion);

  std::vector<Cut> cuts;
  OffloadResult result;
  for (NodeId n = 0; n < nodes_.size(); ++n) {
    Cut cut{n, nodes_[n].head, 0, 0};
    while (cut.new_head != kNoBlock && blocks_[cut.new_head].t_max < cutoff) {
      const BlockMeta& b = blocks_[cut.new_head];
      const auto& slab = slabs_[cut.new_head];
      w.put<std::uint64_t>(n);
      w.put<std::uint32_t>(b.size);
      for (std::uint32_t i = 0; i < b.size; ++i) {
        w.put<std::uint64_t>(slab.neighbors[i]);
        w.put<std::uint64_t>(slab.edge_ids[i]);
        w.put<std::int64_t>(slab.timestamps[i]);
        w.put<std::uint8_t>(slab.valid[i]);
        cut.live += slab.valid[i];
      }
      result.edges += b.size;
      ++cut.blocks;
      cut.new_head = b.next;
    }
    if (cut.blocks > 0) cuts.push_back(cut);
  }

  sink.write(w.bytes().data(), static_cast<std::streamsize>(w.size()));
  sink.flush();
  if (!sink) throw IoError("offload sink write failed; graph left unchanged");

  for (const Cut& cut : cuts) {
    NodeEntry& ne = nodes_[cut.node];
    BlockHandle h = ne.head;
    while (h != cut.new_head) {
      const BlockHandle next = blocks_[h].next;
      release_block(h);
      h = next;
    }
    ne.head = cut.new_head;
    if (ne.head == kNoBlock) {
      ne.tail = kNoBlock;
    } else {
      blocks_[ne.head].prev = kNoBlock;
    }
    ne.num_blocks -= cut.blocks;
    ne.degree -= cut.live;
    result.blocks += cut.blocks;
  }
  return result;
}

StorageStats DynamicGraph::storage_stats() const {
  StorageStats s;
  std::uint64_t list_sum = 0;
  std::uint64_t active = 0;
  for (const auto& ne : nodes_) {
    s.max_list_len = std::max<std::uint64_t>(s.max_list_len, ne.num_blocks);
    if (ne.degree > 0) {
      list_sum += ne.num_blocks;
      ++active;
    }
    for (BlockHandle h = ne.head; h != kNoBlock; h = blocks_[h].next) {
      const BlockMeta& b = blocks_[h];
      s.edge_data_bytes += static_cast<std::uint64_t>(b.capacity) * kEdgeSlotBytes;
      s.wasted_slots += b.capacity - b.size;
      s.stored_slots += b.size;
      ++s.num_blocks;
    }
  }
  s.avg_list_len = active == 0 ? 0.0 : static_cast<double>(list_sum) / static_cast<double>(active);
  s.metadata_bytes = nodes_.size() * sizeof(NodeEntry) + live_blocks_ * sizeof(BlockMeta);
  return s;
}

std::uint64_t DynamicGraph::degree(NodeId node) const {
  return node_entry(node).degree;
}

const NodeEntry& DynamicGraph::node_entry(NodeId node) const {
  if (!is_live(node)) throw NotFoundError("unknown or deleted node " + std::to_string(node));
  return nodes_[node];
}

EdgeSlice DynamicGraph::edges(BlockHandle h) const {
  const auto& slab = slabs_[h];
  const std::size_t n = blocks_[h].size;
  return {std::span(slab.neighbors).first(n), std::span(slab.edge_ids).first(n),
          std::span(slab.timestamps).first(n), std::span(slab.valid).first(n)};
}

std::uint64_t DynamicGraph::num_live_edges() const {
  std::uint64_t sum = 0;
  for (const auto& ne : nodes_) sum += ne.degree;
  return directed() ? sum : sum / 2;
}

std::vector<OffloadedBlock> read_offload_file(std::istream& in) {
  const std::string data = io::read_all(in);
  io::ByteReader r(data);
  r.expect_magic(kOffloadMagic);
  if (const auto v = r.get<std::uint32_t>(); v != kOffloadVersion) {
    throw FormatError("unsupported offload version " + std::to_string(v));
  }
  std::vector<OffloadedBlock> blocks;
  while (!r.done()) {
    OffloadedBlock b;
    b.node = r.get<std::uint64_t>();
    const auto size = r.get<std::uint32_t>();
    r.need(static_cast<std::size_t>(size) * 25);
    b.edges.resize(size);
    for (auto& e : b.edges) {
      e.neighbor = r.get<std::uint64_t>();
      e.edge_id = r.get<std::uint64_t>();
      e.timestamp = r.get<std::int64_t>();
      e.valid = r.get<std::uint8_t>();
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

}  // namespace tgraph
