#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "tgraph/graph_store.hpp"

using namespace tgraph;

namespace {

InsertionBatch batch_of(std::initializer_list<TemporalEdge> edges) {
  InsertionBatch b;
  b.edges = edges;
  return b;
}

struct ListView {
  std::vector<BlockMeta> blocks;
  std::vector<Timestamp> timestamps;
  std::vector<oracle::Candidate> valid;  // (neighbor, id, ts) of valid slots
};

ListView walk(const DynamicGraph& g, NodeId n) {
  ListView v;
  for (BlockHandle h = g.node_entry(n).head; h != kNoBlock; h = g.block(h).next) {
    v.blocks.push_back(g.block(h));
    const EdgeSlice s = g.edges(h);
    for (std::size_t i = 0; i < s.size(); ++i) {
      v.timestamps.push_back(s.timestamps[i]);
      if (s.valid[i]) v.valid.push_back({s.neighbors[i], s.edge_ids[i], s.timestamps[i]});
    }
  }
  return v;
}

}  // namespace

TEST_CASE("empty graph reports zeros") {
  DynamicGraph g(Directedness::kDirected, 8);
  const StorageStats s = g.storage_stats();
  CHECK(s.avg_list_len == 0.0);
  CHECK(s.max_list_len == 0);
  CHECK(s.edge_data_bytes == 0);
  CHECK(s.metadata_bytes == 0);
  CHECK(s.wasted_slots == 0);
  CHECK(g.num_live_edges() == 0);
}

TEST_CASE("first block of a fresh node has one slot") {
  DynamicGraph g(Directedness::kDirected, 8);
  g.add_edges(batch_of({{0, 1, 5}}));
  const auto& ne = g.node_entry(0);
  CHECK(ne.num_blocks == 1);
  CHECK(g.block(ne.head).capacity == 1);
  CHECK(g.degree(0) == 1);
}

TEST_CASE("wasted slots count unused capacity") {
  DynamicGraph g(GraphOptions{Directedness::kDirected, BlockSizing::fixed(5), std::nullopt});
  g.add_edges(batch_of({{0, 1, 1}, {0, 2, 2}, {0, 3, 3}}));
  const StorageStats s = g.storage_stats();
  CHECK(s.wasted_slots == 2);
  CHECK(s.num_blocks == 1);
  CHECK(s.stored_slots == 3);
  CHECK(s.edge_data_bytes == 5 * DynamicGraph::kEdgeSlotBytes);
}

TEST_CASE("adaptive blocks grow with degree up to tau") {
  DynamicGraph g(Directedness::kDirected, 4);
  g.reserve_nodes(2);
  std::vector<std::uint32_t> caps;
  for (Timestamp t = 0; t < 20; ++t) {
    const std::uint32_t before = g.node_entry(0).num_blocks;
    g.add_edges(batch_of({{0, 1, t}}));
    const auto& ne = g.node_entry(0);
    if (ne.num_blocks != before) caps.push_back(g.block(ne.tail).capacity);
  }
  CHECK(caps == std::vector<std::uint32_t>{1, 1, 2, 4, 4, 4, 4});
}

TEST_CASE("undirected edges are stored at both endpoints") {
  DynamicGraph g(Directedness::kUndirected, 8);
  g.add_edges(batch_of({{0, 1, 1}, {1, 2, 2}}));
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(2) == 1);
  CHECK(g.num_live_edges() == 2);
}

TEST_CASE("out-of-order edges are rejected one by one") {
  DynamicGraph g(Directedness::kDirected, 8);
  const auto r = g.add_edges(batch_of({{0, 1, 10}, {0, 2, 5}, {0, 3, 10}, {1, 0, 1}}));
  REQUIRE(r.rejected.size() == 1);
  CHECK(r.rejected[0].index == 1);
  CHECK(r.edge_ids == std::vector<EdgeId>{0, 1, 2});
  CHECK(g.degree(0) == 2);
}

TEST_CASE("equal timestamps keep insertion order") {
  DynamicGraph g(Directedness::kDirected, 2);
  g.add_edges(batch_of({{0, 1, 7}, {0, 2, 7}, {0, 3, 7}}));
  const ListView v = walk(g, 0);
  REQUIRE(v.valid.size() == 3);
  CHECK(v.valid[0].neighbor == 1);
  CHECK(v.valid[1].neighbor == 2);
  CHECK(v.valid[2].neighbor == 3);
}

TEST_CASE("explicit ids must increase") {
  DynamicGraph g(Directedness::kDirected, 8);
  InsertionBatch b = batch_of({{0, 1, 1}, {0, 2, 2}});
  b.edge_ids = {10, 4};
  const auto r = g.add_edges(b);
  CHECK(r.edge_ids == std::vector<EdgeId>{10});
  REQUIRE(r.rejected.size() == 1);
  CHECK(g.next_edge_id() == 11);

  CHECK_THROWS_AS(g.add_edges(InsertionBatch{{{0, 1, 3}, {0, 2, 3}}, {20}}), ArgumentError);
}

TEST_CASE("deleted nodes are not found and reject new edges") {
  DynamicGraph g(Directedness::kUndirected, 8);
  g.add_edges(batch_of({{0, 1, 1}, {1, 2, 2}}));
  CHECK(g.delete_node(1));
  CHECK_THROWS_AS((void)g.degree(1), NotFoundError);
  CHECK_FALSE(g.delete_node(1));
  CHECK_FALSE(g.delete_node(99));
  const auto r = g.add_edges(batch_of({{2, 1, 3}}));
  CHECK(r.rejected.size() == 1);
}

TEST_CASE("soft deletion leaves block layout untouched") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto w = oracle::random_workload(seed, 400);
    for (auto& op : w.ops) {
      if (op.kind == oracle::Op::kDeleteNode) op.kind = oracle::Op::kDeleteEdges;
    }
    DynamicGraph g(GraphOptions{w.directedness, w.sizing, std::nullopt});
    std::vector<EdgeId> all_ids;
    for (const auto& op : w.ops) {
      if (op.kind != oracle::Op::kInsert) continue;
      const auto r = g.add_edges(op.batch);
      all_ids.insert(all_ids.end(), r.edge_ids.begin(), r.edge_ids.end());
    }
    std::vector<std::vector<BlockMeta>> before;
    for (NodeId n = 0; n < g.num_nodes(); ++n) before.push_back(walk(g, n).blocks);

    std::mt19937_64 rng(seed);
    std::shuffle(all_ids.begin(), all_ids.end(), rng);
    all_ids.resize(all_ids.size() / 2);
    g.delete_edges(all_ids);

    for (NodeId n = 0; n < g.num_nodes(); ++n) {
      const auto after = walk(g, n).blocks;
      REQUIRE(after.size() == before[n].size());
      for (std::size_t i = 0; i < after.size(); ++i) {
        CHECK(after[i].capacity == before[n][i].capacity);
        CHECK(after[i].size == before[n][i].size);
        CHECK(after[i].t_min == before[n][i].t_min);
        CHECK(after[i].t_max == before[n][i].t_max);
      }
    }
  }
}

TEST_CASE("random workloads: chronology, conservation, neighbor sets") {
  std::uint64_t waste_violations = 0;
  for (std::uint64_t seed = 100; seed < 300; ++seed) {
    const auto w = oracle::random_workload(seed, 600);
    DynamicGraph g(GraphOptions{w.directedness, w.sizing, std::nullopt});
    const oracle::Log log = oracle::apply(w, g);

    std::uint64_t degree_sum = 0;
    for (NodeId n = 0; n < g.num_nodes(); ++n) {
      if (!g.is_live(n)) continue;
      const ListView v = walk(g, n);
      CHECK(std::is_sorted(v.timestamps.begin(), v.timestamps.end()));
      for (const auto& b : v.blocks) {
        CHECK(b.size <= b.capacity);
        CHECK(b.t_min <= b.t_max);
      }
      degree_sum += g.degree(n);

      // List contents vs. the insertion log, ignoring neighbor liveness.
      oracle::Log raw = log;
      raw.deleted_nodes.clear();
      auto expect = oracle::candidates(raw, n, kMinTimestamp, kMaxTimestamp);
      auto got = v.valid;
      std::sort(expect.begin(), expect.end());
      std::sort(got.begin(), got.end());
      CHECK(got == expect);
      CHECK(g.degree(n) == expect.size());
    }

    std::uint64_t live = 0;
    for (const auto& e : log.accepted) {
      if (log.deleted_edges.contains(e.id)) continue;
      const bool src_live = log.node_live(e.src);
      if (w.directedness == Directedness::kDirected) {
        live += src_live ? 1 : 0;
      } else {
        live += (src_live ? 1 : 0) + (log.node_live(e.dst) ? 1 : 0);
      }
    }
    CHECK(degree_sum == live);
    if (log.deleted_nodes.empty()) {
      const std::uint64_t expected_edges =
          w.directedness == Directedness::kDirected ? live : live / 2;
      CHECK(g.num_live_edges() == expected_edges);
    }

    const StorageStats s = g.storage_stats();
    if (s.wasted_slots * 2 >= g.num_inserted_edges()) ++waste_violations;
  }
  // Reported, not asserted: the bound has no stated precondition.
  MESSAGE("waste bound exceeded on " << waste_violations << " of 200 workloads");
}

TEST_CASE("block capacity follows min(max(deg, 1), tau) at allocation") {
  for (std::uint32_t tau : {1U, 3U, 8U, 48U}) {
    DynamicGraph g(Directedness::kUndirected, tau);
    std::mt19937_64 rng(tau);
    Timestamp t = 0;
    for (int i = 0; i < 3000; ++i) {
      const NodeId u = rng() % 40;
      const NodeId v = rng() % 40;
      g.reserve_nodes(40);
      const std::uint64_t du = g.degree(u);
      const std::uint64_t dv = g.degree(v);
      const std::uint32_t bu = g.node_entry(u).num_blocks;
      const std::uint32_t bv = g.node_entry(v).num_blocks;
      g.add_edges(batch_of({{u, v, t++}}));
      auto law = [&](std::uint64_t d) {
        return static_cast<std::uint32_t>(std::min<std::uint64_t>(std::max<std::uint64_t>(d, 1), tau));
      };
      if (u != v) {
        if (g.node_entry(u).num_blocks != bu) CHECK(g.block(g.node_entry(u).tail).capacity == law(du));
        if (g.node_entry(v).num_blocks != bv) CHECK(g.block(g.node_entry(v).tail).capacity == law(dv));
      }
    }
  }
}

TEST_CASE("strawman sizes a block by the node's edges in the batch") {
  DynamicGraph g(GraphOptions{Directedness::kDirected, BlockSizing::strawman(), std::nullopt});
  g.add_edges(batch_of({{0, 1, 1}, {0, 2, 2}, {0, 3, 3}, {1, 0, 3}}));
  CHECK(g.node_entry(0).num_blocks == 1);
  CHECK(g.block(g.node_entry(0).head).capacity == 3);
  g.add_edges(batch_of({{0, 1, 4}}));
  CHECK(g.node_entry(0).num_blocks == 2);
  CHECK(g.block(g.node_entry(0).tail).capacity == 1);
}

TEST_CASE("adjacency list uses one block per edge") {
  DynamicGraph g(GraphOptions{Directedness::kDirected, BlockSizing::adjacency_list(), std::nullopt});
  g.add_edges(batch_of({{0, 1, 1}, {0, 2, 2}, {0, 3, 3}}));
  CHECK(g.node_entry(0).num_blocks == 3);
  CHECK(g.storage_stats().wasted_slots == 0);
}

TEST_CASE("self-loop deletion across a block boundary") {
  DynamicGraph g(GraphOptions{Directedness::kUndirected, BlockSizing::fixed(2), std::nullopt});
  g.add_edges(batch_of({{0, 1, 1}, {0, 0, 2}}));  // copies land in slots 2 and 3 of node 0
  REQUIRE(g.node_entry(0).num_blocks == 2);
  CHECK(g.degree(0) == 3);
  CHECK(g.delete_edges(std::vector<EdgeId>{1}) == 1);
  CHECK(g.degree(0) == 1);
}

TEST_CASE("offload: cutoffs below, above and inside the data") {
  SUBCASE("below everything") {
    DynamicGraph g(Directedness::kDirected, 4);
    g.add_edges(batch_of({{0, 1, 5}, {0, 2, 6}}));
    std::stringstream sink;
    const auto r = g.offload_before(0, sink);
    CHECK(r.blocks == 0);
    CHECK(g.degree(0) == 2);
    CHECK(read_offload_file(sink).empty());
  }
  SUBCASE("above everything") {
    DynamicGraph g(Directedness::kUndirected, 4);
    g.add_edges(batch_of({{0, 1, 5}, {0, 2, 6}, {1, 2, 7}}));
    std::stringstream sink;
    g.offload_before(100, sink);
    for (NodeId n = 0; n < 3; ++n) {
      CHECK(g.node_entry(n).num_blocks == 0);
      CHECK(g.degree(n) == 0);
    }
    CHECK(g.storage_stats().num_blocks == 0);
  }
  SUBCASE("three blocks with t_max 5, 15, 30 and cutoff 20") {
    DynamicGraph g(GraphOptions{Directedness::kDirected, BlockSizing::fixed(2), std::nullopt});
    g.add_edges(batch_of({{0, 1, 1}, {0, 2, 5}, {0, 3, 10}, {0, 4, 15}, {0, 5, 25}, {0, 6, 30}}));
    REQUIRE(g.node_entry(0).num_blocks == 3);
    g.delete_edges(std::vector<EdgeId>{2});
    std::stringstream sink;
    const auto r = g.offload_before(20, sink);
    CHECK(r.blocks == 2);
    CHECK(r.edges == 4);
    const auto& ne = g.node_entry(0);
    CHECK(ne.num_blocks == 1);
    CHECK(g.block(ne.head).t_max == 30);
    CHECK(g.block(ne.head).prev == kNoBlock);
    CHECK(g.degree(0) == 2);

    const auto blocks = read_offload_file(sink);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].node == 0);
    CHECK(blocks[0].edges == std::vector<OffloadedEdge>{{1, 0, 1, 1}, {2, 1, 5, 1}});
    CHECK(blocks[1].edges == std::vector<OffloadedEdge>{{3, 2, 10, 0}, {4, 3, 15, 1}});
  }
}

TEST_CASE("offload file is bit-exact and guarded") {
  DynamicGraph g(Directedness::kUndirected, 3);
  std::mt19937_64 rng(7);
  InsertionBatch b;
  for (Timestamp t = 0; t < 200; ++t) b.edges.push_back({rng() % 20, rng() % 20, t});
  g.add_edges(b);
  std::stringstream sink;
  g.offload_before(120, sink);
  const std::string bytes = sink.str();

  std::stringstream again(bytes);
  const auto blocks = read_offload_file(again);
  // Re-encode by hand and compare byte for byte.
  std::string re = "TGOF";
  auto put = [&re](auto v) {
    for (std::size_t i = 0; i < sizeof(v); ++i) re.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xFF));
  };
  put(std::uint32_t{1});
  for (const auto& blk : blocks) {
    put(static_cast<std::uint64_t>(blk.node));
    put(static_cast<std::uint32_t>(blk.edges.size()));
    for (const auto& e : blk.edges) {
      put(static_cast<std::uint64_t>(e.neighbor));
      put(static_cast<std::uint64_t>(e.edge_id));
      put(static_cast<std::uint64_t>(e.timestamp));
      put(static_cast<std::uint8_t>(e.valid));
    }
  }
  CHECK(re == bytes);

  std::stringstream truncated(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(read_offload_file(truncated), FormatError);
  std::stringstream bad_magic("XXXX" + bytes.substr(4));
  CHECK_THROWS_AS(read_offload_file(bad_magic), FormatError);
}

TEST_CASE("failed offload leaves the graph unchanged") {
  DynamicGraph g(Directedness::kDirected, 2);
  g.add_edges(batch_of({{0, 1, 1}, {0, 2, 2}, {0, 3, 3}}));
  const StorageStats before = g.storage_stats();
  std::stringstream sink;
  sink.setstate(std::ios::badbit);
  CHECK_THROWS_AS(g.offload_before(10, sink), IoError);
  const StorageStats after = g.storage_stats();
  CHECK(after.num_blocks == before.num_blocks);
  CHECK(g.degree(0) == 3);
}

TEST_CASE("partition view stores only owned endpoints") {
  GraphOptions opts{Directedness::kUndirected, BlockSizing::adaptive(4), PartitionView{1, 2}};
  DynamicGraph g(opts);
  g.add_edges(batch_of({{0, 1, 1}, {2, 3, 2}, {0, 2, 3}}));
  CHECK(g.degree(1) == 1);
  CHECK(g.degree(3) == 1);
  CHECK(g.degree(0) == 0);
  CHECK(g.degree(2) == 0);
}

TEST_CASE("tier counters split metadata from edge data") {
  DynamicGraph g(Directedness::kDirected, 4);
  g.record_access(3, 10);
  g.record_access(1, 5);
  CHECK(g.tier_access().metadata_reads == 4);
  CHECK(g.tier_access().edge_data_reads == 15);
  g.reset_tier_access();
  CHECK(g.tier_access().metadata_reads == 0);
}

TEST_CASE("invalid sizing parameters are config errors") {
  CHECK_THROWS_AS(DynamicGraph(Directedness::kDirected, 0), ConfigError);
  CHECK_THROWS_AS(DynamicGraph(GraphOptions{Directedness::kDirected, BlockSizing::fixed(0), std::nullopt}),
                  ConfigError);
}
