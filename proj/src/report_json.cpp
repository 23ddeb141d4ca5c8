#include "tgraph/report_json.hpp"

namespace tgraph {

using nlohmann::json;

json to_json(const LayeredSample& sample) {
  json layers = json::array();
  for (const auto& l : sample.layers) {
    layers.push_back({{"source_nodes", l.source_nodes},
                      {"source_times", l.source_times},
                      {"offsets", l.offsets},
                      {"neighbors", l.neighbors},
                      {"edge_ids", l.edge_ids},
                      {"timestamps", l.timestamps}});
  }
  return {{"layers", layers}};
}

LayeredSample layered_sample_from_json(const json& j) {
  LayeredSample out;
  for (const auto& l : j.at("layers")) {
    SampleLayer layer;
    l.at("source_nodes").get_to(layer.source_nodes);
    l.at("source_times").get_to(layer.source_times);
    l.at("offsets").get_to(layer.offsets);
    l.at("neighbors").get_to(layer.neighbors);
    l.at("edge_ids").get_to(layer.edge_ids);
    l.at("timestamps").get_to(layer.timestamps);
    out.layers.push_back(std::move(layer));
  }
  return out;
}

json to_json(const RoundReport& r, std::size_t histogram_limit) {
  json epochs = json::array();
  for (const auto& e : r.epochs) {
    epochs.push_back({{"node_hit_rate", e.node_hit_rate},
                      {"edge_hit_rate", e.edge_hit_rate},
                      {"node_window_hit_rate", e.node_window_hit_rate},
                      {"edge_window_hit_rate", e.edge_window_hit_rate},
                      {"minibatches", e.minibatches}});
  }
  auto cut = [&](const std::vector<std::uint64_t>& h) {
    return std::vector<std::uint64_t>(
        h.begin(), h.begin() + static_cast<std::ptrdiff_t>(std::min(h.size(), histogram_limit)));
  };
  json j = {{"round", r.round},
            {"new_edges", r.new_edges},
            {"training_edges", r.training_edges},
            {"replay_edges", r.replay_edges},
            {"graph_update_seconds", r.graph_update_seconds},
            {"sampling_seconds", r.sampling_seconds},
            {"fetch_seconds", r.fetch_seconds},
            {"epochs", epochs},
            {"jaccard_nodes", r.jaccard_nodes},
            {"jaccard_edges", r.jaccard_edges},
            {"distinct_nodes", r.distinct_nodes},
            {"distinct_edges", r.distinct_edges},
            {"node_powerlaw_r2", r.node_powerlaw_r2},
            {"node_exponential_r2", r.node_exponential_r2},
            {"edge_powerlaw_r2", r.edge_powerlaw_r2},
            {"edge_exponential_r2", r.edge_exponential_r2},
            {"node_access_histogram", cut(r.node_access_histogram)},
            {"edge_access_histogram", cut(r.edge_access_histogram)},
            {"partition_node_cv", r.partition_node_cv},
            {"partition_edge_cv", r.partition_edge_cv}};
  if (r.trace) {
    j["trace"] = {{"new_edges", r.trace->new_edges},
                  {"replay_edges", r.trace->replay_edges},
                  {"minibatch_max_time", r.trace->minibatch_max_time},
                  {"sampled_nodes", r.trace->sampled_nodes},
                  {"sampled_edges", r.trace->sampled_edges}};
  }
  return j;
}

json to_json(const BenchReport& r) {
  return {{"sizing", r.sizing},
          {"edges", r.edges},
          {"ingest_edges_per_sec", r.ingest_edges_per_sec},
          {"sampling_targets_per_sec", r.sampling_targets_per_sec},
          {"sampled_edges_per_sec", r.sampled_edges_per_sec},
          {"fetch_rows_per_sec", r.fetch_rows_per_sec},
          {"sampling_runs", r.sampling_runs},
          {"targets_per_run", r.targets_per_run}};
}

json to_json(const AblationRow& row) {
  return {{"name", row.name},
          {"avg_list_len", row.stats.avg_list_len},
          {"max_list_len", row.stats.max_list_len},
          {"edge_data_bytes", row.stats.edge_data_bytes},
          {"metadata_bytes", row.stats.metadata_bytes},
          {"wasted_slots", row.stats.wasted_slots},
          {"num_blocks", row.stats.num_blocks},
          {"edge_overhead", row.edge_overhead},
          {"build_seconds", row.build_seconds}};
}

json to_json(const AblationResult& r) {
  json grid = json::array();
  for (const auto& row : r.grid) grid.push_back(to_json(row));
  return {{"adaptive", to_json(r.adaptive)},
          {"fixed", to_json(r.fixed)},
          {"strawman", to_json(r.strawman)},
          {"adjacency_list", to_json(r.adjacency_list)},
          {"static_edge_bytes", r.static_bytes},
          {"grid", grid}};
}

json to_json(const BalanceStats& s) {
  return {{"node_counts", s.node_counts},
          {"edge_counts", s.edge_counts},
          {"node_cv", s.node_cv},
          {"edge_cv", s.edge_cv}};
}

json to_json(const AccessDistribution& d) {
  return {{"histogram", d.histogram},
          {"powerlaw_r2", d.powerlaw_r2},
          {"exponential_r2", d.exponential_r2},
          {"powerlaw_slope", d.powerlaw_slope},
          {"exponential_slope", d.exponential_slope},
          {"degenerate", d.degenerate},
          {"better_fit", d.better_fit()}};
}

json to_json(std::span<const WorkerTelemetry> telemetry) {
  json out = json::array();
  for (const auto& t : telemetry) {
    out.push_back({{"machine", t.worker.machine},
                   {"rank", t.worker.rank},
                   {"requests_served", t.requests_served},
                   {"targets_sampled", t.targets_sampled},
                   {"busy_ns", t.busy_time.count()}});
  }
  return out;
}

}  // namespace tgraph
