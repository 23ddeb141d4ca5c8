#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tgraph/bench.hpp"
#include "tgraph/cluster.hpp"
#include "tgraph/continuous.hpp"
#include "tgraph/dataset.hpp"
#include "tgraph/metrics.hpp"
#include "tgraph/partition.hpp"
#include "tgraph/report_json.hpp"
#include "tgraph/sampler.hpp"

using namespace tgraph;
using nlohmann::json;

namespace {

struct GraphArgs {
  std::string input;
  bool directed = false;
  std::string sizing = "adaptive";
  std::uint32_t tau = 48;
  std::size_t batch = 100000;
};

void add_graph_options(CLI::App* cmd, GraphArgs& g) {
  cmd->add_option("-i,--input", g.input, "edge CSV (src,dst,timestamp[,label])")->required();
  cmd->add_flag("--directed", g.directed, "treat edges as directed");
  cmd->add_option("--sizing", g.sizing, "adaptive | fixed | strawman | adjacency_list");
  cmd->add_option("--tau", g.tau, "threshold (adaptive) or block size (fixed)");
  cmd->add_option("--batch", g.batch, "edges per insertion batch");
}

BlockSizing sizing_of(const GraphArgs& g) {
  RunConfig c;
  apply_config_key(c, "tau", std::to_string(g.tau));
  apply_config_key(c, "sizing", g.sizing);
  return c.sizing;
}

Directedness directedness_of(const GraphArgs& g) {
  return g.directed ? Directedness::kDirected : Directedness::kUndirected;
}

EdgeStream read_stream(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_edge_csv(in);
}

AddEdgesResult build_graph(DynamicGraph& g, const std::vector<TemporalEdge>& edges, std::size_t batch) {
  AddEdgesResult all;
  for (std::size_t i = 0; i < edges.size(); i += batch) {
    InsertionBatch b;
    b.edges.assign(edges.begin() + static_cast<std::ptrdiff_t>(i),
                   edges.begin() + static_cast<std::ptrdiff_t>(std::min(edges.size(), i + batch)));
    AddEdgesResult r = g.add_edges(b);
    all.edge_ids.insert(all.edge_ids.end(), r.edge_ids.begin(), r.edge_ids.end());
    for (auto& rej : r.rejected) all.rejected.push_back({rej.index + i, rej.reason});
  }
  return all;
}

std::vector<std::uint64_t> parse_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!part.empty()) out.push_back(std::stoull(part));
  }
  return out;
}

std::vector<Timestamp> parse_times(const std::string& s) {
  std::vector<Timestamp> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!part.empty()) out.push_back(std::stoll(part));
  }
  return out;
}

struct QueryArgs {
  std::string targets;
  std::string times;
  std::string fanouts = "10";
  std::string policy = "recent";
  Timestamp window = 0;
  std::uint64_t seed = 0;
};

void add_query_options(CLI::App* cmd, QueryArgs& q) {
  cmd->add_option("--targets", q.targets, "comma-separated target nodes")->required();
  cmd->add_option("--times", q.times, "comma-separated query timestamps")->required();
  cmd->add_option("--fanouts", q.fanouts, "comma-separated fanout per hop");
  cmd->add_option("--policy", q.policy, "recent | uniform | time_window");
  cmd->add_option("--window", q.window, "window length for time_window");
  cmd->add_option("--seed", q.seed, "sampling seed");
}

SampleRequest request_of(const QueryArgs& q) {
  SampleRequest req;
  req.targets = parse_list(q.targets);
  req.timestamps = parse_times(q.times);
  for (auto f : parse_list(q.fanouts)) req.fanouts.push_back(static_cast<std::uint32_t>(f));
  req.policy = {parse_policy_kind(q.policy), q.window};
  req.seed = q.seed;
  return req;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal graph store, sampler and continuous-learning harness"};
  app.require_subcommand(1);

  // ingest
  GraphArgs ingest_args;
  Timestamp offload_cutoff = kMinTimestamp;
  std::string offload_file;
  auto* ingest = app.add_subcommand("ingest", "build a graph from CSV and report storage stats");
  add_graph_options(ingest, ingest_args);
  ingest->add_option("--offload-before", offload_cutoff, "offload blocks older than this timestamp");
  ingest->add_option("--offload-file", offload_file, "destination of offloaded blocks");

  // generate
  SyntheticSpec gen;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "write a synthetic power-law edge stream");
  generate->add_option("--nodes", gen.nodes);
  generate->add_option("--edges", gen.edges);
  generate->add_option("--skew", gen.skew, "degree density exponent");
  generate->add_option("--span", gen.time_span, "timestamps fall in [0, span)");
  generate->add_option("--locality", gen.locality);
  generate->add_option("--seed", gen.seed);
  generate->add_option("-o,--output", gen_out, "CSV path (stdout when omitted)");

  // sample
  GraphArgs sample_args;
  QueryArgs sample_q;
  unsigned sample_workers = 1;
  auto* sample = app.add_subcommand("sample", "k-hop temporal sample as JSON");
  add_graph_options(sample, sample_args);
  add_query_options(sample, sample_q);
  sample->add_option("--workers", sample_workers, "sampler threads");

  // bench
  GraphArgs bench_args;
  BenchConfig bench_cfg;
  std::string bench_fanouts = "10";
  bool ablation = false;
  double budget = 0.10;
  std::string taus = "1,2,3,4,5,6,7,8,10,12,16,24,32,48,64,128,256,512,1024,8192";
  std::string fixed_sizes = "1,2,3,4,5,6,7,8,10,12,16,24,32,48,64,128,256,512,1024";
  auto* bench_cmd = app.add_subcommand("bench", "sampling/fetch throughput, or block-sizing ablation");
  add_graph_options(bench_cmd, bench_args);
  bench_cmd->add_option("--fanouts", bench_fanouts);
  bench_cmd->add_option("--targets-per-call", bench_cfg.targets_per_call);
  bench_cmd->add_option("--calls", bench_cfg.calls);
  bench_cmd->add_option("--repeats", bench_cfg.repeats);
  bench_cmd->add_option("--warmup", bench_cfg.warmup);
  bench_cmd->add_option("--workers", bench_cfg.workers);
  bench_cmd->add_option("--seed", bench_cfg.seed);
  bench_cmd->add_flag("--ablation", ablation, "grid-search block sizing instead of timing sampling");
  bench_cmd->add_option("--budget", budget, "edge-data overhead budget for the ablation");
  bench_cmd->add_option("--taus", taus);
  bench_cmd->add_option("--fixed-sizes", fixed_sizes);

  // partition
  std::string part_input;
  std::string part_dir;
  std::uint32_t parts = 2;
  bool part_directed = false;
  auto* partition = app.add_subcommand("partition", "hash-partition a CSV into shards");
  partition->add_option("-i,--input", part_input)->required();
  partition->add_option("-p,--parts", parts);
  partition->add_option("-o,--out-dir", part_dir, "shard directory (stats only when omitted)");
  partition->add_flag("--directed", part_directed);

  // continuous
  std::string config_path;
  std::vector<std::string> overrides;
  std::string report_path;
  std::string histogram_dir;
  auto* continuous = app.add_subcommand("continuous", "replay the continuous-learning loop");
  continuous->add_option("-c,--config", config_path, "key = value config file");
  continuous->add_option("--set", overrides, "extra key=value settings");
  continuous->add_option("-o,--output", report_path, "JSON-lines reports (stdout when omitted)");
  continuous->add_option("--histograms", histogram_dir, "write per-round access histograms as CSV");

  // cluster
  GraphArgs cluster_args;
  QueryArgs cluster_q;
  ClusterSpec cluster_spec{2, 2};
  std::string transport = "tcp";
  std::uint32_t origin_machine = 0;
  std::uint32_t origin_rank = 0;
  auto* cluster_cmd = app.add_subcommand("cluster", "distributed sample over the simulated cluster");
  add_graph_options(cluster_cmd, cluster_args);
  add_query_options(cluster_cmd, cluster_q);
  cluster_cmd->add_option("--machines", cluster_spec.machines);
  cluster_cmd->add_option("--workers", cluster_spec.workers_per_machine);
  cluster_cmd->add_option("--transport", transport, "tcp | inprocess");
  cluster_cmd->add_option("--origin-machine", origin_machine);
  cluster_cmd->add_option("--origin-rank", origin_rank);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      const EdgeStream s = read_stream(ingest_args.input);
      GraphOptions go;
      go.directedness = directedness_of(ingest_args);
      go.sizing = sizing_of(ingest_args);
      DynamicGraph g(go);
      const AddEdgesResult r = build_graph(g, s.edges, ingest_args.batch);
      json out = {{"edges_read", s.edges.size()},
                  {"accepted", r.edge_ids.size()},
                  {"rejected", r.rejected.size()},
                  {"nodes", g.num_nodes()},
                  {"live_edges", g.num_live_edges()}};
      if (!offload_file.empty()) {
        std::ofstream sink(offload_file, std::ios::binary);
        const OffloadResult o = g.offload_before(offload_cutoff, sink);
        out["offloaded_blocks"] = o.blocks;
        out["offloaded_edges"] = o.edges;
      }
      const StorageStats st = g.storage_stats();
      out["avg_list_len"] = st.avg_list_len;
      out["max_list_len"] = st.max_list_len;
      out["edge_data_bytes"] = st.edge_data_bytes;
      out["metadata_bytes"] = st.metadata_bytes;
      out["wasted_slots"] = st.wasted_slots;
      std::cout << out.dump() << '\n';
      for (const auto& rej : r.rejected) {
        std::cerr << "row " << rej.index + 1 << " rejected: " << rej.reason << '\n';
      }
    } else if (*generate) {
      const auto edges = generate_synthetic(gen);
      if (gen_out.empty()) {
        write_edge_csv(std::cout, edges);
      } else {
        std::ofstream out(gen_out);
        write_edge_csv(out, edges);
      }
    } else if (*sample) {
      const EdgeStream s = read_stream(sample_args.input);
      GraphOptions go;
      go.directedness = directedness_of(sample_args);
      go.sizing = sizing_of(sample_args);
      DynamicGraph g(go);
      build_graph(g, s.edges, sample_args.batch);
      const TemporalSampler sampler(g, {sample_workers, true});
      std::cout << to_json(sampler.sample_khop(request_of(sample_q))).dump() << '\n';
    } else if (*bench_cmd) {
      const EdgeStream s = read_stream(bench_args.input);
      if (ablation) {
        std::vector<std::uint32_t> t;
        std::vector<std::uint32_t> f;
        for (auto v : parse_list(taus)) t.push_back(static_cast<std::uint32_t>(v));
        for (auto v : parse_list(fixed_sizes)) f.push_back(static_cast<std::uint32_t>(v));
        const AblationResult r = block_sizing_ablation(s.edges, directedness_of(bench_args),
                                                       bench_args.batch, t, f, budget);
        std::cout << to_json(r).dump() << '\n';
      } else {
        bench_cfg.directedness = directedness_of(bench_args);
        bench_cfg.sizing = sizing_of(bench_args);
        bench_cfg.ingest_batch = bench_args.batch;
        bench_cfg.fanouts.clear();
        for (auto v : parse_list(bench_fanouts)) bench_cfg.fanouts.push_back(static_cast<std::uint32_t>(v));
        std::cout << to_json(bench(bench_cfg, s.edges)).dump() << '\n';
      }
    } else if (*partition) {
      const EdgeStream s = read_stream(part_input);
      const PartitionSpec spec{parts, PartitionHash::kIdentity};
      const Directedness d = part_directed ? Directedness::kDirected : Directedness::kUndirected;
      InsertionBatch all;
      all.edges = s.edges;
      const auto shards = dispatch(spec, all, d);
      if (!part_dir.empty()) {
        std::filesystem::create_directories(part_dir);
        for (std::size_t p = 0; p < shards.size(); ++p) {
          std::ofstream out(std::filesystem::path(part_dir) / ("part-" + std::to_string(p) + ".csv"));
          write_edge_csv(out, shards[p].edges);
        }
      }
      std::cout << to_json(balance_stats(spec, s.edges, d)).dump() << '\n';
    } else if (*continuous) {
      RunConfig cfg;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw IoError("cannot open config '" + config_path + "'");
        cfg = parse_run_config(in);
      }
      for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
        apply_config_key(cfg, kv.substr(0, eq), kv.substr(eq + 1));
      }
      apply_env_overrides(cfg);
      std::ofstream file;
      std::ostream* out = &std::cout;
      if (!report_path.empty()) {
        file.open(report_path);
        if (!file) throw IoError("cannot open '" + report_path + "'");
        out = &file;
      }
      if (!histogram_dir.empty()) std::filesystem::create_directories(histogram_dir);
      run_continuous(cfg, [&](const RoundReport& r) {
        *out << to_json(r).dump() << '\n';
        out->flush();
        if (histogram_dir.empty()) return;
        const auto base = std::filesystem::path(histogram_dir);
        for (const auto& [name, hist] : {std::pair{"nodes", &r.node_access_histogram},
                                         std::pair{"edges", &r.edge_access_histogram}}) {
          std::ofstream h(base / ("round-" + std::to_string(r.round) + "-" + name + ".csv"));
          h << "rank,count\n";
          for (std::size_t k = 0; k < hist->size(); ++k) h << k + 1 << ',' << (*hist)[k] << '\n';
        }
      });
    } else if (*cluster_cmd) {
      const EdgeStream s = read_stream(cluster_args.input);
      ClusterOptions co;
      co.spec = cluster_spec;
      co.directedness = directedness_of(cluster_args);
      co.sizing = sizing_of(cluster_args);
      co.transport = parse_transport_kind(transport);
      Cluster cluster(co);
      for (std::size_t i = 0; i < s.edges.size(); i += cluster_args.batch) {
        InsertionBatch b;
        b.edges.assign(s.edges.begin() + static_cast<std::ptrdiff_t>(i),
                       s.edges.begin() +
                           static_cast<std::ptrdiff_t>(std::min(s.edges.size(), i + cluster_args.batch)));
        cluster.ingest(b);
      }
      const LayeredSample out =
          cluster.distributed_sample_khop(request_of(cluster_q), {origin_machine, origin_rank});
      const auto tel = cluster.telemetry();
      const CvReport cv = measure_same_rank_cv(cluster.spec(), tel);
      json j = to_json(out);
      j["telemetry"] = to_json(std::span<const WorkerTelemetry>(tel));
      j["messages"] = cluster.messages_sent();
      j["rank_violations"] = cluster.rank_violations();
      j["same_rank_requests_cv"] = cv.requests_served;
      std::cout << j.dump() << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
