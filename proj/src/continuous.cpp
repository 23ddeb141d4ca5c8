#include "tgraph/continuous.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "tgraph/feature_store.hpp"
#include "tgraph/metrics.hpp"
#include "tgraph/partition.hpp"
#include "tgraph/random.hpp"

namespace tgraph {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    T out{};
    if constexpr (std::is_floating_point_v<T>) {
      out = static_cast<T>(std::stod(value, &used));
    } else if constexpr (std::is_signed_v<T>) {
      out = static_cast<T>(std::stoll(value, &used));
    } else {
      if (!value.empty() && value[0] == '-') throw std::invalid_argument("negative");
      out = static_cast<T>(std::stoull(value, &used));
    }
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::exception&) {
    throw ConfigError("bad value '" + value + "' for " + key);
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  throw ConfigError("bad boolean '" + value + "' for " + key);
}

BlockSizing parse_sizing(const std::string& name, std::uint32_t param) {
  if (name == "adaptive") return BlockSizing::adaptive(param);
  if (name == "fixed") return BlockSizing::fixed(param);
  if (name == "strawman") return BlockSizing::strawman();
  if (name == "adjacency_list" || name == "adjacency-list") return BlockSizing::adjacency_list();
  throw ConfigError("unknown block sizing '" + name + "'");
}

}  // namespace

void RunConfig::validate() const {
  if (!(initial_fraction > 0.0 && initial_fraction < 1.0)) {
    throw ConfigError("initial_fraction must be in (0, 1)");
  }
  if (epochs == 0) throw ConfigError("epochs must be >= 1");
  if (replay_ratio < 0.0 || replay_ratio > 1.0) throw ConfigError("replay_ratio must be in [0, 1]");
  if (minibatch_size == 0) throw ConfigError("minibatch_size must be >= 1");
  if (fanouts.empty()) throw ConfigError("fanouts must name at least one hop");
  for (auto f : fanouts) {
    if (f == 0) throw ConfigError("fanouts must be >= 1");
  }
  if (batch_policy == BatchPolicy::kByCount && batch_edges == 0) {
    throw ConfigError("batch_edges must be >= 1");
  }
  if (batch_policy == BatchPolicy::kByTime && batch_interval <= 0) {
    throw ConfigError("batch_interval must be positive");
  }
  if (node_cache_fraction < 0.0 || node_cache_fraction > 1.0 || edge_cache_fraction < 0.0 ||
      edge_cache_fraction > 1.0) {
    throw ConfigError("cache fractions must be in [0, 1]");
  }
  if (!(cache_lambda > 0.0 && cache_lambda <= 1.0)) throw ConfigError("cache lambda must be in (0, 1]");
  if (initial_window_fraction <= 0.0 || initial_window_fraction > 1.0) {
    throw ConfigError("initial_window_fraction must be in (0, 1]");
  }
  if (sampler_workers == 0) throw ConfigError("sampler_workers must be >= 1");
  policy.validate();
  cluster.validate();
  if (dataset.empty()) generator.validate();
}

void apply_config_key(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "dataset") {
    c.dataset = value;
  } else if (key == "gen.nodes") {
    c.generator.nodes = parse_number<std::uint64_t>(key, value);
  } else if (key == "gen.edges") {
    c.generator.edges = parse_number<std::uint64_t>(key, value);
  } else if (key == "gen.skew") {
    c.generator.skew = parse_number<double>(key, value);
  } else if (key == "gen.time_span") {
    c.generator.time_span = parse_number<Timestamp>(key, value);
  } else if (key == "gen.locality") {
    c.generator.locality = parse_number<double>(key, value);
  } else if (key == "gen.locality_window") {
    c.generator.locality_window = parse_number<std::uint64_t>(key, value);
  } else if (key == "gen.seed") {
    c.generator.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "initial_fraction") {
    c.initial_fraction = parse_number<double>(key, value);
  } else if (key == "batch_policy") {
    if (value == "count" || value == "by_count") {
      c.batch_policy = BatchPolicy::kByCount;
    } else if (value == "time" || value == "by_time") {
      c.batch_policy = BatchPolicy::kByTime;
    } else {
      throw ConfigError("unknown batch_policy '" + value + "'");
    }
  } else if (key == "batch_edges") {
    c.batch_edges = parse_number<std::uint64_t>(key, value);
  } else if (key == "batch_interval") {
    c.batch_interval = parse_number<Timestamp>(key, value);
  } else if (key == "epochs") {
    c.epochs = parse_number<std::uint32_t>(key, value);
  } else if (key == "replay_ratio") {
    c.replay_ratio = parse_number<double>(key, value);
  } else if (key == "minibatch_size") {
    c.minibatch_size = parse_number<std::size_t>(key, value);
  } else if (key == "fanouts") {
    c.fanouts.clear();
    std::stringstream ss(value);
    std::string part;
    while (std::getline(ss, part, ',')) c.fanouts.push_back(parse_number<std::uint32_t>(key, trim(part)));
  } else if (key == "policy") {
    c.policy.kind = parse_policy_kind(value);
  } else if (key == "window") {
    c.policy.delta = parse_number<Timestamp>(key, value);
  } else if (key == "directed") {
    c.directedness = parse_bool(key, value) ? Directedness::kDirected : Directedness::kUndirected;
  } else if (key == "sizing") {
    c.sizing = parse_sizing(value, c.sizing.param);
  } else if (key == "sizing_param" || key == "tau") {
    c.sizing.param = parse_number<std::uint32_t>(key, value);
  } else if (key == "sampler_workers") {
    c.sampler_workers = parse_number<unsigned>(key, value);
  } else if (key == "node_cache_policy") {
    c.node_cache_policy = parse_cache_policy(value);
  } else if (key == "edge_cache_policy") {
    c.edge_cache_policy = parse_cache_policy(value);
  } else if (key == "node_cache_fraction") {
    c.node_cache_fraction = parse_number<double>(key, value);
  } else if (key == "edge_cache_fraction") {
    c.edge_cache_fraction = parse_number<double>(key, value);
  } else if (key == "cache_lambda" || key == "lambda") {
    c.cache_lambda = parse_number<double>(key, value);
  } else if (key == "cache_reuse") {
    c.cache_reuse = parse_bool(key, value);
  } else if (key == "cache_restore") {
    c.cache_restore = parse_bool(key, value);
  } else if (key == "cache_dir") {
    c.cache_dir = value;
  } else if (key == "node_dim") {
    c.node_dim = parse_number<std::size_t>(key, value);
  } else if (key == "edge_dim") {
    c.edge_dim = parse_number<std::size_t>(key, value);
  } else if (key == "node_feature_file") {
    c.node_feature_file = value;
  } else if (key == "edge_feature_file") {
    c.edge_feature_file = value;
  } else if (key == "initial_window_fraction") {
    c.initial_window_fraction = parse_number<double>(key, value);
  } else if (key == "machines") {
    c.cluster.machines = parse_number<std::uint32_t>(key, value);
  } else if (key == "workers_per_machine") {
    c.cluster.workers_per_machine = parse_number<std::uint32_t>(key, value);
  } else if (key == "transport") {
    c.transport = parse_transport_kind(value);
  } else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "max_rounds") {
    c.max_rounds = parse_number<std::size_t>(key, value);
  } else if (key == "sleep_ms") {
    c.sleep_ms = parse_number<double>(key, value);
  } else if (key == "trace") {
    c.trace = parse_bool(key, value);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

RunConfig parse_run_config(std::istream& in) {
  RunConfig c;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(row) + ": expected key = value");
    }
    apply_config_key(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

void apply_env_overrides(RunConfig& config) {
  if (const char* s = std::getenv("TG_SEED"); s != nullptr && *s != '\0') {
    config.seed = parse_number<std::uint64_t>("TG_SEED", s);
  }
}

Matrix synthetic_features(std::span<const std::uint64_t> ids, std::size_t dim, std::uint64_t salt) {
  Matrix m(ids.size(), dim);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto row = m.row(i);
    for (std::size_t j = 0; j < dim; ++j) {
      const std::uint64_t h = hash_combine(hash_combine(salt, ids[i]), j);
      row[j] = static_cast<float>(static_cast<double>(h >> 40) * 0x1.0p-24 * 2.0 - 1.0);
    }
  }
  return m;
}

std::vector<std::pair<std::size_t, std::size_t>> split_batches(
    std::span<const TemporalEdge> stream, std::size_t begin, BatchPolicy policy,
    std::uint64_t batch_edges, Timestamp interval) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (begin >= stream.size()) return out;
  if (policy == BatchPolicy::kByCount) {
    if (batch_edges == 0) throw ConfigError("batch_edges must be >= 1");
    for (std::size_t b = begin; b < stream.size(); b += batch_edges) {
      out.emplace_back(b, std::min<std::size_t>(stream.size(), b + batch_edges));
    }
    return out;
  }
  if (interval <= 0) throw ConfigError("batch_interval must be positive");
  const Timestamp t0 = stream[begin].timestamp;
  std::size_t b = begin;
  while (b < stream.size()) {
    const Timestamp slot = (stream[b].timestamp - t0) / interval;
    const Timestamp end_time = t0 + (slot + 1) * interval;
    std::size_t e = b;
    while (e < stream.size() && stream[e].timestamp < end_time) ++e;
    out.emplace_back(b, e);
    b = e;
  }
  return out;
}

std::vector<TemporalEdge> load_stream(const RunConfig& config) {
  if (config.dataset.empty()) {
    SyntheticSpec spec = config.generator;
    return generate_synthetic(spec);
  }
  std::ifstream in(config.dataset);
  if (!in) throw IoError("cannot open dataset '" + config.dataset + "'");
  return read_edge_csv(in).edges;
}

namespace {

template <typename Table>
Table load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open feature file '" + path + "'");
  const bool csv = path.ends_with(".csv");
  if constexpr (std::is_same_v<Table, NodeFeatureTable>) {
    return csv ? read_node_feature_csv(in) : read_node_feature_file(in);
  } else {
    return csv ? read_edge_feature_csv(in) : read_edge_feature_file(in);
  }
}

// Where feature rows come from on a cache miss, and where new rows go.
class FeatureBackend {
 public:
  FeatureBackend(const RunConfig& config, Cluster* cluster) : cluster_(cluster) {
    if (!config.node_feature_file.empty()) {
      node_file_.emplace(load_table<NodeFeatureTable>(config.node_feature_file));
      node_dim_ = node_file_->dim();
    } else {
      node_dim_ = config.node_dim;
    }
    if (!config.edge_feature_file.empty()) {
      edge_file_.emplace(load_table<EdgeFeatureTable>(config.edge_feature_file));
      edge_dim_ = edge_file_->dim();
    } else {
      edge_dim_ = config.edge_dim;
    }
    local_nodes_.emplace(node_dim_);
    local_edges_.emplace(edge_dim_);
  }

  [[nodiscard]] std::size_t node_dim() const { return node_dim_; }
  [[nodiscard]] std::size_t edge_dim() const { return edge_dim_; }

  Matrix node_rows(std::span<const NodeId> ids) const {
    if (node_file_) return node_file_->get(ids).values;
    return synthetic_features(ids, node_dim_, 0x4E0DE);
  }

  Matrix edge_rows(std::span<const EdgeId> ids) const {
    if (edge_file_) return edge_file_->get(ids).values;
    return synthetic_features(ids, edge_dim_, 0xED6E);
  }

  // Registers feature rows for newly seen nodes (local store only; the
  // cluster path stores them through put_node_features).
  void add_nodes(std::span<const NodeId> ids) {
    if (ids.empty()) return;
    const Matrix rows = node_rows(ids);
    if (cluster_ != nullptr) {
      cluster_->put_node_features(ids, rows);
    } else {
      local_nodes_->put(ids, rows);
    }
  }

  void add_edges(std::span<const EdgeId> ids) {
    if (ids.empty() || cluster_ != nullptr) return;
    local_edges_->append(ids, edge_rows(ids));
  }

  Lookup fetch_nodes(std::span<const NodeId> ids, WorkerAddress origin) {
    if (cluster_ != nullptr) return cluster_->fetch_node_features(ids, origin);
    return local_nodes_->get(ids);
  }

  Lookup fetch_edges(std::span<const EdgeId> ids, std::span<const NodeId> holders,
                     WorkerAddress origin) {
    if (cluster_ != nullptr) return cluster_->fetch_edge_features(ids, holders, origin);
    return local_edges_->get(ids);
  }

 private:
  Cluster* cluster_;
  std::optional<NodeFeatureTable> node_file_;
  std::optional<EdgeFeatureTable> edge_file_;
  std::optional<NodeFeatureTable> local_nodes_;
  std::optional<EdgeFeatureTable> local_edges_;
  std::size_t node_dim_ = 0;
  std::size_t edge_dim_ = 0;
};

struct HitCounter {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  void add(const std::vector<std::uint8_t>& hit) {
    total += hit.size();
    for (auto h : hit) hits += h;
  }
  [[nodiscard]] double rate() const {
    return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
  }
};

// Fetches `keys` through the cache, fills misses from the backend and
// inserts them (subject to the cache's per-batch cap).
template <typename Fill>
std::vector<std::uint8_t> fetch_through(VectorCache& cache, std::span<const std::uint64_t> keys,
                                        Fill&& fill) {
  FetchResult r = cache.fetch(keys);
  if (!r.miss_keys.empty()) {
    const Matrix rows = fill(r.miss_keys);
    cache.insert_batch(r.miss_keys, rows);
  }
  return std::move(r.hit);
}

std::vector<EdgeId> sample_replay(std::span<const EdgeId> history, std::size_t k, SplitMix64& rng) {
  // Floyd's algorithm: k distinct positions out of history.size().
  const std::size_t n = history.size();
  k = std::min(k, n);
  std::unordered_set<std::size_t> chosen;
  std::vector<EdgeId> out;
  for (std::size_t j = n - k; j < n; ++j) {
    const std::size_t t = rng.below(j + 1);
    const std::size_t pick = chosen.insert(t).second ? t : j;
    if (pick == j) chosen.insert(j);
    out.push_back(history[pick]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> sorted_keys(const std::unordered_map<std::uint64_t, std::uint64_t>& m) {
  std::vector<std::uint64_t> out;
  out.reserve(m.size());
  for (const auto& [k, v] : m) out.push_back(k);
  std::sort(out.begin(), out.end());
  return out;
}

void fill_distribution(const std::unordered_map<std::uint64_t, std::uint64_t>& counts,
                       double& pl, double& ex, std::vector<std::uint64_t>& hist) {
  if (counts.empty()) return;
  std::vector<std::uint64_t> values;
  values.reserve(counts.size());
  for (const auto& [k, v] : counts) values.push_back(v);
  const AccessDistribution d = access_distribution(values);
  pl = d.powerlaw_r2;
  ex = d.exponential_r2;
  hist = d.histogram;
}

}  // namespace

void run_continuous(const RunConfig& config, const std::vector<TemporalEdge>& stream,
                    const ReportSink& sink) {
  config.validate();
  const std::size_t n_total = stream.size();
  if (n_total < 2) throw ConfigError("stream needs at least two edges");
  for (std::size_t i = 1; i < n_total; ++i) {
    if (stream[i].timestamp < stream[i - 1].timestamp) {
      throw FormatError("stream is not sorted by timestamp at edge " + std::to_string(i));
    }
  }
  const auto n_init = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(config.initial_fraction * static_cast<double>(n_total))));

  const bool use_cluster = config.cluster.machines > 1 || config.transport == TransportKind::kTcp;
  std::unique_ptr<DynamicGraph> graph;
  std::unique_ptr<Cluster> cluster;
  std::unique_ptr<TemporalSampler> sampler;
  if (use_cluster) {
    ClusterOptions co;
    co.spec = config.cluster;
    co.directedness = config.directedness;
    co.sizing = config.sizing;
    co.transport = config.transport;
    co.node_feature_dim = config.node_feature_file.empty() ? config.node_dim : 0;
    co.edge_feature_dim = config.edge_feature_file.empty() ? config.edge_dim : 0;
    cluster = std::make_unique<Cluster>(co);
  } else {
    GraphOptions go;
    go.directedness = config.directedness;
    go.sizing = config.sizing;
    graph = std::make_unique<DynamicGraph>(go);
    sampler = std::make_unique<TemporalSampler>(*graph, SamplerOptions{config.sampler_workers, true});
  }
  FeatureBackend features(config, cluster.get());
  if (cluster && (features.node_dim() != cluster->options().node_feature_dim ||
                  features.edge_dim() != cluster->options().edge_feature_dim)) {
    throw ConfigError("feature files are not supported together with cluster mode");
  }

  // Cache sizes are fractions of the whole stream's node and edge counts.
  NodeId max_node = 0;
  for (const auto& e : stream) max_node = std::max({max_node, e.src, e.dst});
  std::vector<std::uint8_t> seen_node(max_node + 1, 0);
  std::uint64_t distinct_nodes = 0;
  for (const auto& e : stream) {
    for (NodeId n : {e.src, e.dst}) {
      if (!seen_node[n]) {
        seen_node[n] = 1;
        ++distinct_nodes;
      }
    }
  }
  std::fill(seen_node.begin(), seen_node.end(), 0);
  const CacheConfig node_cc{config.node_cache_policy,
                            static_cast<std::size_t>(std::llround(config.node_cache_fraction *
                                                                  static_cast<double>(distinct_nodes))),
                            features.node_dim(), config.cache_lambda};
  const CacheConfig edge_cc{config.edge_cache_policy,
                            static_cast<std::size_t>(std::llround(config.edge_cache_fraction *
                                                                  static_cast<double>(n_total))),
                            features.edge_dim(), config.cache_lambda};

  std::vector<EdgeId> accepted;  // ids are stream positions
  auto ingest = [&](std::size_t begin, std::size_t end) {
    InsertionBatch batch;
    batch.edges.assign(stream.begin() + static_cast<std::ptrdiff_t>(begin),
                       stream.begin() + static_cast<std::ptrdiff_t>(end));
    for (std::size_t i = begin; i < end; ++i) batch.edge_ids.push_back(i);
    std::vector<NodeId> new_nodes;
    for (const auto& e : batch.edges) {
      for (NodeId n : {e.src, e.dst}) {
        if (!seen_node[n]) {
          seen_node[n] = 1;
          new_nodes.push_back(n);
        }
      }
    }
    AddEdgesResult r;
    if (cluster) {
      Matrix rows;
      if (features.edge_dim() > 0) rows = features.edge_rows(batch.edge_ids);
      r = cluster->ingest(batch, rows);
    } else {
      r = graph->add_edges(batch);
    }
    features.add_nodes(new_nodes);
    features.add_edges(r.edge_ids);
    accepted.insert(accepted.end(), r.edge_ids.begin(), r.edge_ids.end());
    return r.edge_ids;
  };

  ingest(0, n_init);

  const auto batches = split_batches(stream, n_init, config.batch_policy, config.batch_edges,
                                     config.batch_interval);
  std::optional<CacheSnapshot> node_carry;
  std::optional<CacheSnapshot> edge_carry;
  std::vector<NodeId> prev_nodes;
  std::vector<EdgeId> prev_edges;
  const std::filesystem::path cache_dir(config.cache_dir);
  if (!config.cache_dir.empty()) std::filesystem::create_directories(cache_dir);

  for (std::size_t round = 0; round < batches.size(); ++round) {
    if (config.max_rounds != 0 && round >= config.max_rounds) break;
    RoundReport report;
    report.round = round;
    if (config.trace) report.trace.emplace();

    // (1) ingest, strictly before any read of this round
    auto t0 = Clock::now();
    const std::size_t history_end = accepted.size();
    const std::vector<EdgeId> new_ids = ingest(batches[round].first, batches[round].second);
    report.graph_update_seconds = seconds_since(t0);
    report.new_edges = new_ids.size();

    // (2) training set: new edges plus uniformly replayed history, in time order
    SplitMix64 replay_rng(hash_combine(hash_combine(config.seed, round), 0x4E91A7));
    const auto replay_count = static_cast<std::size_t>(
        std::llround(config.replay_ratio * static_cast<double>(new_ids.size())));
    const std::vector<EdgeId> replay =
        sample_replay(std::span(accepted).first(history_end), replay_count, replay_rng);
    std::vector<EdgeId> training = new_ids;
    training.insert(training.end(), replay.begin(), replay.end());
    std::sort(training.begin(), training.end(), [&](EdgeId a, EdgeId b) {
      return std::pair(stream[a].timestamp, a) < std::pair(stream[b].timestamp, b);
    });
    report.training_edges = training.size();
    report.replay_edges = replay.size();
    if (report.trace) {
      report.trace->new_edges = new_ids;
      report.trace->replay_edges = replay;
    }

    // (3) caches: carried over from the previous round or cold
    VectorCache node_cache(node_cc);
    VectorCache edge_cache(edge_cc);
    if (config.cache_reuse) {
      if (!config.cache_dir.empty() && round > 0) {
        std::ifstream nin(cache_dir / "node_cache.tgcs", std::ios::binary);
        std::ifstream ein(cache_dir / "edge_cache.tgcs", std::ios::binary);
        node_cache = VectorCache::load(nin);
        edge_cache = VectorCache::load(ein);
      } else {
        if (node_carry) node_cache.restore(*node_carry);
        if (edge_carry) edge_cache.restore(*edge_carry);
      }
    }
    const CacheSnapshot node_start = node_cache.snapshot();
    const CacheSnapshot edge_start = edge_cache.snapshot();

    std::unordered_map<std::uint64_t, std::uint64_t> node_access;
    std::unordered_map<std::uint64_t, std::uint64_t> edge_access;
    const std::size_t num_mb = (training.size() + config.minibatch_size - 1) / config.minibatch_size;
    const auto window = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::ceil(config.initial_window_fraction * static_cast<double>(num_mb))));

    for (std::uint32_t epoch = 0; epoch < config.epochs; ++epoch) {
      if (epoch > 0 && config.cache_restore) {
        node_cache.restore(node_start);
        edge_cache.restore(edge_start);
      }
      HitCounter node_hits, edge_hits, node_window, edge_window;
      std::vector<Timestamp> mb_max;
      for (std::size_t mb = 0; mb < num_mb; ++mb) {
        const std::size_t lo = mb * config.minibatch_size;
        const std::size_t hi = std::min(training.size(), lo + config.minibatch_size);
        SampleRequest req;
        req.fanouts = config.fanouts;
        req.policy = config.policy;
        req.seed = hash_combine(hash_combine(hash_combine(config.seed, round), epoch), mb);
        Timestamp max_t = kMinTimestamp;
        for (std::size_t k = lo; k < hi; ++k) {
          const TemporalEdge& e = stream[training[k]];
          req.targets.push_back(e.src);
          req.timestamps.push_back(e.timestamp);
          req.targets.push_back(e.dst);
          req.timestamps.push_back(e.timestamp);
          max_t = std::max(max_t, e.timestamp);
        }
        mb_max.push_back(max_t);
        const WorkerAddress origin{0, static_cast<std::uint32_t>(mb % config.cluster.workers_per_machine)};

        auto ts = Clock::now();
        const LayeredSample sample =
            cluster ? cluster->distributed_sample_khop(req, origin) : sampler->sample_khop(req);
        report.sampling_seconds += seconds_since(ts);

        // Distinct keys in first-occurrence order.
        std::vector<NodeId> node_keys;
        std::unordered_set<NodeId> node_set;
        auto add_node = [&](NodeId n) {
          if (node_set.insert(n).second) node_keys.push_back(n);
        };
        for (NodeId n : req.targets) add_node(n);
        std::vector<EdgeId> edge_keys;
        std::vector<NodeId> edge_holders;
        std::unordered_set<EdgeId> edge_set;
        for (const auto& layer : sample.layers) {
          for (std::size_t s = 0; s < layer.num_sources(); ++s) {
            for (auto j = layer.offsets[s]; j < layer.offsets[s + 1]; ++j) {
              add_node(layer.neighbors[j]);
              if (edge_set.insert(layer.edge_ids[j]).second) {
                edge_keys.push_back(layer.edge_ids[j]);
                edge_holders.push_back(layer.source_nodes[s]);
              }
            }
          }
        }
        for (NodeId n : node_keys) ++node_access[n];
        for (EdgeId e : edge_keys) ++edge_access[e];

        auto tf = Clock::now();
        const auto nh = fetch_through(node_cache, node_keys, [&](const std::vector<CacheKey>& miss) {
          return features.fetch_nodes(miss, origin).values;
        });
        const auto eh = fetch_through(edge_cache, edge_keys, [&](const std::vector<CacheKey>& miss) {
          std::unordered_map<EdgeId, NodeId> holder_of;
          for (std::size_t k = 0; k < edge_keys.size(); ++k) holder_of.emplace(edge_keys[k], edge_holders[k]);
          std::vector<NodeId> holders;
          holders.reserve(miss.size());
          for (auto id : miss) holders.push_back(holder_of.at(id));
          return features.fetch_edges(miss, holders, origin).values;
        });
        report.fetch_seconds += seconds_since(tf);

        node_hits.add(nh);
        edge_hits.add(eh);
        if (mb < window) {
          node_window.add(nh);
          edge_window.add(eh);
        }
        if (config.sleep_ms > 0.0) {
          std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(config.sleep_ms));
        }
      }
      report.epochs.push_back({node_hits.rate(), edge_hits.rate(), node_window.rate(),
                               edge_window.rate(), num_mb});
      if (report.trace) report.trace->minibatch_max_time.push_back(std::move(mb_max));
    }

    // Round end: keep the cache for the next round.
    if (!config.cache_dir.empty()) {
      std::ofstream nout(cache_dir / "node_cache.tgcs", std::ios::binary | std::ios::trunc);
      std::ofstream eout(cache_dir / "edge_cache.tgcs", std::ios::binary | std::ios::trunc);
      node_cache.persist(nout);
      edge_cache.persist(eout);
    }
    node_carry = node_cache.snapshot();
    edge_carry = edge_cache.snapshot();

    std::vector<NodeId> nodes = sorted_keys(node_access);
    std::vector<EdgeId> edges = sorted_keys(edge_access);
    report.distinct_nodes = nodes.size();
    report.distinct_edges = edges.size();
    if (round > 0) {
      report.jaccard_nodes = jaccard(nodes, prev_nodes);
      report.jaccard_edges = jaccard(edges, prev_edges);
    }
    fill_distribution(node_access, report.node_powerlaw_r2, report.node_exponential_r2,
                      report.node_access_histogram);
    fill_distribution(edge_access, report.edge_powerlaw_r2, report.edge_exponential_r2,
                      report.edge_access_histogram);
    if (cluster) {
      const auto parts = cluster->partition_graphs();
      const BalanceStats b = balance_stats(std::span<const DynamicGraph* const>(parts));
      report.partition_node_cv = b.node_cv;
      report.partition_edge_cv = b.edge_cv;
    }
    if (report.trace) {
      report.trace->sampled_nodes = nodes;
      report.trace->sampled_edges = edges;
    }
    prev_nodes = std::move(nodes);
    prev_edges = std::move(edges);
    sink(report);
  }
}

void run_continuous(const RunConfig& config, const ReportSink& sink) {
  run_continuous(config, load_stream(config), sink);
}

std::vector<RoundReport> run_continuous(const RunConfig& config,
                                        const std::vector<TemporalEdge>& stream) {
  std::vector<RoundReport> out;
  run_continuous(config, stream, [&](const RoundReport& r) { out.push_back(r); });
  return out;
}

}  // namespace tgraph
