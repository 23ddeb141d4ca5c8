#include "tgraph/cluster.hpp"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <functional>
#include <mutex>
#include <stop_token>
#include <thread>

#include "tgraph/tcp_transport.hpp"
#include "tgraph/wire.hpp"

namespace tgraph {

std::string to_string(const WorkerAddress& w) {
  return "(m" + std::to_string(w.machine) + ",r" + std::to_string(w.rank) + ")";
}

void ClusterSpec::validate() const {
  if (machines == 0) throw ConfigError("cluster needs at least one machine");
  if (workers_per_machine == 0) throw ConfigError("cluster needs at least one worker per machine");
}

WorkerAddress route(const ClusterSpec& spec, WorkerAddress origin, NodeId target) {
  return {assign(spec.partition(), target), origin.rank};
}

CvReport measure_cv(std::span<const WorkerTelemetry> telemetry) {
  std::vector<double> busy;
  std::vector<double> served;
  std::vector<double> targets;
  for (const auto& t : telemetry) {
    busy.push_back(static_cast<double>(t.busy_time.count()));
    served.push_back(static_cast<double>(t.requests_served));
    targets.push_back(static_cast<double>(t.targets_sampled));
  }
  return {coefficient_of_variation(busy), coefficient_of_variation(served),
          coefficient_of_variation(targets)};
}

CvReport measure_same_rank_cv(const ClusterSpec& spec, std::span<const WorkerTelemetry> telemetry) {
  CvReport avg;
  if (spec.workers_per_machine == 0) return avg;
  for (std::uint32_t r = 0; r < spec.workers_per_machine; ++r) {
    std::vector<WorkerTelemetry> group;
    for (const auto& t : telemetry) {
      if (t.worker.rank == r) group.push_back(t);
    }
    const CvReport cv = measure_cv(group);
    avg.busy_time += cv.busy_time;
    avg.requests_served += cv.requests_served;
    avg.targets_sampled += cv.targets_sampled;
  }
  const double n = spec.workers_per_machine;
  avg.busy_time /= n;
  avg.requests_served /= n;
  avg.targets_sampled /= n;
  return avg;
}

RemoteError::RemoteError(std::uint64_t request_id, WorkerAddress worker,
                         const std::string& message)
    : std::runtime_error("request " + std::to_string(request_id) + " failed on worker " +
                         to_string(worker) + ": " + message),
      request_id_(request_id),
      worker_(worker) {}

std::string to_string(TransportKind kind) {
  return kind == TransportKind::kTcp ? "tcp" : "inprocess";
}

TransportKind parse_transport_kind(const std::string& name) {
  if (name == "inprocess" || name == "in-process" || name == "local") return TransportKind::kInProcess;
  if (name == "tcp") return TransportKind::kTcp;
  throw ConfigError("unknown transport '" + name + "'");
}

namespace detail {

struct Machine {
  Machine(const GraphOptions& graph_options, std::size_t node_dim, std::size_t edge_dim)
      : graph(graph_options), node_features(node_dim), edge_features(edge_dim) {}

  DynamicGraph graph;
  NodeFeatureTable node_features;
  EdgeFeatureTable edge_features;
};

// Serial actor: one thread draining a FIFO of encoded requests.
class Worker {
 public:
  Worker(WorkerAddress address, const Machine& machine)
      : address_(address), machine_(machine), thread_([this](std::stop_token st) { run(st); }) {}

  ~Worker() {
    {
      std::lock_guard lock(mu_);
      thread_.request_stop();
    }
    cv_.notify_all();
  }

  std::future<std::string> submit(std::string frame) {
    Task task{std::move(frame), {}};
    auto fut = task.reply.get_future();
    {
      std::lock_guard lock(mu_);
      queue_.push_back(std::move(task));
    }
    cv_.notify_one();
    return fut;
  }

  void set_failed(bool failed) { failed_.store(failed); }

  WorkerTelemetry telemetry() const {
    return {address_, served_.load(), targets_.load(), std::chrono::nanoseconds(busy_ns_.load())};
  }

  void reset_telemetry() {
    served_ = 0;
    targets_ = 0;
    busy_ns_ = 0;
  }

  std::uint64_t rank_violations() const { return violations_.load(); }

 private:
  struct Task {
    std::string frame;
    std::promise<std::string> reply;
  };

  void run(std::stop_token st) {
    while (true) {
      Task task;
      {
        std::unique_lock lock(mu_);
        cv_.wait(lock, [&] { return st.stop_requested() || !queue_.empty(); });
        if (queue_.empty()) return;
        task = std::move(queue_.front());
        queue_.pop_front();
      }
      task.reply.set_value(handle(task.frame));
    }
  }

  std::string handle(const std::string& frame) {
    std::uint64_t request_id = 0;
    try {
      wire::Message msg = wire::decode(frame);
      request_id = msg.request_id;
      if (failed_.load()) {
        return wire::encode({request_id, wire::ErrorMsg{"worker " + to_string(address_) + " is down"}});
      }
      if (auto* req = std::get_if<wire::SampleRequestMsg>(&msg.payload)) {
        return wire::encode({request_id, sample(*req)});
      }
      if (auto* req = std::get_if<wire::FeatureRequestMsg>(&msg.payload)) {
        return wire::encode({request_id, features(*req)});
      }
      return wire::encode({request_id, wire::ErrorMsg{"unexpected message type"}});
    } catch (const std::exception& e) {
      return wire::encode({request_id, wire::ErrorMsg{e.what()}});
    }
  }

  wire::SampleResponseMsg sample(const wire::SampleRequestMsg& req) {
    if (req.origin_rank != address_.rank) ++violations_;
    const auto start = std::chrono::steady_clock::now();
    const TemporalSampler sampler(machine_.graph);
    const SampleLayer layer = sampler.sample_layer(req.targets, req.t_starts, req.timestamps,
                                                   req.fanout, {req.policy, req.delta}, req.seed);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    busy_ns_ += static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count());
    ++served_;
    targets_ += req.targets.size();

    wire::SampleResponseMsg out;
    out.offsets.assign(layer.offsets.begin(), layer.offsets.end());
    out.neighbors = layer.neighbors;
    out.edge_ids = layer.edge_ids;
    out.timestamps = layer.timestamps;
    return out;
  }

  wire::FeatureResponseMsg features(const wire::FeatureRequestMsg& req) {
    if (req.origin_rank != address_.rank) ++violations_;
    ++served_;
    Lookup found;
    std::size_t dim = 0;
    if (req.kind == static_cast<std::uint8_t>(FeatureKind::kNode)) {
      found = machine_.node_features.get(req.ids);
      dim = machine_.node_features.dim();
    } else if (req.kind == static_cast<std::uint8_t>(FeatureKind::kEdge)) {
      found = machine_.edge_features.get(req.ids);
      dim = machine_.edge_features.dim();
    } else {
      throw FormatError("unknown feature kind");
    }
    wire::FeatureResponseMsg out;
    out.dim = static_cast<std::uint32_t>(dim);
    out.found = found.found;
    out.values.assign(found.values.data().begin(), found.values.data().end());
    return out;
  }

  WorkerAddress address_;
  const Machine& machine_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Task> queue_;
  std::atomic<bool> failed_{false};
  std::atomic<std::uint64_t> served_{0};
  std::atomic<std::uint64_t> targets_{0};
  std::atomic<std::uint64_t> busy_ns_{0};
  std::atomic<std::uint64_t> violations_{0};
  std::jthread thread_;  // last: starts after the rest is constructed
};

}  // namespace detail

namespace {

class InProcessTransport final : public Transport {
 public:
  InProcessTransport(const ClusterSpec& spec, std::vector<std::unique_ptr<detail::Worker>>& workers)
      : spec_(spec), workers_(workers) {}

  std::future<std::string> send(WorkerAddress dest, std::string frame) override {
    return workers_[spec_.index_of(dest)]->submit(std::move(frame));
  }

 private:
  ClusterSpec spec_;
  std::vector<std::unique_ptr<detail::Worker>>& workers_;
};

}  // namespace

Cluster::Cluster(ClusterOptions options) : options_(options) {
  options_.spec.validate();
  const ClusterSpec& spec = options_.spec;
  for (std::uint32_t m = 0; m < spec.machines; ++m) {
    GraphOptions go;
    go.directedness = options_.directedness;
    go.sizing = options_.sizing;
    go.partition = PartitionView{m, spec.machines};
    machines_.push_back(std::make_unique<detail::Machine>(go, options_.node_feature_dim,
                                                          options_.edge_feature_dim));
  }
  for (std::uint32_t m = 0; m < spec.machines; ++m) {
    for (std::uint32_t r = 0; r < spec.workers_per_machine; ++r) {
      workers_.push_back(std::make_unique<detail::Worker>(WorkerAddress{m, r}, *machines_[m]));
    }
  }
  if (options_.transport == TransportKind::kTcp) {
    transport_ = make_tcp_transport(spec, [this](WorkerAddress dest, std::string frame) {
      return workers_[options_.spec.index_of(dest)]->submit(std::move(frame));
    });
  } else {
    transport_ = std::make_unique<InProcessTransport>(spec, workers_);
  }
}

Cluster::~Cluster() {
  transport_.reset();  // closes sockets before the workers go away
  workers_.clear();
}

void Cluster::check_origin(WorkerAddress origin) const {
  if (origin.machine >= options_.spec.machines || origin.rank >= options_.spec.workers_per_machine) {
    throw ArgumentError("origin " + to_string(origin) + " is not part of the cluster");
  }
}

AddEdgesResult Cluster::ingest(const InsertionBatch& batch, const Matrix& edge_features) {
  std::unique_lock lock(mutate_mu_);
  const bool explicit_ids = !batch.edge_ids.empty();
  if (explicit_ids && batch.edge_ids.size() != batch.edges.size()) {
    throw ArgumentError("edge_ids must be row-matched with edges");
  }
  const bool with_features = edge_features.rows() > 0;
  if (with_features) {
    if (edge_features.rows() != batch.edges.size()) {
      throw ArgumentError("edge features must be row-matched with edges");
    }
    if (edge_features.cols() != options_.edge_feature_dim) {
      throw ArgumentError("edge feature dimension does not match the cluster");
    }
  }
  const bool undirected = options_.directedness == Directedness::kUndirected;

  AddEdgesResult result;
  InsertionBatch accepted;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < batch.edges.size(); ++i) {
    const TemporalEdge& e = batch.edges[i];
    const NodeId hi = std::max(e.src, e.dst);
    if (hi >= last_time_.size()) {
      last_time_.resize(hi + 1, kMinTimestamp);
      deleted_.resize(hi + 1, 0);
    }
    if (deleted_[e.src] || (undirected && deleted_[e.dst])) {
      result.rejected.push_back({i, "endpoint was deleted"});
      continue;
    }
    if (e.timestamp < last_time_[e.src] || (undirected && e.timestamp < last_time_[e.dst])) {
      result.rejected.push_back(
          {i, "timestamp " + std::to_string(e.timestamp) + " precedes the node's latest edge"});
      continue;
    }
    EdgeId id = next_edge_id_;
    if (explicit_ids) {
      id = batch.edge_ids[i];
      if (id < next_edge_id_) {
        result.rejected.push_back({i, "edge id " + std::to_string(id) + " is not increasing"});
        continue;
      }
    }
    next_edge_id_ = id + 1;
    last_time_[e.src] = e.timestamp;
    if (undirected) last_time_[e.dst] = e.timestamp;
    accepted.edges.push_back(e);
    accepted.edge_ids.push_back(id);
    rows.push_back(i);
    edge_ids_.push_back(id);
    edge_ends_.push_back(e);
    result.edge_ids.push_back(id);
  }

  const PartitionSpec part = options_.spec.partition();
  const auto shards = dispatch(part, accepted, options_.directedness);
  for (std::uint32_t m = 0; m < shards.size(); ++m) {
    const AddEdgesResult r = machines_[m]->graph.add_edges(shards[m]);
    if (!r.rejected.empty()) {
      throw std::logic_error("partition rejected a globally accepted edge: " + r.rejected[0].reason);
    }
  }
  if (with_features && !rows.empty()) {
    std::vector<std::vector<EdgeId>> ids(options_.spec.machines);
    std::vector<std::vector<std::size_t>> src_rows(options_.spec.machines);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const TemporalEdge& e = accepted.edges[k];
      const std::uint32_t ps = assign(part, e.src);
      ids[ps].push_back(accepted.edge_ids[k]);
      src_rows[ps].push_back(rows[k]);
      const std::uint32_t pd = assign(part, e.dst);
      if (undirected && pd != ps) {
        ids[pd].push_back(accepted.edge_ids[k]);
        src_rows[pd].push_back(rows[k]);
      }
    }
    for (std::uint32_t m = 0; m < options_.spec.machines; ++m) {
      Matrix shard(ids[m].size(), options_.edge_feature_dim);
      for (std::size_t k = 0; k < ids[m].size(); ++k) {
        std::ranges::copy(edge_features.row(src_rows[m][k]), shard.row(k).begin());
      }
      machines_[m]->edge_features.append(ids[m], shard);
    }
  }
  return result;
}

std::uint64_t Cluster::delete_edges(std::span<const EdgeId> edge_ids) {
  std::unique_lock lock(mutate_mu_);
  const PartitionSpec part = options_.spec.partition();
  const bool undirected = options_.directedness == Directedness::kUndirected;
  std::vector<std::vector<EdgeId>> per_src(options_.spec.machines);
  std::vector<std::vector<EdgeId>> per_dst(options_.spec.machines);
  for (EdgeId id : edge_ids) {
    auto it = std::lower_bound(edge_ids_.begin(), edge_ids_.end(), id);
    if (it == edge_ids_.end() || *it != id) continue;
    const TemporalEdge& e = edge_ends_[static_cast<std::size_t>(it - edge_ids_.begin())];
    const std::uint32_t ps = assign(part, e.src);
    per_src[ps].push_back(id);
    const std::uint32_t pd = assign(part, e.dst);
    if (undirected && pd != ps) per_dst[pd].push_back(id);
  }
  std::uint64_t deleted = 0;
  for (std::uint32_t m = 0; m < options_.spec.machines; ++m) {
    deleted += machines_[m]->graph.delete_edges(per_src[m]);
    machines_[m]->graph.delete_edges(per_dst[m]);
  }
  return deleted;
}

bool Cluster::delete_node(NodeId node) {
  std::unique_lock lock(mutate_mu_);
  // Same contract as a single graph: ids never seen in a batch are unknown.
  if (node >= deleted_.size() || deleted_[node]) return false;
  deleted_[node] = 1;
  for (auto& m : machines_) {
    m->graph.reserve_nodes(deleted_.size());
    m->graph.delete_node(node);
  }
  return true;
}

void Cluster::put_node_features(std::span<const NodeId> ids, const Matrix& rows) {
  std::unique_lock lock(mutate_mu_);
  if (rows.rows() != ids.size()) throw ArgumentError("rows must be row-matched with ids");
  const PartitionSpec part = options_.spec.partition();
  std::vector<std::vector<std::size_t>> idx(options_.spec.machines);
  for (std::size_t i = 0; i < ids.size(); ++i) idx[assign(part, ids[i])].push_back(i);
  for (std::uint32_t m = 0; m < options_.spec.machines; ++m) {
    if (idx[m].empty()) continue;
    std::vector<NodeId> shard_ids;
    Matrix shard(idx[m].size(), rows.cols());
    for (std::size_t k = 0; k < idx[m].size(); ++k) {
      shard_ids.push_back(ids[idx[m][k]]);
      std::ranges::copy(rows.row(idx[m][k]), shard.row(k).begin());
    }
    machines_[m]->node_features.put(shard_ids, shard);
  }
}

std::vector<std::string> Cluster::exchange(
    std::vector<std::pair<WorkerAddress, std::string>> frames,
    const std::vector<std::uint64_t>& ids) {
  std::vector<std::future<std::string>> pending;
  pending.reserve(frames.size());
  for (auto& [dest, frame] : frames) {
    pending.push_back(transport_->send(dest, std::move(frame)));
    ++messages_;
  }
  std::vector<std::string> replies;
  replies.reserve(pending.size());
  std::exception_ptr first_error;
  for (std::size_t k = 0; k < pending.size(); ++k) {
    try {
      replies.push_back(pending[k].get());
    } catch (const std::exception& e) {
      if (!first_error) {
        first_error = std::make_exception_ptr(RemoteError(ids[k], frames[k].first, e.what()));
      }
      replies.emplace_back();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return replies;
}

SampleLayer Cluster::distributed_sample_layer(std::span<const NodeId> sources,
                                              std::span<const Timestamp> times,
                                              std::uint32_t fanout, const SamplingPolicy& policy,
                                              std::uint64_t layer_seed, WorkerAddress origin) {
  check_origin(origin);
  if (sources.size() != times.size()) throw ArgumentError("sources and times differ in length");
  if (fanout == 0) throw ArgumentError("fanout must be >= 1");
  policy.validate();

  const std::uint32_t machines = options_.spec.machines;
  std::vector<std::vector<std::size_t>> groups(machines);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    groups[route(options_.spec, origin, sources[i]).machine].push_back(i);
  }

  std::vector<std::pair<WorkerAddress, std::string>> frames;
  std::vector<std::uint64_t> request_ids;
  std::vector<std::uint32_t> sent_to;
  for (std::uint32_t m = 0; m < machines; ++m) {
    if (groups[m].empty()) continue;
    wire::SampleRequestMsg msg;
    for (std::size_t i : groups[m]) {
      msg.targets.push_back(sources[i]);
      msg.timestamps.push_back(times[i]);
      msg.t_starts.push_back(window_start(policy, times[i]));
    }
    msg.fanout = fanout;
    msg.policy = policy.kind;
    msg.delta = policy.delta;
    msg.seed = layer_seed;
    msg.origin_machine = origin.machine;
    msg.origin_rank = origin.rank;
    const std::uint64_t id = next_request_id_++;
    const WorkerAddress dest{m, origin.rank};
    frames.emplace_back(dest, wire::encode({id, std::move(msg)}));
    request_ids.push_back(id);
    sent_to.push_back(m);
  }

  std::vector<wire::SampleResponseMsg> responses(machines);
  {
    std::shared_lock lock(mutate_mu_);
    const auto replies = exchange(frames, request_ids);
    for (std::size_t k = 0; k < replies.size(); ++k) {
      wire::Message reply = wire::decode(replies[k]);
      if (auto* err = std::get_if<wire::ErrorMsg>(&reply.payload)) {
        throw RemoteError(request_ids[k], {sent_to[k], origin.rank}, err->message);
      }
      auto* resp = std::get_if<wire::SampleResponseMsg>(&reply.payload);
      if (resp == nullptr || reply.request_id != request_ids[k] ||
          resp->offsets.size() != groups[sent_to[k]].size() + 1) {
        throw RemoteError(request_ids[k], {sent_to[k], origin.rank}, "malformed sample response");
      }
      responses[sent_to[k]] = std::move(*resp);
    }
  }

  // Merge back in the caller's source order.
  std::vector<std::size_t> pos_in_group(sources.size());
  for (const auto& g : groups) {
    for (std::size_t k = 0; k < g.size(); ++k) pos_in_group[g[k]] = k;
  }
  SampleLayer layer;
  layer.source_nodes.assign(sources.begin(), sources.end());
  layer.source_times.assign(times.begin(), times.end());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const auto& resp = responses[assign(options_.spec.partition(), sources[i])];
    const std::size_t k = pos_in_group[i];
    for (std::uint32_t j = resp.offsets[k]; j < resp.offsets[k + 1]; ++j) {
      layer.neighbors.push_back(resp.neighbors[j]);
      layer.edge_ids.push_back(resp.edge_ids[j]);
      layer.timestamps.push_back(resp.timestamps[j]);
    }
    layer.offsets.push_back(layer.neighbors.size());
  }
  return layer;
}

LayeredSample Cluster::distributed_sample_khop(const SampleRequest& request, WorkerAddress origin) {
  validate_request(request);
  check_origin(origin);
  LayeredSample result;
  std::vector<NodeId> frontier = request.targets;
  std::vector<Timestamp> times = request.timestamps;
  for (std::size_t hop = 0; hop < request.fanouts.size(); ++hop) {
    SampleLayer layer = distributed_sample_layer(frontier, times, request.fanouts[hop],
                                                 request.policy, layer_seed(request.seed, hop),
                                                 origin);
    frontier = layer.neighbors;
    times = layer.timestamps;
    result.layers.push_back(std::move(layer));
  }
  return result;
}

namespace {

Lookup fetch_routed(Cluster& cluster, FeatureKind kind, std::span<const std::uint64_t> ids,
                    std::span<const NodeId> holders, std::size_t dim, WorkerAddress origin,
                    const std::function<std::vector<std::string>(
                        std::vector<std::pair<WorkerAddress, std::string>>,
                        const std::vector<std::uint64_t>&)>& exchange,
                    std::atomic<std::uint64_t>& next_id) {
  const ClusterSpec& spec = cluster.spec();
  std::vector<std::vector<std::size_t>> groups(spec.machines);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    groups[route(spec, origin, holders[i]).machine].push_back(i);
  }
  std::vector<std::pair<WorkerAddress, std::string>> frames;
  std::vector<std::uint64_t> request_ids;
  std::vector<std::uint32_t> sent_to;
  for (std::uint32_t m = 0; m < spec.machines; ++m) {
    if (groups[m].empty()) continue;
    wire::FeatureRequestMsg msg;
    msg.kind = static_cast<std::uint8_t>(kind);
    for (std::size_t i : groups[m]) msg.ids.push_back(ids[i]);
    msg.origin_machine = origin.machine;
    msg.origin_rank = origin.rank;
    const std::uint64_t id = next_id++;
    frames.emplace_back(WorkerAddress{m, origin.rank}, wire::encode({id, std::move(msg)}));
    request_ids.push_back(id);
    sent_to.push_back(m);
  }
  Lookup out{Matrix(ids.size(), dim), std::vector<std::uint8_t>(ids.size(), 0)};
  const auto replies = exchange(std::move(frames), request_ids);
  for (std::size_t k = 0; k < replies.size(); ++k) {
    const WorkerAddress from{sent_to[k], origin.rank};
    wire::Message reply = wire::decode(replies[k]);
    if (auto* err = std::get_if<wire::ErrorMsg>(&reply.payload)) {
      throw RemoteError(request_ids[k], from, err->message);
    }
    auto* resp = std::get_if<wire::FeatureResponseMsg>(&reply.payload);
    const auto& group = groups[sent_to[k]];
    if (resp == nullptr || resp->found.size() != group.size() || resp->dim != dim ||
        resp->values.size() != group.size() * dim) {
      throw RemoteError(request_ids[k], from, "malformed feature response");
    }
    for (std::size_t j = 0; j < group.size(); ++j) {
      out.found[group[j]] = resp->found[j];
      std::copy_n(resp->values.begin() + static_cast<std::ptrdiff_t>(j * dim), dim,
                  out.values.row(group[j]).begin());
    }
  }
  return out;
}

}  // namespace

Lookup Cluster::fetch_node_features(std::span<const NodeId> ids, WorkerAddress origin) {
  check_origin(origin);
  std::shared_lock lock(mutate_mu_);
  return fetch_routed(
      *this, FeatureKind::kNode, ids, ids, options_.node_feature_dim, origin,
      [this](auto frames, const auto& rids) { return exchange(std::move(frames), rids); },
      next_request_id_);
}

Lookup Cluster::fetch_edge_features(std::span<const EdgeId> ids, std::span<const NodeId> holders,
                                    WorkerAddress origin) {
  check_origin(origin);
  if (ids.size() != holders.size()) throw ArgumentError("ids and holders differ in length");
  std::shared_lock lock(mutate_mu_);
  return fetch_routed(
      *this, FeatureKind::kEdge, ids, holders, options_.edge_feature_dim, origin,
      [this](auto frames, const auto& rids) { return exchange(std::move(frames), rids); },
      next_request_id_);
}

void Cluster::set_worker_failed(WorkerAddress worker, bool failed) {
  check_origin(worker);
  workers_[options_.spec.index_of(worker)]->set_failed(failed);
}

std::vector<WorkerTelemetry> Cluster::telemetry() const {
  std::vector<WorkerTelemetry> out;
  out.reserve(workers_.size());
  for (const auto& w : workers_) out.push_back(w->telemetry());
  return out;
}

void Cluster::reset_telemetry() {
  for (auto& w : workers_) w->reset_telemetry();
}

std::uint64_t Cluster::rank_violations() const {
  std::uint64_t total = 0;
  for (const auto& w : workers_) total += w->rank_violations();
  return total;
}

const DynamicGraph& Cluster::partition_graph(std::uint32_t machine) const {
  if (machine >= machines_.size()) throw NotFoundError("no machine " + std::to_string(machine));
  return machines_[machine]->graph;
}

std::vector<const DynamicGraph*> Cluster::partition_graphs() const {
  std::vector<const DynamicGraph*> out;
  for (const auto& m : machines_) out.push_back(&m->graph);
  return out;
}

}  // namespace tgraph
