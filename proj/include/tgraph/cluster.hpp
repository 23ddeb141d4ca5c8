#pragma once

#include <atomic>
#include <chrono>
#include <compare>
#include <cstdint>
#include <future>
#include <memory>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tgraph/feature_store.hpp"
#include "tgraph/graph_store.hpp"
#include "tgraph/partition.hpp"
#include "tgraph/sampler.hpp"
#include "tgraph/types.hpp"

namespace tgraph {

struct WorkerAddress {
  std::uint32_t machine = 0;
  std::uint32_t rank = 0;

  friend auto operator<=>(const WorkerAddress&, const WorkerAddress&) = default;
};

std::string to_string(const WorkerAddress& w);

struct ClusterSpec {
  std::uint32_t machines = 1;
  std::uint32_t workers_per_machine = 1;

  void validate() const;
  [[nodiscard]] PartitionSpec partition() const { return {machines, PartitionHash::kIdentity}; }
  [[nodiscard]] std::size_t num_workers() const {
    return static_cast<std::size_t>(machines) * workers_per_machine;
  }
  [[nodiscard]] std::size_t index_of(WorkerAddress w) const {
    return static_cast<std::size_t>(w.machine) * workers_per_machine + w.rank;
  }
};

// Static scheduling: the owner machine of the target, same rank as the origin.
WorkerAddress route(const ClusterSpec& spec, WorkerAddress origin, NodeId target);

struct WorkerTelemetry {
  WorkerAddress worker;
  std::uint64_t requests_served = 0;
  std::uint64_t targets_sampled = 0;
  std::chrono::nanoseconds busy_time{0};
};

struct CvReport {
  double busy_time = 0.0;
  double requests_served = 0.0;
  double targets_sampled = 0.0;
};

// Coefficient of variation of the telemetry over the given workers.
CvReport measure_cv(std::span<const WorkerTelemetry> telemetry);

// Per-rank CVs across machines (the same-rank worker groups), averaged.
CvReport measure_same_rank_cv(const ClusterSpec& spec, std::span<const WorkerTelemetry> telemetry);

class RemoteError : public std::runtime_error {
 public:
  RemoteError(std::uint64_t request_id, WorkerAddress worker, const std::string& message);
  [[nodiscard]] std::uint64_t request_id() const { return request_id_; }
  [[nodiscard]] WorkerAddress worker() const { return worker_; }

 private:
  std::uint64_t request_id_;
  WorkerAddress worker_;
};

enum class TransportKind : std::uint8_t { kInProcess = 0, kTcp = 1 };

std::string to_string(TransportKind kind);
TransportKind parse_transport_kind(const std::string& name);

// Moves encoded request frames to a worker and brings back its encoded reply.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual std::future<std::string> send(WorkerAddress dest, std::string frame) = 0;
};

struct ClusterOptions {
  ClusterSpec spec;
  Directedness directedness = Directedness::kDirected;
  BlockSizing sizing = BlockSizing::adaptive(48);
  TransportKind transport = TransportKind::kInProcess;
  std::size_t node_feature_dim = 0;
  std::size_t edge_feature_dim = 0;
};

namespace detail {
class Worker;
struct Machine;
}  // namespace detail

// A simulated cluster: one partition graph (plus feature shards) per machine
// and one serial worker actor per (machine, rank). All graph mutations go
// through this object and must not overlap with sampling calls; concurrent
// sampling and feature fetches from many trainer threads are fine.
class Cluster {
 public:
  explicit Cluster(ClusterOptions options);
  ~Cluster();
  Cluster(const Cluster&) = delete;
  Cluster& operator=(const Cluster&) = delete;

  // Validates the batch against the global stream order (the same rules as a
  // single DynamicGraph), assigns ids and dispatches accepted edges to their
  // owner partitions. `edge_features`, when non-empty, is row-matched with
  // the batch and stored next to every copy of the edge.
  AddEdgesResult ingest(const InsertionBatch& batch, const Matrix& edge_features = {});
  std::uint64_t delete_edges(std::span<const EdgeId> edge_ids);
  bool delete_node(NodeId node);
  void put_node_features(std::span<const NodeId> ids, const Matrix& rows);

  [[nodiscard]] LayeredSample distributed_sample_khop(const SampleRequest& request,
                                                      WorkerAddress origin);

  // One hop routed by owner; merged back in input order.
  [[nodiscard]] SampleLayer distributed_sample_layer(std::span<const NodeId> sources,
                                                     std::span<const Timestamp> times,
                                                     std::uint32_t fanout,
                                                     const SamplingPolicy& policy,
                                                     std::uint64_t layer_seed,
                                                     WorkerAddress origin);

  // Remote feature fetch, routed by assign(). Edge rows are looked up on the
  // partition of the node whose list holds the edge (the sampled source).
  [[nodiscard]] Lookup fetch_node_features(std::span<const NodeId> ids, WorkerAddress origin);
  [[nodiscard]] Lookup fetch_edge_features(std::span<const EdgeId> ids,
                                           std::span<const NodeId> holders, WorkerAddress origin);

  // Marks a worker as failed; its requests come back as RemoteError.
  void set_worker_failed(WorkerAddress worker, bool failed);

  [[nodiscard]] std::vector<WorkerTelemetry> telemetry() const;
  void reset_telemetry();
  [[nodiscard]] std::uint64_t rank_violations() const;

  [[nodiscard]] const ClusterSpec& spec() const { return options_.spec; }
  [[nodiscard]] const ClusterOptions& options() const { return options_; }
  [[nodiscard]] const DynamicGraph& partition_graph(std::uint32_t machine) const;
  [[nodiscard]] std::vector<const DynamicGraph*> partition_graphs() const;
  [[nodiscard]] std::uint64_t messages_sent() const { return messages_.load(); }

 private:
  void check_origin(WorkerAddress origin) const;
  std::vector<std::string> exchange(std::vector<std::pair<WorkerAddress, std::string>> frames,
                                    const std::vector<std::uint64_t>& ids);

  ClusterOptions options_;
  std::vector<std::unique_ptr<detail::Machine>> machines_;
  std::vector<std::unique_ptr<detail::Worker>> workers_;
  std::unique_ptr<Transport> transport_;
  mutable std::shared_mutex mutate_mu_;
  std::atomic<std::uint64_t> next_request_id_{1};
  std::atomic<std::uint64_t> messages_{0};

  // Global stream state used to validate ingestion before dispatch.
  std::vector<Timestamp> last_time_;
  std::vector<std::uint8_t> deleted_;
  std::vector<EdgeId> edge_ids_;  // accepted ids, increasing
  std::vector<TemporalEdge> edge_ends_;
  EdgeId next_edge_id_ = 0;
};

}  // namespace tgraph
