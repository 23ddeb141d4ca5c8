#pragma once

#include <string>

#include "json.hpp"
#include "tgraph/bench.hpp"
#include "tgraph/cluster.hpp"
#include "tgraph/continuous.hpp"
#include "tgraph/metrics.hpp"
#include "tgraph/partition.hpp"
#include "tgraph/sampler.hpp"

namespace tgraph {

nlohmann::json to_json(const LayeredSample& sample);
LayeredSample layered_sample_from_json(const nlohmann::json& j);

// Rank-frequency histograms are cut to `histogram_limit` ranks.
nlohmann::json to_json(const RoundReport& report, std::size_t histogram_limit = 256);
nlohmann::json to_json(const BenchReport& report);
nlohmann::json to_json(const AblationRow& row);
nlohmann::json to_json(const AblationResult& result);
nlohmann::json to_json(const BalanceStats& stats);
nlohmann::json to_json(const AccessDistribution& dist);
nlohmann::json to_json(std::span<const WorkerTelemetry> telemetry);

}  // namespace tgraph
