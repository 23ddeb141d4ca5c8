#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "tgraph/types.hpp"

namespace tgraph {

struct EdgeStream {
  std::vector<TemporalEdge> edges;
  std::vector<std::int64_t> labels;  // empty when the file has no label column

  [[nodiscard]] NodeId max_node() const;
};

// Reads `src,dst,timestamp[,label]` rows. A non-numeric first row is taken as
// a header. Rows must be sorted by timestamp; violations and malformed fields
// raise FormatError naming the 1-based row.
EdgeStream read_edge_csv(std::istream& in);
void write_edge_csv(std::ostream& out, std::span<const TemporalEdge> edges);

struct SyntheticSpec {
  std::uint64_t nodes = 1000;
  std::uint64_t edges = 10000;
  double skew = 2.5;  // exponent of the degree density, P(k) ~ k^-skew
  Timestamp time_span = 1'000'000;
  std::uint64_t seed = 1;
  // Probability that an edge's source is re-drawn from recently active nodes;
  // adds temporal locality on top of the degree skew.
  double locality = 0.0;
  std::uint64_t locality_window = 1024;

  void validate() const;
};

// Chung-Lu style stream: both endpoints are drawn proportional to Pareto
// weights, node ids are a seeded permutation of the weight ranks, timestamps
// are uniform over [0, time_span) and emitted in order. No self-loops, so a
// single-node spec yields an empty stream.
std::vector<TemporalEdge> generate_synthetic(const SyntheticSpec& spec);

// Maximum-likelihood (discrete, continuity-corrected) estimate of the tail
// exponent of a degree sample, using values >= k_min.
double fit_tail_exponent(std::span<const std::uint64_t> degrees, std::uint64_t k_min);

}  // namespace tgraph
