#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace tgraph {

// |A ∩ B| / |A ∪ B| with duplicates ignored; 0 when both are empty.
double jaccard(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
double jaccard(const std::unordered_set<std::uint64_t>& a, const std::unordered_set<std::uint64_t>& b);

struct AccessDistribution {
  std::vector<std::uint64_t> histogram;  // rank-frequency: non-zero counts, descending
  double powerlaw_r2 = 0.0;     // log(count) ~ log(rank)
  double exponential_r2 = 0.0;  // log(count) ~ rank
  double powerlaw_slope = 0.0;
  double exponential_slope = 0.0;
  bool degenerate = false;  // one distinct count value: no fit is meaningful

  [[nodiscard]] std::string better_fit() const;
};

// Zero counts are dropped before ranking. Throws ArgumentError for empty or
// all-zero input, where no fit is defined.
AccessDistribution access_distribution(std::span<const std::uint64_t> counts);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Ordinary least squares; r2 is 0 when y has no variance.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace tgraph
