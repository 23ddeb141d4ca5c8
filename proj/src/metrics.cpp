#include "tgraph/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "tgraph/types.hpp"

namespace tgraph {

double jaccard(const std::unordered_set<std::uint64_t>& a, const std::unordered_set<std::uint64_t>& b) {
  if (a.empty() && b.empty()) return 0.0;
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  std::size_t common = 0;
  for (auto v : small) common += large.contains(v) ? 1 : 0;
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

double jaccard(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  return jaccard(std::unordered_set<std::uint64_t>(a.begin(), a.end()),
                 std::unordered_set<std::uint64_t>(b.begin(), b.end()));
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ArgumentError("x and y differ in length");
  LineFit f;
  const double n = static_cast<double>(x.size());
  if (x.empty()) return f;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (syy == 0.0) return f;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += r * r;
  }
  f.r2 = 1.0 - ss_res / syy;
  return f;
}

AccessDistribution access_distribution(std::span<const std::uint64_t> counts) {
  if (counts.empty()) throw ArgumentError("access counts are empty");
  AccessDistribution d;
  for (auto c : counts) {
    if (c > 0) d.histogram.push_back(c);
  }
  if (d.histogram.empty()) throw ArgumentError("all access counts are zero; fit is undefined");
  std::sort(d.histogram.begin(), d.histogram.end(), std::greater<>());
  if (d.histogram.front() == d.histogram.back()) {
    d.degenerate = true;
    return d;
  }
  std::vector<double> rank;
  std::vector<double> log_rank;
  std::vector<double> log_count;
  for (std::size_t i = 0; i < d.histogram.size(); ++i) {
    rank.push_back(static_cast<double>(i + 1));
    log_rank.push_back(std::log(static_cast<double>(i + 1)));
    log_count.push_back(std::log(static_cast<double>(d.histogram[i])));
  }
  const LineFit pl = fit_line(log_rank, log_count);
  const LineFit ex = fit_line(rank, log_count);
  d.powerlaw_r2 = pl.r2;
  d.powerlaw_slope = pl.slope;
  d.exponential_r2 = ex.r2;
  d.exponential_slope = ex.slope;
  return d;
}

std::string AccessDistribution::better_fit() const {
  if (degenerate) return "degenerate";
  return powerlaw_r2 >= exponential_r2 ? "powerlaw" : "exponential";
}

}  // namespace tgraph
