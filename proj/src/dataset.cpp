#include "tgraph/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "tgraph/random.hpp"

namespace tgraph {

NodeId EdgeStream::max_node() const {
  NodeId hi = 0;
  for (const auto& e : edges) hi = std::max({hi, e.src, e.dst});
  return hi;
}

namespace {

template <typename T>
T parse_field(std::string_view field, std::size_t row, const char* name) {
  while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
  while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
  T value{};
  auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || p != field.data() + field.size()) {
    throw FormatError("row " + std::to_string(row) + ": bad " + name + " '" + std::string(field) +
                      "'");
  }
  return value;
}

}  // namespace

EdgeStream read_edge_csv(std::istream& in) {
  EdgeStream out;
  std::string line;
  std::size_t row = 0;
  int columns = -1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (row == 1 && !std::isdigit(static_cast<unsigned char>(line[0]))) continue;

    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 3 && fields.size() != 4) {
      throw FormatError("row " + std::to_string(row) + ": expected 3 or 4 fields, got " +
                        std::to_string(fields.size()));
    }
    if (columns == -1) columns = static_cast<int>(fields.size());
    if (static_cast<int>(fields.size()) != columns) {
      throw FormatError("row " + std::to_string(row) + ": inconsistent column count");
    }
    TemporalEdge e{parse_field<NodeId>(fields[0], row, "src"),
                   parse_field<NodeId>(fields[1], row, "dst"),
                   parse_field<Timestamp>(fields[2], row, "timestamp")};
    if (!out.edges.empty() && e.timestamp < out.edges.back().timestamp) {
      throw FormatError("row " + std::to_string(row) + ": timestamp " + std::to_string(e.timestamp) +
                        " is earlier than the previous row");
    }
    out.edges.push_back(e);
    if (columns == 4) out.labels.push_back(parse_field<std::int64_t>(fields[3], row, "label"));
  }
  return out;
}

void write_edge_csv(std::ostream& out, std::span<const TemporalEdge> edges) {
  out << "src,dst,timestamp\n";
  for (const auto& e : edges) out << e.src << ',' << e.dst << ',' << e.timestamp << '\n';
  if (!out) throw IoError("edge csv write failed");
}

void SyntheticSpec::validate() const {
  if (nodes == 0) throw ConfigError("synthetic graph needs at least one node");
  if (edges == 0) throw ConfigError("synthetic graph needs at least one edge");
  if (!(skew > 1.0)) throw ConfigError("skew must be > 1");
  if (time_span <= 0) throw ConfigError("time span must be positive");
  if (locality < 0.0 || locality > 1.0) throw ConfigError("locality must be in [0, 1]");
  if (locality > 0.0 && locality_window == 0) throw ConfigError("locality window must be >= 1");
}

std::vector<TemporalEdge> generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  if (spec.nodes == 1) return {};

  SplitMix64 rng(hash_combine(spec.seed, 0x5EED));
  // Weight of rank i ~ (i+1)^(-1/(skew-1)) gives a degree density with
  // exponent `skew`.
  const double beta = 1.0 / (spec.skew - 1.0);
  std::vector<double> cdf(spec.nodes);
  double acc = 0.0;
  for (std::uint64_t i = 0; i < spec.nodes; ++i) {
    acc += std::pow(static_cast<double>(i + 1), -beta);
    cdf[i] = acc;
  }
  std::vector<NodeId> id_of(spec.nodes);
  for (std::uint64_t i = 0; i < spec.nodes; ++i) id_of[i] = i;
  for (std::uint64_t i = spec.nodes - 1; i > 0; --i) std::swap(id_of[i], id_of[rng.below(i + 1)]);

  auto draw = [&] {
    const double u = rng.unit() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    return id_of[static_cast<std::size_t>(it - cdf.begin())];
  };

  std::vector<Timestamp> times(spec.edges);
  for (auto& t : times) t = static_cast<Timestamp>(rng.below(static_cast<std::uint64_t>(spec.time_span)));
  std::sort(times.begin(), times.end());

  std::vector<NodeId> recent;
  std::size_t recent_pos = 0;
  std::vector<TemporalEdge> out;
  out.reserve(spec.edges);
  for (std::uint64_t k = 0; k < spec.edges; ++k) {
    NodeId src = 0;
    if (spec.locality > 0.0 && !recent.empty() && rng.unit() < spec.locality) {
      src = recent[rng.below(recent.size())];
    } else {
      src = draw();
    }
    NodeId dst = draw();
    while (dst == src) dst = draw();
    out.push_back({src, dst, times[k]});
    if (spec.locality > 0.0) {
      for (NodeId n : {src, dst}) {
        if (recent.size() < spec.locality_window) {
          recent.push_back(n);
        } else {
          recent[recent_pos] = n;
          recent_pos = (recent_pos + 1) % recent.size();
        }
      }
    }
  }
  return out;
}

double fit_tail_exponent(std::span<const std::uint64_t> degrees, std::uint64_t k_min) {
  if (k_min == 0) throw ArgumentError("k_min must be >= 1");
  double sum = 0.0;
  std::uint64_t n = 0;
  for (auto d : degrees) {
    if (d < k_min) continue;
    sum += std::log(static_cast<double>(d) / (static_cast<double>(k_min) - 0.5));
    ++n;
  }
  if (n == 0 || sum == 0.0) throw ArgumentError("no degrees at or above k_min");
  return 1.0 + static_cast<double>(n) / sum;
}

}  // namespace tgraph
