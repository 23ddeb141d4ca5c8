#include "tgraph/feature_store.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "tgraph/binary_io.hpp"

namespace tgraph {

namespace {

void check_rows(const Matrix& rows, std::size_t n, std::size_t dim) {
  if (rows.rows() != n) throw ArgumentError("row count does not match id count");
  if (n > 0 && rows.cols() != dim) throw ArgumentError("feature dimension mismatch");
}

}  // namespace

NodeFeatureTable::NodeFeatureTable(std::size_t dim) : dim_(dim) {}

void NodeFeatureTable::put(std::span<const NodeId> ids, const Matrix& rows) {
  check_rows(rows, ids.size(), dim_);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto [it, inserted] = row_of_.try_emplace(ids[i], ids_.size());
    if (inserted) {
      ids_.push_back(ids[i]);
      values_.resize(values_.size() + dim_);
    }
    auto src = rows.row(i);
    std::copy(src.begin(), src.end(), values_.begin() + static_cast<std::ptrdiff_t>(it->second * dim_));
  }
}

Lookup NodeFeatureTable::get(std::span<const NodeId> ids) const {
  Lookup out{Matrix(ids.size(), dim_), std::vector<std::uint8_t>(ids.size(), 0)};
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto it = row_of_.find(ids[i]);
    if (it == row_of_.end()) continue;
    out.found[i] = 1;
    auto src = values_.begin() + static_cast<std::ptrdiff_t>(it->second * dim_);
    std::copy(src, src + static_cast<std::ptrdiff_t>(dim_), out.values.row(i).begin());
  }
  return out;
}

EdgeFeatureTable::EdgeFeatureTable(std::size_t dim) : dim_(dim) {}

void EdgeFeatureTable::append(std::span<const EdgeId> ids, const Matrix& rows) {
  check_rows(rows, ids.size(), dim_);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const bool increasing = i == 0 ? (ids_.empty() || ids[0] > ids_.back()) : ids[i] > ids[i - 1];
    if (!increasing) throw ArgumentError("edge feature ids must be strictly increasing");
  }
  ids_.insert(ids_.end(), ids.begin(), ids.end());
  values_.insert(values_.end(), rows.data().begin(), rows.data().end());
}

Lookup EdgeFeatureTable::get(std::span<const EdgeId> ids) const {
  Lookup out{Matrix(ids.size(), dim_), std::vector<std::uint8_t>(ids.size(), 0)};
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), ids[i]);
    if (it == ids_.end() || *it != ids[i]) continue;
    out.found[i] = 1;
    const auto pos = static_cast<std::size_t>(it - ids_.begin());
    auto src = values_.begin() + static_cast<std::ptrdiff_t>(pos * dim_);
    std::copy(src, src + static_cast<std::ptrdiff_t>(dim_), out.values.row(i).begin());
  }
  return out;
}

NodeMemoryTable::NodeMemoryTable(std::size_t dim) : vectors_(dim) {}

void NodeMemoryTable::update(std::span<const NodeId> ids, const Matrix& rows,
                             std::span<const Timestamp> timestamps) {
  if (timestamps.size() != ids.size()) throw ArgumentError("timestamps must match ids");
  vectors_.put(ids, rows);
  for (std::size_t i = 0; i < ids.size(); ++i) last_update_[ids[i]] = timestamps[i];
}

Timestamp NodeMemoryTable::last_update(NodeId id) const {
  auto it = last_update_.find(id);
  if (it == last_update_.end()) throw NotFoundError("no memory for node " + std::to_string(id));
  return it->second;
}

namespace {

void write_features(std::ostream& out, FeatureKind kind, std::size_t dim,
                    std::span<const std::uint64_t> ids, std::span<const float> values) {
  io::ByteWriter w;
  w.magic(kFeatureMagic);
  w.put(kFeatureVersion);
  w.put(static_cast<std::uint8_t>(kind));
  w.put(static_cast<std::uint32_t>(dim));
  w.put(static_cast<std::uint64_t>(ids.size()));
  for (auto id : ids) w.put<std::uint64_t>(id);
  for (float v : values) w.put_f32(v);
  out.write(w.bytes().data(), static_cast<std::streamsize>(w.size()));
  if (!out) throw IoError("feature file write failed");
}

struct RawFeatures {
  std::size_t dim = 0;
  std::vector<std::uint64_t> ids;
  Matrix rows;
};

RawFeatures read_features(std::istream& in, FeatureKind expected) {
  const std::string data = io::read_all(in);
  io::ByteReader r(data);
  r.expect_magic(kFeatureMagic);
  if (const auto v = r.get<std::uint32_t>(); v != kFeatureVersion) {
    throw FormatError("unsupported feature file version " + std::to_string(v));
  }
  const auto kind = r.get<std::uint8_t>();
  if (kind != static_cast<std::uint8_t>(expected)) throw FormatError("feature kind mismatch");
  RawFeatures raw;
  raw.dim = r.get<std::uint32_t>();
  const auto count = r.get<std::uint64_t>();
  // guard the allocation against corrupt counts
  const std::uint64_t row_bytes = 8 + static_cast<std::uint64_t>(raw.dim) * 4;
  if (count > r.remaining() / row_bytes) throw FormatError("truncated feature file");
  raw.ids.resize(count);
  for (auto& id : raw.ids) id = r.get<std::uint64_t>();
  raw.rows = Matrix(count, raw.dim);
  for (float& v : raw.rows.data()) v = r.get_f32();
  if (!r.done()) throw FormatError("trailing bytes in feature file");
  return raw;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

RawFeatures read_features_csv(std::istream& in) {
  RawFeatures raw;
  std::vector<float> values;
  std::string line;
  std::size_t row = 0;
  bool have_dim = false;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (row == 1 && !std::isdigit(static_cast<unsigned char>(line[0]))) continue;
    const auto fields = split_commas(line);
    if (!have_dim) {
      raw.dim = fields.size() - 1;
      have_dim = true;
    }
    if (fields.size() != raw.dim + 1) {
      throw FormatError("row " + std::to_string(row) + ": expected " +
                        std::to_string(raw.dim + 1) + " fields");
    }
    std::uint64_t id = 0;
    const auto id_end = fields[0].data() + fields[0].size();
    auto [p, ec] = std::from_chars(fields[0].data(), id_end, id);
    if (ec != std::errc{} || p != id_end) {
      throw FormatError("row " + std::to_string(row) + ": bad id");
    }
    raw.ids.push_back(id);
    for (std::size_t k = 1; k < fields.size(); ++k) {
      float v = 0.0F;
      const auto end = fields[k].data() + fields[k].size();
      auto [vp, vec] = std::from_chars(fields[k].data(), end, v);
      if (vec != std::errc{} || vp != end) {
        throw FormatError("row " + std::to_string(row) + ": bad value");
      }
      values.push_back(v);
    }
  }
  raw.rows = Matrix(raw.ids.size(), raw.dim);
  std::copy(values.begin(), values.end(), raw.rows.data().begin());
  return raw;
}

}  // namespace

void write_feature_file(std::ostream& out, const NodeFeatureTable& table) {
  write_features(out, FeatureKind::kNode, table.dim(), table.ids(), table.values());
}

void write_feature_file(std::ostream& out, const EdgeFeatureTable& table) {
  write_features(out, FeatureKind::kEdge, table.dim(), table.ids(), table.values());
}

NodeFeatureTable read_node_feature_file(std::istream& in) {
  RawFeatures raw = read_features(in, FeatureKind::kNode);
  NodeFeatureTable table(raw.dim);
  table.put(raw.ids, raw.rows);
  return table;
}

EdgeFeatureTable read_edge_feature_file(std::istream& in) {
  RawFeatures raw = read_features(in, FeatureKind::kEdge);
  EdgeFeatureTable table(raw.dim);
  table.append(raw.ids, raw.rows);
  return table;
}

NodeFeatureTable read_node_feature_csv(std::istream& in) {
  RawFeatures raw = read_features_csv(in);
  NodeFeatureTable table(raw.dim);
  table.put(raw.ids, raw.rows);
  return table;
}

EdgeFeatureTable read_edge_feature_csv(std::istream& in) {
  RawFeatures raw = read_features_csv(in);
  EdgeFeatureTable table(raw.dim);
  table.append(raw.ids, raw.rows);
  return table;
}

}  // namespace tgraph
