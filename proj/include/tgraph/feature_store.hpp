#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "tgraph/types.hpp"

namespace tgraph {

// Dense row-major float matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0F) {}

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::span<float> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  [[nodiscard]] std::span<const float> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  [[nodiscard]] std::span<const float> data() const { return data_; }
  [[nodiscard]] std::span<float> data() { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<float> data_;
};

// Result of a batched lookup: row i belongs to ids[i]; missing rows are zero.
struct Lookup {
  Matrix values;
  std::vector<std::uint8_t> found;
};

class NodeFeatureTable {
 public:
  explicit NodeFeatureTable(std::size_t dim);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::size_t size() const { return ids_.size(); }

  // Upserts rows (rows.rows() == ids.size()).
  void put(std::span<const NodeId> ids, const Matrix& rows);
  [[nodiscard]] Lookup get(std::span<const NodeId> ids) const;
  [[nodiscard]] bool contains(NodeId id) const { return row_of_.contains(id); }

  // Insertion order of distinct ids, matching row order in values().
  [[nodiscard]] const std::vector<NodeId>& ids() const { return ids_; }
  [[nodiscard]] std::span<const float> values() const { return values_; }

 private:
  std::size_t dim_;
  std::unordered_map<NodeId, std::size_t> row_of_;
  std::vector<NodeId> ids_;
  std::vector<float> values_;
};

// Edge features stored in ascending id order; lookups are binary searches.
class EdgeFeatureTable {
 public:
  explicit EdgeFeatureTable(std::size_t dim);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::size_t size() const { return ids_.size(); }
  [[nodiscard]] const std::vector<EdgeId>& ids() const { return ids_; }
  [[nodiscard]] std::span<const float> values() const { return values_; }

  // ids must be strictly increasing and larger than every stored id.
  void append(std::span<const EdgeId> ids, const Matrix& rows);
  [[nodiscard]] Lookup get(std::span<const EdgeId> ids) const;

 private:
  std::size_t dim_;
  std::vector<EdgeId> ids_;
  std::vector<float> values_;
};

class NodeMemoryTable {
 public:
  explicit NodeMemoryTable(std::size_t dim);

  [[nodiscard]] std::size_t dim() const { return vectors_.dim(); }
  [[nodiscard]] std::size_t size() const { return vectors_.size(); }

  void update(std::span<const NodeId> ids, const Matrix& rows,
              std::span<const Timestamp> timestamps);
  [[nodiscard]] Lookup get(std::span<const NodeId> ids) const { return vectors_.get(ids); }
  // Throws NotFoundError for ids that were never written.
  [[nodiscard]] Timestamp last_update(NodeId id) const;

 private:
  NodeFeatureTable vectors_;
  std::unordered_map<NodeId, Timestamp> last_update_;
};

enum class FeatureKind : std::uint8_t { kNode = 0, kEdge = 1 };

inline constexpr char kFeatureMagic[] = "TGFF";
inline constexpr std::uint32_t kFeatureVersion = 1;

// Binary layout: magic, version u32, kind u8, dim u32, count u64, ids u64[count],
// row-major f32[count * dim]; little-endian.
void write_feature_file(std::ostream& out, const NodeFeatureTable& table);
void write_feature_file(std::ostream& out, const EdgeFeatureTable& table);
NodeFeatureTable read_node_feature_file(std::istream& in);
EdgeFeatureTable read_edge_feature_file(std::istream& in);

// CSV rows of the form `id,v0,v1,...`; an optional header line starting with
// a non-digit is skipped. Dimension is taken from the first row.
NodeFeatureTable read_node_feature_csv(std::istream& in);
EdgeFeatureTable read_edge_feature_csv(std::istream& in);

}  // namespace tgraph
