#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dcmtf/types.hpp"

namespace dcmtf::core {

enum class DataType { Real, Binary };

struct Entity {
  int id = 0;          // unique entity index
  Index count = 0;     // number of instances d_e
  std::string name;
  int k = 1;           // requested cluster count k_e
};

struct DataMatrix {
  int id = 0;          // unique matrix index
  int row_entity = 0;
  int col_entity = 0;
  Matrix values;       // d_row x d_col, dense
  DataType datatype = DataType::Real;
};

// The matrix oriented so that instances of `entity` are rows.
struct MatrixView {
  int entity = 0;
  int matrix = 0;
  Matrix data;
};

/// Bipartite entity-matrix relationship graph. Immutable after build();
/// safe for concurrent read-only use.
class EntityMatrixGraph {
 public:
  /// Validates and assembles the graph. Throws DimensionMismatch when a
  /// matrix disagrees with an entity's instance count, DanglingEntity when
  /// an entity appears in no matrix, BadBinary when a Binary matrix holds
  /// values outside {0,1}.
  static EntityMatrixGraph build(std::vector<Entity> entities,
                                 std::vector<DataMatrix> matrices);

  const std::vector<Entity>& entities() const { return entities_; }
  const std::vector<DataMatrix>& matrices() const { return matrices_; }

  const Entity& entity(int id) const;
  const DataMatrix& matrix(int id) const;
  bool has_edge(int entity_id, int matrix_id) const;

  // Edge set Q, sorted by (entity id, matrix id). A self-relation matrix
  // contributes a single edge.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  /// Ascending matrix ids containing the entity; the canonical
  /// concatenation order used everywhere downstream.
  std::vector<int> neighbors(int entity_id) const;

  int degree(int entity_id) const;

  /// The matrix oriented with `entity_id` instances as rows: the stored
  /// values when the entity is the row entity, the transpose otherwise
  /// (row orientation wins for self-relations). Throws NoSuchEdge.
  MatrixView view(int entity_id, int matrix_id) const;

 private:
  EntityMatrixGraph() = default;
  int entity_index(int id) const;
  int matrix_index(int id) const;

  std::vector<Entity> entities_;
  std::vector<DataMatrix> matrices_;
  std::vector<std::pair<int, int>> edges_;
};

}  // namespace dcmtf::core
