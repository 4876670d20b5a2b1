#include "dcmtf/core_model.hpp"

#include <algorithm>
#include <set>

#include "dcmtf/errors.hpp"

namespace dcmtf::core {

EntityMatrixGraph EntityMatrixGraph::build(std::vector<Entity> entities,
                                           std::vector<DataMatrix> matrices) {
  EntityMatrixGraph g;
  g.entities_ = std::move(entities);
  g.matrices_ = std::move(matrices);

  std::sort(g.entities_.begin(), g.entities_.end(),
            [](const Entity& a, const Entity& b) { return a.id < b.id; });
  std::sort(g.matrices_.begin(), g.matrices_.end(),
            [](const DataMatrix& a, const DataMatrix& b) { return a.id < b.id; });

  for (size_t i = 1; i < g.entities_.size(); ++i)
    if (g.entities_[i].id == g.entities_[i - 1].id)
      throw DimensionMismatch("duplicate entity id " + std::to_string(g.entities_[i].id));
  for (size_t i = 1; i < g.matrices_.size(); ++i)
    if (g.matrices_[i].id == g.matrices_[i - 1].id)
      throw DimensionMismatch("duplicate matrix id " + std::to_string(g.matrices_[i].id));

  for (const Entity& e : g.entities_) {
    if (e.count < 1) throw DimensionMismatch("entity " + std::to_string(e.id) + " has no instances");
    if (e.k < 1 || e.k > e.count)
      throw DimensionMismatch("entity " + std::to_string(e.id) +
                              " violates d_e >= k_e >= 1");
  }

  std::set<int> touched;
  for (const DataMatrix& m : g.matrices_) {
    const Entity& r = g.entity(m.row_entity);
    const Entity& c = g.entity(m.col_entity);
    if (m.values.rows() != r.count)
      throw DimensionMismatch("matrix " + std::to_string(m.id) + " has " +
                              std::to_string(m.values.rows()) + " rows but entity " +
                              std::to_string(r.id) + " declares " + std::to_string(r.count));
    if (m.values.cols() != c.count)
      throw DimensionMismatch("matrix " + std::to_string(m.id) + " has " +
                              std::to_string(m.values.cols()) + " cols but entity " +
                              std::to_string(c.id) + " declares " + std::to_string(c.count));
    if (m.datatype == DataType::Binary) {
      for (Index j = 0; j < m.values.cols(); ++j)
        for (Index i = 0; i < m.values.rows(); ++i) {
          const double v = m.values(i, j);
          if (v != 0.0 && v != 1.0)
            throw BadBinary("matrix " + std::to_string(m.id) + " entry (" +
                            std::to_string(i) + "," + std::to_string(j) +
                            ") = " + std::to_string(v) + " is not in {0,1}");
        }
    }
    touched.insert(m.row_entity);
    touched.insert(m.col_entity);
    g.edges_.emplace_back(m.row_entity, m.id);
    if (m.col_entity != m.row_entity) g.edges_.emplace_back(m.col_entity, m.id);
  }

  for (const Entity& e : g.entities_)
    if (!touched.count(e.id))
      throw DanglingEntity("entity " + std::to_string(e.id) + " appears in no matrix");

  std::sort(g.edges_.begin(), g.edges_.end());
  return g;
}

int EntityMatrixGraph::entity_index(int id) const {
  auto it = std::lower_bound(entities_.begin(), entities_.end(), id,
                             [](const Entity& e, int v) { return e.id < v; });
  if (it == entities_.end() || it->id != id)
    throw DimensionMismatch("unknown entity id " + std::to_string(id));
  return static_cast<int>(it - entities_.begin());
}

int EntityMatrixGraph::matrix_index(int id) const {
  auto it = std::lower_bound(matrices_.begin(), matrices_.end(), id,
                             [](const DataMatrix& m, int v) { return m.id < v; });
  if (it == matrices_.end() || it->id != id)
    throw DimensionMismatch("unknown matrix id " + std::to_string(id));
  return static_cast<int>(it - matrices_.begin());
}

const Entity& EntityMatrixGraph::entity(int id) const {
  return entities_[static_cast<size_t>(entity_index(id))];
}

const DataMatrix& EntityMatrixGraph::matrix(int id) const {
  return matrices_[static_cast<size_t>(matrix_index(id))];
}

bool EntityMatrixGraph::has_edge(int entity_id, int matrix_id) const {
  return std::binary_search(edges_.begin(), edges_.end(),
                            std::make_pair(entity_id, matrix_id));
}

std::vector<int> EntityMatrixGraph::neighbors(int entity_id) const {
  entity_index(entity_id);  // existence check
  std::vector<int> out;
  for (const auto& [e, m] : edges_)
    if (e == entity_id) out.push_back(m);
  return out;  // edges_ is sorted, so matrix ids come out ascending
}

int EntityMatrixGraph::degree(int entity_id) const {
  return static_cast<int>(neighbors(entity_id).size());
}

MatrixView EntityMatrixGraph::view(int entity_id, int matrix_id) const {
  if (!has_edge(entity_id, matrix_id))
    throw NoSuchEdge("no edge between entity " + std::to_string(entity_id) +
                     " and matrix " + std::to_string(matrix_id));
  const DataMatrix& m = matrix(matrix_id);
  MatrixView v;
  v.entity = entity_id;
  v.matrix = matrix_id;
  v.data = (entity_id == m.row_entity) ? m.values : Matrix(m.values.transpose());
  return v;
}

}  // namespace dcmtf::core
