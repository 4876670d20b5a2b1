#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dcmtf/clustering.hpp"
#include "dcmtf/core_model.hpp"
#include "dcmtf/types.hpp"

namespace dcmtf::cfrm {

struct AssociationMatrix {
  int matrix_id = 0;
  Matrix a;  // k_row x k_col
};

struct ChainLink {
  int matrix_id = 0;
  int row_cluster = 0;
  int col_cluster = 0;
  double strength = 0.0;
};

struct ClusterChain {
  std::vector<ChainLink> links;
  bool dead_end = false;  // true when no positive continuation existed
};

enum class Init { Random, KMeans };
enum class UpdateOrder { Jacobi, GaussSeidel };

struct CfrmOptions {
  Init init = Init::Random;
  int sweeps = 30;
  std::uint64_t seed = 0;
  // Jacobi rebuilds every M^[e] from the previous sweep's indicator
  // snapshot; Gauss-Seidel consumes indicators already refreshed within
  // the current sweep.
  UpdateOrder order = UpdateOrder::Jacobi;
  int kmeans_restarts = 10;
};

struct CfrmResult {
  std::map<int, Matrix> embeddings;  // entity id -> C^[e], d_e x k_e
  std::map<int, cluster::ClusterIndicator> indicators;
  std::vector<AssociationMatrix> associations;  // ascending matrix id
  std::vector<double> trace_history;            // per sweep objective
  // Largest |Tr(C^T M C) - sum of leading eigenvalues| seen over every
  // (sweep, entity) step; zero up to roundoff by Rayleigh-Ritz.
  double max_rayleigh_gap = 0.0;
  int sweeps_run = 0;
  bool converged = false;
};

/// M^[e]: sum over matrices containing e of the indicator-weighted inner
/// products (X J)(X J)^T, using the column-entity indicator when e is the
/// row entity and vice versa. Symmetric PSD by construction.
Matrix build_m(const core::EntityMatrixGraph& g,
               const std::map<int, cluster::VigorousIndicator>& js, int e);

/// Spectral Relational Clustering: sweeps over entities in ascending id
/// order, replacing each entity's embedding with the leading k_e
/// eigenvectors of M^[e] and re-discretizing with k-means. Stops when all
/// assignments are unchanged for a full sweep, or at the sweep cap.
CfrmResult src_fit(const core::EntityMatrixGraph& g, const CfrmOptions& opts);

/// A = J_r^T X J_c.
AssociationMatrix association(const core::DataMatrix& x,
                              const cluster::VigorousIndicator& j_r,
                              const cluster::VigorousIndicator& j_c);

struct ChainStart {
  int matrix_id = 0;
  int row_cluster = 0;
  int col_cluster = 0;
};

/// Greedy chain extraction: from the current block, step into an unvisited
/// matrix sharing one of its entities, picking the partner cluster with the
/// largest |A| (ties: smallest matrix id, then smallest cluster id).
ClusterChain extract_chains(const core::EntityMatrixGraph& g,
                            const std::vector<AssociationMatrix>& assocs,
                            const ChainStart& start, int max_len);

}  // namespace dcmtf::cfrm
