#include "dcmtf/spectral.hpp"

#include <vector>

#include "dcmtf/errors.hpp"

namespace dcmtf::spectral {

double ratio_cut(const linalg::SimilarityMatrix& s,
                 const cluster::ClusterIndicator& ind) {
  const Index n = s.s.rows();
  if (ind.n() != n)
    throw LengthMismatch("ratio_cut: partition does not cover the graph");

  std::vector<Index> sizes(static_cast<size_t>(ind.k), 0);
  for (int a : ind.assignments) ++sizes[static_cast<size_t>(a)];
  for (int u = 0; u < ind.k; ++u)
    if (sizes[static_cast<size_t>(u)] == 0)
      throw EmptyCluster("ratio_cut: cluster " + std::to_string(u) + " empty");

  double cut = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (ind.assignments[static_cast<size_t>(i)] !=
          ind.assignments[static_cast<size_t>(j)])
        cut += s.s(i, j) / static_cast<double>(
                               sizes[static_cast<size_t>(
                                   ind.assignments[static_cast<size_t>(i)])]);
  return 0.5 * cut;
}

Matrix spectral_embed(const linalg::LaplacianPair& lap, int k) {
  return linalg::sym_eig(lap.l, k, linalg::Which::Smallest).vectors;
}

cluster::ClusterIndicator spectral_cluster(const linalg::SimilarityMatrix& s,
                                           int k, std::uint64_t seed,
                                           linalg::LaplacianKind kind) {
  const linalg::LaplacianPair lap = linalg::laplacian(s, kind);
  const Matrix c = spectral_embed(lap, k);
  return cluster::kmeans(c, k, seed).indicator;
}

}  // namespace dcmtf::spectral
