#pragma once

#include <cstdint>

#include "dcmtf/clustering.hpp"
#include "dcmtf/linalg.hpp"
#include "dcmtf/types.hpp"

namespace dcmtf::spectral {

/// RatioCut objective: 1/2 sum_u W(B_u, complement) / |B_u|.
double ratio_cut(const linalg::SimilarityMatrix& s,
                 const cluster::ClusterIndicator& ind);

/// Eigenvectors of L for the k smallest eigenvalues (orthonormal columns).
Matrix spectral_embed(const linalg::LaplacianPair& lap, int k);

/// The printed four-step pipeline: Laplacian, k smallest eigenvectors,
/// k-means on the embedding rows. The random-walk Laplacian is opt-in.
cluster::ClusterIndicator spectral_cluster(
    const linalg::SimilarityMatrix& s, int k, std::uint64_t seed,
    linalg::LaplacianKind kind = linalg::LaplacianKind::Unnormalized);

}  // namespace dcmtf::spectral
