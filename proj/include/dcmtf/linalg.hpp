#pragma once

#include <optional>

#include "dcmtf/types.hpp"

namespace dcmtf::linalg {

enum class Which { Smallest, Largest };

struct EigResult {
  Vector values;   // k eigenvalues, ascending
  Matrix vectors;  // n x k, orthonormal columns matching `values`
};

/// Dense symmetric eigendecomposition. The input is symmetrized as
/// (a + a^T)/2 before solving. Sign convention: the first component of
/// each eigenvector larger than 1e-12 in magnitude is made positive.
EigResult sym_eig(const Matrix& a, Index k, Which which);

struct CholResult {
  Matrix l;             // lower triangular, positive diagonal
  double jitter = 0.0;  // ridge added to the diagonal (0 when none was needed)
};

/// Cholesky factorization with escalating diagonal jitter for
/// rank-deficient inputs: eps starts at 1e-10 * trace/k and grows by 10x
/// up to 1e-4 * trace/k before NotPositiveDefinite is thrown.
CholResult cholesky(const Matrix& g);

struct OrthoResult {
  Matrix c;        // n x k with c^T c = I
  Matrix h_inv_t;  // the k x k linear map applied: c = c_tilde * h_inv_t
  double jitter = 0.0;
};

/// Orthogonalizes via the Cholesky factor H of the k x k Gram
/// c_tilde^T c_tilde = H H^T, returning c = c_tilde (H^-1)^T.
OrthoResult orthogonalize(const Matrix& c_tilde);

struct SimilarityMatrix {
  Matrix s;            // symmetric, unit diagonal
  double sigma = 1.0;  // resolved kernel scale
};

/// Gaussian kernel similarity over rows of p:
/// S_ij = exp(-||p_i - p_j||^2 / (2 sigma^2)).
/// With sigma unset, resolves it to the median of the strictly positive
/// pairwise distances (DegenerateScale when all rows coincide).
SimilarityMatrix gaussian_similarity(const Matrix& p,
                                     std::optional<double> sigma = std::nullopt);

enum class LaplacianKind { Unnormalized, RandomWalk };

struct LaplacianPair {
  Matrix l;  // D - S (or I - D^-1 S for the random-walk variant)
  Vector d;  // node degrees, d_i = sum_j S_ij
};

LaplacianPair laplacian(const SimilarityMatrix& s,
                        LaplacianKind kind = LaplacianKind::Unnormalized);

}  // namespace dcmtf::linalg
