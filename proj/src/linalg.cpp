#include "dcmtf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dcmtf/errors.hpp"
#include "dcmtf/parallel.hpp"

namespace dcmtf::linalg {

namespace {
void fix_signs(Matrix& vectors) {
  for (Index c = 0; c < vectors.cols(); ++c) {
    for (Index r = 0; r < vectors.rows(); ++r) {
      const double v = vectors(r, c);
      if (std::abs(v) > 1e-12) {
        if (v < 0.0) vectors.col(c) = -vectors.col(c);
        break;
      }
    }
  }
}
}  // namespace

EigResult sym_eig(const Matrix& a, Index k, Which which) {
  if (a.rows() != a.cols()) throw ShapeMismatch("sym_eig: matrix not square");
  const Index n = a.rows();
  if (k < 1 || k > n) throw ShapeMismatch("sym_eig: k out of range");

  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("sym_eig: iterative QL solver did not converge");

  EigResult out;
  const Index start = (which == Which::Smallest) ? 0 : n - k;
  out.values = solver.eigenvalues().segment(start, k);   // already ascending
  out.vectors = solver.eigenvectors().middleCols(start, k);
  fix_signs(out.vectors);
  return out;
}

CholResult cholesky(const Matrix& g) {
  if (g.rows() != g.cols()) throw ShapeMismatch("cholesky: matrix not square");
  const Index k = g.rows();
  const Matrix sym = 0.5 * (g + g.transpose());

  Eigen::LLT<Matrix> llt(sym);
  if (llt.info() == Eigen::Success) {
    Matrix l = llt.matrixL();
    if ((l.diagonal().array() > 0.0).all()) return {l, 0.0};
  }

  const double scale = sym.trace() / static_cast<double>(k);
  double eps = 1e-10 * scale;
  const double eps_max = 1e-4 * scale;
  while (eps > 0.0 && eps <= eps_max) {
    Eigen::LLT<Matrix> jlt(sym + eps * Matrix::Identity(k, k));
    if (jlt.info() == Eigen::Success) {
      Matrix l = jlt.matrixL();
      if ((l.diagonal().array() > 0.0).all()) return {l, eps};
    }
    eps *= 10.0;
  }
  throw NotPositiveDefinite("cholesky: matrix singular even after maximum jitter");
}

OrthoResult orthogonalize(const Matrix& c_tilde) {
  const Index n = c_tilde.rows();
  const Index k = c_tilde.cols();
  if (n < k) throw ShapeMismatch("orthogonalize: need rows >= cols");

  const Matrix gram = c_tilde.transpose() * c_tilde;  // k x k
  CholResult ch = cholesky(gram);

  OrthoResult out;
  out.jitter = ch.jitter;
  const Matrix h_inv =
      ch.l.triangularView<Eigen::Lower>().solve(Matrix::Identity(k, k));
  out.h_inv_t = h_inv.transpose();
  out.c = c_tilde * out.h_inv_t;
  return out;
}

SimilarityMatrix gaussian_similarity(const Matrix& p, std::optional<double> sigma) {
  if (p.rows() < 2)
    throw DimensionMismatch("gaussian_similarity: need at least 2 rows");
  if (sigma && *sigma <= 0.0)
    throw DegenerateScale("gaussian_similarity: sigma must be positive");

  const Matrix d2 = par::pairwise_sq_dists(p);

  double resolved;
  if (sigma) {
    resolved = *sigma;
  } else {
    std::vector<double> dists;
    dists.reserve(static_cast<size_t>(p.rows() * (p.rows() - 1) / 2));
    for (Index i = 0; i < d2.rows(); ++i)
      for (Index j = i + 1; j < d2.cols(); ++j)
        if (d2(i, j) > 0.0) dists.push_back(std::sqrt(d2(i, j)));
    if (dists.empty())
      throw DegenerateScale("gaussian_similarity: all rows identical, cannot auto-scale");
    std::sort(dists.begin(), dists.end());
    const size_t m = dists.size();
    resolved = (m % 2 == 1) ? dists[m / 2]
                            : 0.5 * (dists[m / 2 - 1] + dists[m / 2]);
  }

  SimilarityMatrix out;
  out.sigma = resolved;
  out.s = par::gaussian_map(d2, resolved);
  return out;
}

LaplacianPair laplacian(const SimilarityMatrix& s, LaplacianKind kind) {
  LaplacianPair out;
  out.d = s.s.rowwise().sum();
  if (kind == LaplacianKind::Unnormalized) {
    out.l = Matrix(out.d.asDiagonal()) - s.s;
  } else {
    // L_rw = I - D^-1 S
    out.l = Matrix::Identity(s.s.rows(), s.s.cols()) -
            out.d.cwiseInverse().asDiagonal() * s.s;
  }
  return out;
}

}  // namespace dcmtf::linalg
