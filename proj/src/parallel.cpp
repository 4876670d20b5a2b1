#include "dcmtf/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <cmath>
#include <limits>

namespace dcmtf::par {

namespace {
std::atomic<int> g_threads{1};

// Both variants must produce bit-identical results, so the distance of a
// single row pair is factored out and shared.
inline double row_sq_dist(const Matrix& p, Index i, Index j) {
  double acc = 0.0;
  for (Index c = 0; c < p.cols(); ++c) {
    const double d = p(i, c) - p(j, c);
    acc += d * d;
  }
  return acc;
}

inline void nearest_one(const Matrix& points, const Matrix& centroids,
                        Index i, int& a, double& d) {
  double best = std::numeric_limits<double>::infinity();
  int best_k = 0;
  for (Index k = 0; k < centroids.rows(); ++k) {
    double acc = 0.0;
    for (Index c = 0; c < points.cols(); ++c) {
      const double diff = points(i, c) - centroids(k, c);
      acc += diff * diff;
    }
    if (acc < best) {
      best = acc;
      best_k = static_cast<int>(k);
    }
  }
  a = best_k;
  d = best;
}
}  // namespace

void set_threads(int n) { g_threads.store(n < 1 ? 1 : n); }
int threads() { return g_threads.load(); }

Matrix pairwise_sq_dists_serial(const Matrix& p) {
  const Index n = p.rows();
  Matrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    out(i, i) = 0.0;
    for (Index j = i + 1; j < n; ++j) {
      const double d = row_sq_dist(p, i, j);
      out(i, j) = d;
      out(j, i) = d;
    }
  }
  return out;
}

Matrix pairwise_sq_dists_parallel(const Matrix& p) {
  const Index n = p.rows();
  Matrix out(n, n);
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads())
  for (Index i = 0; i < n; ++i) {
    out(i, i) = 0.0;
    for (Index j = i + 1; j < n; ++j) {
      const double d = row_sq_dist(p, i, j);
      out(i, j) = d;
      out(j, i) = d;
    }
  }
  return out;
}

Matrix pairwise_sq_dists(const Matrix& p) {
  return threads() > 1 ? pairwise_sq_dists_parallel(p)
                       : pairwise_sq_dists_serial(p);
}

void assign_nearest_serial(const Matrix& points, const Matrix& centroids,
                           std::vector<int>& assign, Vector& sq_dist) {
  const Index n = points.rows();
  assign.resize(static_cast<size_t>(n));
  sq_dist.resize(n);
  for (Index i = 0; i < n; ++i) nearest_one(points, centroids, i, assign[i], sq_dist[i]);
}

void assign_nearest_parallel(const Matrix& points, const Matrix& centroids,
                             std::vector<int>& assign, Vector& sq_dist) {
  const Index n = points.rows();
  assign.resize(static_cast<size_t>(n));
  sq_dist.resize(n);
#pragma omp parallel for schedule(static) num_threads(threads())
  for (Index i = 0; i < n; ++i) nearest_one(points, centroids, i, assign[i], sq_dist[i]);
}

void assign_nearest(const Matrix& points, const Matrix& centroids,
                    std::vector<int>& assign, Vector& sq_dist) {
  if (threads() > 1)
    assign_nearest_parallel(points, centroids, assign, sq_dist);
  else
    assign_nearest_serial(points, centroids, assign, sq_dist);
}

Matrix gaussian_map_serial(const Matrix& sq_dists, double sigma) {
  const double inv = 1.0 / (2.0 * sigma * sigma);
  Matrix out(sq_dists.rows(), sq_dists.cols());
  for (Index j = 0; j < sq_dists.cols(); ++j)
    for (Index i = 0; i < sq_dists.rows(); ++i)
      out(i, j) = std::exp(-sq_dists(i, j) * inv);
  return out;
}

Matrix gaussian_map_parallel(const Matrix& sq_dists, double sigma) {
  const double inv = 1.0 / (2.0 * sigma * sigma);
  Matrix out(sq_dists.rows(), sq_dists.cols());
#pragma omp parallel for schedule(static) num_threads(threads())
  for (Index j = 0; j < sq_dists.cols(); ++j)
    for (Index i = 0; i < sq_dists.rows(); ++i)
      out(i, j) = std::exp(-sq_dists(i, j) * inv);
  return out;
}

Matrix gaussian_map(const Matrix& sq_dists, double sigma) {
  return threads() > 1 ? gaussian_map_parallel(sq_dists, sigma)
                       : gaussian_map_serial(sq_dists, sigma);
}

}  // namespace dcmtf::par
