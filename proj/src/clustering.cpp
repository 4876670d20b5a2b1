#include "dcmtf/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dcmtf/errors.hpp"
#include "dcmtf/parallel.hpp"
#include "dcmtf/rng.hpp"

namespace dcmtf::cluster {

Matrix ClusterIndicator::binary() const {
  Matrix b = Matrix::Zero(n(), k);
  for (Index i = 0; i < n(); ++i) b(i, assignments[static_cast<size_t>(i)]) = 1.0;
  return b;
}

ClusterIndicator ClusterIndicator::from_assignments(std::vector<int> assignments,
                                                    int k) {
  ClusterIndicator ind;
  ind.k = k;
  std::vector<int> counts(static_cast<size_t>(k), 0);
  for (int a : assignments) {
    if (a < 0 || a >= k)
      throw LengthMismatch("cluster id " + std::to_string(a) + " outside 0.." +
                           std::to_string(k - 1));
    ++counts[static_cast<size_t>(a)];
  }
  ind.assignments = std::move(assignments);
  ind.degenerate = std::any_of(counts.begin(), counts.end(),
                               [](int c) { return c == 0; });
  return ind;
}

VigorousIndicator to_vigorous(const ClusterIndicator& ind) {
  std::vector<Index> counts(static_cast<size_t>(ind.k), 0);
  for (int a : ind.assignments) ++counts[static_cast<size_t>(a)];
  for (int u = 0; u < ind.k; ++u)
    if (counts[static_cast<size_t>(u)] == 0)
      throw EmptyCluster("cluster " + std::to_string(u) + " has no members");

  VigorousIndicator v;
  v.j = Matrix::Zero(ind.n(), ind.k);
  for (Index i = 0; i < ind.n(); ++i) {
    const int u = ind.assignments[static_cast<size_t>(i)];
    v.j(i, u) = 1.0 / std::sqrt(static_cast<double>(counts[static_cast<size_t>(u)]));
  }
  return v;
}

namespace {

Matrix kmeanspp_seed(const Matrix& points, int k, Rng& rng) {
  const Index n = points.rows();
  Matrix centroids(k, points.cols());
  centroids.row(0) = points.row(static_cast<Index>(rng.uniform_int(static_cast<std::uint64_t>(n))));

  Vector d2 = Vector::Constant(n, std::numeric_limits<double>::infinity());
  for (int c = 1; c < k; ++c) {
    for (Index i = 0; i < n; ++i) {
      const double d = (points.row(i) - centroids.row(c - 1)).squaredNorm();
      if (d < d2(i)) d2(i) = d;
    }
    const double total = d2.sum();
    Index pick;
    if (total <= 0.0) {
      pick = static_cast<Index>(rng.uniform_int(static_cast<std::uint64_t>(n)));
    } else {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      pick = n - 1;
      for (Index i = 0; i < n; ++i) {
        acc += d2(i);
        if (acc >= target) {
          pick = i;
          break;
        }
      }
    }
    centroids.row(c) = points.row(pick);
  }
  return centroids;
}

struct LloydOut {
  std::vector<int> assign;
  Matrix centroids;
  double inertia;
  std::vector<double> history;
};

LloydOut lloyd(const Matrix& points, int k, Rng& rng, int max_iter = 300) {
  const Index n = points.rows();
  LloydOut out;
  out.centroids = kmeanspp_seed(points, k, rng);
  std::vector<int> prev;
  Vector sq_dist;

  for (int it = 0; it < max_iter; ++it) {
    par::assign_nearest(points, out.centroids, out.assign, sq_dist);

    // Repair empty clusters: steal the point currently farthest from its
    // assigned centroid (ascending cluster id, smallest point index wins ties).
    std::vector<Index> counts(static_cast<size_t>(k), 0);
    for (int a : out.assign) ++counts[static_cast<size_t>(a)];
    for (int u = 0; u < k; ++u) {
      if (counts[static_cast<size_t>(u)] > 0) continue;
      Index far = 0;
      double far_d = -1.0;
      for (Index i = 0; i < n; ++i) {
        if (counts[static_cast<size_t>(out.assign[static_cast<size_t>(i)])] > 1 &&
            sq_dist(i) > far_d) {
          far_d = sq_dist(i);
          far = i;
        }
      }
      --counts[static_cast<size_t>(out.assign[static_cast<size_t>(far)])];
      out.assign[static_cast<size_t>(far)] = u;
      ++counts[static_cast<size_t>(u)];
      sq_dist(far) = 0.0;
    }

    out.history.push_back(sq_dist.sum());

    if (out.assign == prev) break;
    prev = out.assign;

    out.centroids.setZero();
    for (Index i = 0; i < n; ++i)
      out.centroids.row(out.assign[static_cast<size_t>(i)]) += points.row(i);
    for (int u = 0; u < k; ++u)
      out.centroids.row(u) /= static_cast<double>(counts[static_cast<size_t>(u)]);
  }

  out.inertia = 0.0;
  for (Index i = 0; i < n; ++i)
    out.inertia +=
        (points.row(i) - out.centroids.row(out.assign[static_cast<size_t>(i)])).squaredNorm();
  return out;
}

}  // namespace

KMeansResult kmeans(const Matrix& points, int k, std::uint64_t seed, int restarts) {
  const Index n = points.rows();
  if (n == 0) throw EmptyInput("kmeans: no points");
  if (k < 1 || k > n)
    throw LengthMismatch("kmeans: k must satisfy 1 <= k <= n");
  if (restarts < 1) throw LengthMismatch("kmeans: restarts must be >= 1");

  KMeansResult best;
  double best_inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    Rng rng(Rng::derive(seed, 0x6b6d65616e73ULL, static_cast<std::uint64_t>(r)));
    LloydOut run = lloyd(points, k, rng);
    if (run.inertia < best_inertia) {
      best_inertia = run.inertia;
      best.indicator = ClusterIndicator::from_assignments(run.assign, k);
      best.centroids = run.centroids;
      best.inertia = run.inertia;
      best.inertia_history = run.history;
    }
  }
  return best;
}

}  // namespace dcmtf::cluster
