#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dcmtf/types.hpp"

namespace dcmtf::cluster {

struct ClusterIndicator {
  std::vector<int> assignments;  // cluster ids in 0..k-1
  int k = 0;
  bool degenerate = false;  // true when some cluster id never appears

  Index n() const { return static_cast<Index>(assignments.size()); }

  /// The n x k binary indicator I (each row sums to 1).
  Matrix binary() const;

  static ClusterIndicator from_assignments(std::vector<int> assignments, int k);
};

struct VigorousIndicator {
  Matrix j;  // n x k, J_iu = 1/sqrt(|B_u|) where I_iu = 1, else 0
};

/// Throws EmptyCluster when a cluster has no members.
VigorousIndicator to_vigorous(const ClusterIndicator& ind);

struct KMeansResult {
  ClusterIndicator indicator;
  Matrix centroids;                     // k x p
  double inertia = 0.0;
  std::vector<double> inertia_history;  // per Lloyd iteration (winning restart)
};

/// Lloyd's algorithm with k-means++ seeding. Runs `restarts` independent
/// restarts and keeps the lowest inertia (ties: earliest restart). Empty
/// clusters are reseeded to the point farthest from its centroid.
/// Deterministic for fixed (seed, restarts).
KMeansResult kmeans(const Matrix& points, int k, std::uint64_t seed,
                    int restarts = 10);

struct PartitionMetrics {
  double ri = 0.0;
  double ari = 0.0;
  double nmi = 0.0;
  double ami = 0.0;
  std::optional<double> silhouette;
};

/// Pair-counting and information-theoretic agreement between two
/// partitions of the same instances. NMI and AMI use arithmetic-mean
/// normalization; AMI subtracts the hypergeometric expected MI.
PartitionMetrics evaluate_partition(const ClusterIndicator& pred,
                                    const ClusterIndicator& truth);

/// Mean silhouette score over all points; singleton clusters contribute 0,
/// and coincident clusters (a = b = 0) score 0. Throws SingleCluster for
/// k = 1.
double silhouette(const Matrix& points, const ClusterIndicator& ind);

}  // namespace dcmtf::cluster
