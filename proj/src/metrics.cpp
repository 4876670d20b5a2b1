#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dcmtf/clustering.hpp"
#include "dcmtf/errors.hpp"
#include "dcmtf/parallel.hpp"

namespace dcmtf::cluster {

namespace {

double comb2(double n) { return 0.5 * n * (n - 1.0); }

// Expected mutual information under the permutation (hypergeometric) model,
// computed in log space.
double expected_mi(const std::vector<double>& a, const std::vector<double>& b,
                   double n) {
  double emi = 0.0;
  for (double ai : a) {
    for (double bj : b) {
      const double lo = std::max(1.0, ai + bj - n);
      const double hi = std::min(ai, bj);
      for (double nij = lo; nij <= hi; nij += 1.0) {
        const double term = (nij / n) * std::log(n * nij / (ai * bj));
        const double log_p = std::lgamma(ai + 1) + std::lgamma(bj + 1) +
                             std::lgamma(n - ai + 1) + std::lgamma(n - bj + 1) -
                             std::lgamma(n + 1) - std::lgamma(nij + 1) -
                             std::lgamma(ai - nij + 1) - std::lgamma(bj - nij + 1) -
                             std::lgamma(n - ai - bj + nij + 1);
        emi += term * std::exp(log_p);
      }
    }
  }
  return emi;
}

double entropy(const std::vector<double>& counts, double n) {
  double h = 0.0;
  for (double c : counts)
    if (c > 0.0) h -= (c / n) * std::log(c / n);
  return h;
}

}  // namespace

PartitionMetrics evaluate_partition(const ClusterIndicator& pred,
                                    const ClusterIndicator& truth) {
  if (pred.n() != truth.n())
    throw LengthMismatch("evaluate_partition: partitions cover different n");
  const Index n = pred.n();
  if (n == 0) throw EmptyInput("evaluate_partition: empty partitions");

  // Contingency table over the cluster ids that actually occur.
  const int kp = pred.k;
  const int kt = truth.k;
  std::vector<std::vector<double>> nij(static_cast<size_t>(kp),
                                       std::vector<double>(static_cast<size_t>(kt), 0.0));
  std::vector<double> a(static_cast<size_t>(kp), 0.0), b(static_cast<size_t>(kt), 0.0);
  for (Index i = 0; i < n; ++i) {
    const int u = pred.assignments[static_cast<size_t>(i)];
    const int v = truth.assignments[static_cast<size_t>(i)];
    nij[static_cast<size_t>(u)][static_cast<size_t>(v)] += 1.0;
    a[static_cast<size_t>(u)] += 1.0;
    b[static_cast<size_t>(v)] += 1.0;
  }
  const double nn = static_cast<double>(n);

  double sum_nij2 = 0.0;
  for (const auto& row : nij)
    for (double c : row) sum_nij2 += comb2(c);
  double sum_a2 = 0.0, sum_b2 = 0.0;
  for (double c : a) sum_a2 += comb2(c);
  for (double c : b) sum_b2 += comb2(c);

  const double total_pairs = comb2(nn);
  const double tp = sum_nij2;
  const double fp = sum_a2 - tp;
  const double fn = sum_b2 - tp;
  const double tn = total_pairs - tp - fp - fn;

  PartitionMetrics m;
  m.ri = (total_pairs > 0.0) ? (tp + tn) / total_pairs : 1.0;
  if (fp == 0.0 && fn == 0.0) {
    m.ari = 1.0;  // identical partitions, including the trivial limits
  } else {
    m.ari = 2.0 * (tp * tn - fn * fp) /
            ((tp + fn) * (fn + tn) + (tp + fp) * (fp + tn));
  }

  // Mutual information from the same contingency table.
  double mi = 0.0;
  for (size_t u = 0; u < nij.size(); ++u)
    for (size_t v = 0; v < nij[u].size(); ++v) {
      const double c = nij[u][v];
      if (c > 0.0) mi += (c / nn) * std::log(nn * c / (a[u] * b[v]));
    }
  mi = std::max(mi, 0.0);

  const int occupied_p =
      static_cast<int>(std::count_if(a.begin(), a.end(), [](double c) { return c > 0; }));
  const int occupied_t =
      static_cast<int>(std::count_if(b.begin(), b.end(), [](double c) { return c > 0; }));
  const double h_p = entropy(a, nn);
  const double h_t = entropy(b, nn);
  const double normalizer = 0.5 * (h_p + h_t);
  constexpr double eps = std::numeric_limits<double>::epsilon();

  if (occupied_p == 1 && occupied_t == 1) {
    m.nmi = 1.0;
    m.ami = 1.0;
  } else {
    m.nmi = (mi == 0.0) ? 0.0 : mi / std::max(normalizer, eps);
    const double emi = expected_mi(a, b, nn);
    double denom = normalizer - emi;
    denom = (denom < 0.0) ? std::min(denom, -eps) : std::max(denom, eps);
    m.ami = (mi - emi) / denom;
  }
  return m;
}

double silhouette(const Matrix& points, const ClusterIndicator& ind) {
  if (ind.k < 2) throw SingleCluster("silhouette: needs k >= 2");
  if (points.rows() != ind.n())
    throw LengthMismatch("silhouette: points/indicator size mismatch");
  const Index n = points.rows();
  const int k = ind.k;

  std::vector<Index> counts(static_cast<size_t>(k), 0);
  for (int a : ind.assignments) ++counts[static_cast<size_t>(a)];
  for (int u = 0; u < k; ++u)
    if (counts[static_cast<size_t>(u)] == 0)
      throw EmptyCluster("silhouette: cluster " + std::to_string(u) + " empty");

  const Matrix d = par::pairwise_sq_dists(points).cwiseSqrt();

  double total = 0.0;
  for (Index i = 0; i < n; ++i) {
    const int u = ind.assignments[static_cast<size_t>(i)];
    if (counts[static_cast<size_t>(u)] == 1) continue;  // singleton contributes 0

    std::vector<double> mean_to(static_cast<size_t>(k), 0.0);
    for (Index j = 0; j < n; ++j)
      mean_to[static_cast<size_t>(ind.assignments[static_cast<size_t>(j)])] += d(i, j);

    const double a_i = mean_to[static_cast<size_t>(u)] /
                       static_cast<double>(counts[static_cast<size_t>(u)] - 1);
    double b_i = std::numeric_limits<double>::infinity();
    for (int v = 0; v < k; ++v) {
      if (v == u) continue;
      b_i = std::min(b_i, mean_to[static_cast<size_t>(v)] /
                              static_cast<double>(counts[static_cast<size_t>(v)]));
    }
    const double denom = std::max(a_i, b_i);
    total += (denom > 0.0) ? (b_i - a_i) / denom : 0.0;
  }
  return total / static_cast<double>(n);
}

}  // namespace dcmtf::cluster
