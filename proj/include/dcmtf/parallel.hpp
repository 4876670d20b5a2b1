#pragma once

#include <vector>

#include "dcmtf/types.hpp"

namespace dcmtf::par {

// Global worker count for the OpenMP kernels below. 1 means serial.
// Every kernel computes each output element independently, so the result
// is bit-identical for any thread count.
void set_threads(int n);
int threads();

// Pairwise squared Euclidean distances between rows of p: out(i,j) =
// ||p_i - p_j||^2, exact zero diagonal, symmetric by construction.
Matrix pairwise_sq_dists(const Matrix& p);
Matrix pairwise_sq_dists_serial(const Matrix& p);
Matrix pairwise_sq_dists_parallel(const Matrix& p);

// Nearest-centroid assignment: for each row of points, the index of the
// closest centroid row (ties -> lowest index) and the squared distance.
void assign_nearest(const Matrix& points, const Matrix& centroids,
                    std::vector<int>& assign, Vector& sq_dist);
void assign_nearest_serial(const Matrix& points, const Matrix& centroids,
                           std::vector<int>& assign, Vector& sq_dist);
void assign_nearest_parallel(const Matrix& points, const Matrix& centroids,
                             std::vector<int>& assign, Vector& sq_dist);

// Elementwise Gaussian kernel map: exp(-d2 / (2 sigma^2)).
Matrix gaussian_map(const Matrix& sq_dists, double sigma);
Matrix gaussian_map_serial(const Matrix& sq_dists, double sigma);
Matrix gaussian_map_parallel(const Matrix& sq_dists, double sigma);

}  // namespace dcmtf::par
