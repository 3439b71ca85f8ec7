#pragma once

#include <vector>

#include "wiretap/matrix.hpp"
#include "wiretap/rng.hpp"

namespace wiretap {

// Equal-size partition of constellation points. Every cluster holds exactly
// point_count / cluster_count members.
struct ClusterAssignment {
    std::vector<int> labels;  // per point, in [0, cluster_count)
    Matrix centers;           // cluster_count x dim, member means
    int cluster_count = 0;
    int cluster_size = 0;
};

// k-means++ seeding, then greedy capacity-constrained assignment ordered by
// margin (distance to nearest center minus distance to second nearest),
// improved by pairwise swaps, with center updates iterated to convergence
// or 100 rounds. Result is locally optimal for total squared distance
// under the equal-size constraint.
ClusterAssignment balanced_kmeans(const Matrix& points, int cluster_count, RngStream& rng);

// The equalization operator: E[i][k] = 1/cluster_size when i and k share a
// cluster, 0 otherwise. Symmetric, doubly stochastic and idempotent.
Matrix build_equalization(const ClusterAssignment& assignment);

// Soft labels: row i becomes the uniform distribution over the cluster
// containing message i (one_hot * E).
Matrix equalize(const Matrix& one_hot, const Matrix& equalization);

double within_cluster_cost(const Matrix& points, const std::vector<int>& labels, const Matrix& centers);

Matrix cluster_centers(const Matrix& points, const std::vector<int>& labels, int cluster_count);

}  // namespace wiretap
