#include "wiretap/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "wiretap/errors.hpp"

namespace wiretap {

namespace {

double squared_distance(const Matrix& a, std::size_t ra, const Matrix& b, std::size_t rb) {
    double acc = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        const double d = a(ra, c) - b(rb, c);
        acc += d * d;
    }
    return acc;
}

Matrix kmeanspp_init(const Matrix& points, int cluster_count, RngStream& rng) {
    const std::size_t count = points.rows();
    Matrix centers(static_cast<std::size_t>(cluster_count), points.cols());
    std::vector<std::size_t> chosen;
    chosen.push_back(static_cast<std::size_t>(rng.uniform_int(static_cast<int>(count))));
    centers.set_row(0, points.row(chosen[0]));

    std::vector<double> dist2(count, std::numeric_limits<double>::infinity());
    for (int k = 1; k < cluster_count; ++k) {
        double total = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            dist2[i] = std::min(dist2[i], squared_distance(points, i, points, chosen.back()));
            total += dist2[i];
        }
        std::size_t pick = 0;
        if (total > 0.0) {
            double target = rng.uniform() * total;
            for (std::size_t i = 0; i < count; ++i) {
                target -= dist2[i];
                if (target <= 0.0) {
                    pick = i;
                    break;
                }
            }
        } else {
            // coincident points: fall back to index order
            pick = static_cast<std::size_t>(k) % count;
        }
        chosen.push_back(pick);
        centers.set_row(static_cast<std::size_t>(k), points.row(pick));
    }
    return centers;
}

// Assign points to their nearest non-full cluster, most confident first.
std::vector<int> greedy_balanced_assign(const Matrix& points, const Matrix& centers, int capacity) {
    const std::size_t count = points.rows();
    const int clusters = static_cast<int>(centers.rows());

    struct Entry {
        std::size_t point;
        double margin;
    };
    std::vector<Entry> order(count);
    for (std::size_t i = 0; i < count; ++i) {
        double best = std::numeric_limits<double>::infinity();
        double second = std::numeric_limits<double>::infinity();
        for (int k = 0; k < clusters; ++k) {
            const double d = squared_distance(points, i, centers, static_cast<std::size_t>(k));
            if (d < best) {
                second = best;
                best = d;
            } else if (d < second) {
                second = d;
            }
        }
        order[i] = {i, best - second};
    }
    std::stable_sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) {
        return a.margin < b.margin;  // ties keep index order
    });

    std::vector<int> labels(count, -1);
    std::vector<int> fill(static_cast<std::size_t>(clusters), 0);
    for (const Entry& e : order) {
        int best_k = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int k = 0; k < clusters; ++k) {
            if (fill[static_cast<std::size_t>(k)] >= capacity) continue;
            const double d = squared_distance(points, e.point, centers, static_cast<std::size_t>(k));
            if (d < best_d) {
                best_d = d;
                best_k = k;
            }
        }
        labels[e.point] = best_k;
        fill[static_cast<std::size_t>(best_k)] += 1;
    }
    return labels;
}

// Exchange points between clusters while any swap lowers the cost.
void swap_refine(const Matrix& points, std::vector<int>& labels, const Matrix& centers) {
    const std::size_t count = points.rows();
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t j = i + 1; j < count; ++j) {
                const int li = labels[i];
                const int lj = labels[j];
                if (li == lj) continue;
                const double now = squared_distance(points, i, centers, static_cast<std::size_t>(li)) +
                                   squared_distance(points, j, centers, static_cast<std::size_t>(lj));
                const double swapped = squared_distance(points, i, centers, static_cast<std::size_t>(lj)) +
                                       squared_distance(points, j, centers, static_cast<std::size_t>(li));
                if (swapped + 1e-12 < now) {
                    labels[i] = lj;
                    labels[j] = li;
                    improved = true;
                }
            }
        }
    }
}

}  // namespace

Matrix cluster_centers(const Matrix& points, const std::vector<int>& labels, int cluster_count) {
    Matrix centers(static_cast<std::size_t>(cluster_count), points.cols());
    std::vector<int> sizes(static_cast<std::size_t>(cluster_count), 0);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const auto k = static_cast<std::size_t>(labels[i]);
        sizes[k] += 1;
        for (std::size_t c = 0; c < points.cols(); ++c) centers(k, c) += points(i, c);
    }
    for (std::size_t k = 0; k < centers.rows(); ++k) {
        if (sizes[k] == 0) throw StateError("cluster_centers: empty cluster");
        for (std::size_t c = 0; c < centers.cols(); ++c) centers(k, c) /= sizes[k];
    }
    return centers;
}

double within_cluster_cost(const Matrix& points, const std::vector<int>& labels, const Matrix& centers) {
    double cost = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i)
        cost += squared_distance(points, i, centers, static_cast<std::size_t>(labels[i]));
    return cost;
}

ClusterAssignment balanced_kmeans(const Matrix& points, int cluster_count, RngStream& rng) {
    const std::size_t count = points.rows();
    if (cluster_count <= 0) throw ParamError("balanced_kmeans: cluster count must be positive");
    if (count == 0) throw ParamError("balanced_kmeans: no points");
    if (count % static_cast<std::size_t>(cluster_count) != 0)
        throw ParamError("balanced_kmeans: cluster count " + std::to_string(cluster_count) +
                         " does not divide point count " + std::to_string(count));
    const int capacity = static_cast<int>(count) / cluster_count;

    Matrix centers = kmeanspp_init(points, cluster_count, rng);
    std::vector<int> best_labels;
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<int> prev;

    for (int iter = 0; iter < 100; ++iter) {
        std::vector<int> labels = greedy_balanced_assign(points, centers, capacity);
        swap_refine(points, labels, centers);
        Matrix updated = cluster_centers(points, labels, cluster_count);
        const double cost = within_cluster_cost(points, labels, updated);
        if (cost < best_cost - 1e-15) {
            best_cost = cost;
            best_labels = labels;
        }
        if (labels == prev) break;
        prev = std::move(labels);
        centers = std::move(updated);
    }

    ClusterAssignment assignment;
    assignment.labels = best_labels;
    assignment.centers = cluster_centers(points, best_labels, cluster_count);
    assignment.cluster_count = cluster_count;
    assignment.cluster_size = capacity;
    return assignment;
}

Matrix build_equalization(const ClusterAssignment& assignment) {
    const std::size_t count = assignment.labels.size();
    if (assignment.cluster_size <= 0) throw ParamError("build_equalization: invalid assignment");
    Matrix e(count, count);
    const double weight = 1.0 / static_cast<double>(assignment.cluster_size);
    for (int j = 0; j < assignment.cluster_count; ++j)
        for (std::size_t i = 0; i < count; ++i)
            if (assignment.labels[i] == j)
                for (std::size_t k = 0; k < count; ++k)
                    if (assignment.labels[k] == j) e(i, k) = weight;
    return e;
}

Matrix equalize(const Matrix& one_hot, const Matrix& equalization) {
    return matmul(one_hot, equalization);
}

}  // namespace wiretap
