#include "qifrow/metric.hpp"

#include <cmath>

namespace qifrow {

double l1_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size())
        throw ValidationError("l1_distance: length mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] - q[i]);
    return d;
}

DistanceWitness diameter(const std::vector<Vec>& rows) {
    if (rows.empty()) throw ValidationError("diameter: empty set");
    if (rows.size() == 1) return {0.0, 0, 0};
    DistanceWitness best{l1_distance(rows[0], rows[1]), 0, 1};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            double d = l1_distance(rows[i], rows[j]);
            if (d > best.value) best = {d, i, j};
        }
    }
    return best;
}

DistanceWitness max_dist(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    if (a.empty() || b.empty()) throw ValidationError("max_dist: empty set");
    DistanceWitness best{l1_distance(a[0], b[0]), 0, 0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            double d = l1_distance(a[i], b[j]);
            if (d > best.value) best = {d, i, j};
        }
    }
    return best;
}

}  // namespace qifrow
