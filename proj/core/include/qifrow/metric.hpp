#pragma once

#include <span>
#include <vector>

#include "qifrow/types.hpp"

namespace qifrow {

/// L1 distance between two equal-length vectors. For distributions this is
/// twice the total variation distance and lies in [0, 2].
double l1_distance(std::span<const double> p, std::span<const double> q);

struct DistanceWitness {
    double value = 0.0;
    std::size_t first = 0;   // index into the first set
    std::size_t second = 0;  // index into the second set
};

/// Max pairwise L1 distance within a non-empty set of rows, with the
/// realizing pair (ties broken by lowest indices).
DistanceWitness diameter(const std::vector<Vec>& rows);

/// Max L1 distance across two non-empty sets of rows.
DistanceWitness max_dist(const std::vector<Vec>& a, const std::vector<Vec>& b);

}  // namespace qifrow
