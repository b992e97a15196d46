// Test-only oracles: brute-force recomputations from first principles, kept
// independent of the library's computation paths so they can certify them.
#pragma once

#include <cstdint>
#include <vector>

#include "qifrow/rng.hpp"
#include "qifrow/types.hpp"

namespace qifrow::testing {

// Expected best-action value computed directly from a gain matrix
// (actions x secrets), enumerating actions per observable.
double brute_prior_value(const Vec& prior, const std::vector<Vec>& gain);
double brute_posterior_value(const Vec& prior, const std::vector<Vec>& rows,
                             const std::vector<Vec>& gain);

// Gain matrices for the adversaries under test.
std::vector<Vec> gain_exact(std::size_t n);                       // identity
std::vector<Vec> gain_predicate(const std::vector<std::size_t>& subset, std::size_t n);
std::vector<Vec> loss_to_gain(const std::vector<Vec>& gain);      // 1 - g

// Brute-force leakage from the matrices above; loss mode via risks.
double brute_leakage(const Vec& prior, const std::vector<Vec>& rows,
                     const std::vector<Vec>& gain, bool loss_mode);

// Random strictly-positive distribution (normalized exponentials).
Vec random_distribution(Rng& rng, std::size_t n);
// Random distribution allowing zero entries (sparse support).
Vec random_sparse_distribution(Rng& rng, std::size_t n);
std::vector<Vec> random_rows(Rng& rng, std::size_t n, std::size_t m);

// All compositions of `denominator` into `parts` slots, as distributions
// with entries k/denominator.
std::vector<Vec> rational_grid(std::size_t parts, std::size_t denominator);

// Points q = (t, 1-t) for t = 0, step, 2*step, ..., 1.
std::vector<Vec> one_simplex_grid(double step);

}  // namespace qifrow::testing
