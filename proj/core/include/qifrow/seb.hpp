#pragma once

#include <span>
#include <utility>

#include "qifrow/optimize.hpp"

namespace qifrow {

enum class SebMethod { ExactLp, EmbeddingLp, Approx };

/// A smallest-enclosing-ball solution under the L1 metric over a feasible
/// set. The radius is always the realized max distance from the returned
/// center to the point set, recomputed after solving.
struct SebSolution {
    Vec center;
    double radius = 0.0;
    SebMethod method = SebMethod::ExactLp;
    double epsilon = 0.0;            // Approx only
    std::size_t farthest_index = 0;  // point realizing the radius
    lp::Status status = lp::Status::Optimal;
    std::string note;
};

/// Component-wise maxima/minima of the embedded point set: the two vectors
/// that alone determine the max L-infinity distance to the whole set.
struct EmbeddingBounds {
    Vec top, bottom;
};

struct SebOptions {
    enum class ExactStrategy {
        Auto,           // direct LP when it fits in the dense solver, else cuts
        DirectLp,       // always build the full auxiliary-variable LP
        RowGeneration,  // lazily generated distance cuts (same optimum)
    };
    ExactStrategy exact_strategy = ExactStrategy::Auto;
    // Tableau-entry budget that Auto allows the direct LP before switching.
    std::size_t direct_tableau_cap = 64'000'000;
};

/// (R^d, L-infinity) SEB: center (top+bottom)/2, radius half the largest
/// coordinate range.
std::pair<Vec, double> seb_linf_direct(const std::vector<Vec>& points);

/// The linear isometric embedding of (R^m, L1) into (R^(2^m), L-infinity):
/// coordinate b (a bitstring over the m inputs, first input most significant)
/// carries sum_i (-1)^(b_i) x_i. Capped at m <= 20.
Vec embed_phi(std::span<const double> x);

/// One pass over the points accumulating the embedded maxima and minima.
EmbeddingBounds embedding_bounds(const std::vector<Vec>& points);

/// Optimal (F, L1)-SEB through the embedding: precomputes the bounds, then
/// solves an LP with 2*2^m distance constraints that no longer depends on the
/// number of points. Capped at m <= 12.
SebSolution seb_l1_embedding(const std::vector<Vec>& points, const FeasibleSet& feasible);

/// Optimal (F, L1)-SEB via the auxiliary-variable LP (one |x_i - y_i| pair of
/// rows per point and coordinate), polynomial in points x coordinates. Above
/// the dense-solver budget the same program is solved by lazy cut generation,
/// certified by the realized max distance.
SebSolution seb_l1_exact(const std::vector<Vec>& points, const FeasibleSet& feasible,
                         const SebOptions& options = {});

/// Euclidean SEB approximation by the core-set iteration: starting from the
/// first point, ceil(1/eps^2) rounds of stepping toward the current farthest
/// point (ties to the lowest index). The center is within (1+eps) of the
/// optimal Euclidean radius; the returned radius is the L1 max distance of
/// the final center, since that is the metric callers care about.
std::pair<Vec, double> seb_l2_approx(const std::vector<Vec>& points, double epsilon);

/// L1 projection onto a feasible set, via LP. The input need not be a
/// distribution.
Vec project_to_feasible(const Vec& point, const FeasibleSet& feasible);

/// The capacity-optimal row against an s-distinguishing adversary: the SEB
/// center of the other rows over F. The s-distinguishing gain capacity of the
/// resulting channel is 1 + radius/2; over the full simplex the same row is
/// also optimal for exact guessing.
RowStrategy capacity_optimal_sdist(const Channel& channel, std::size_t s,
                                   const FeasibleSet& feasible, SebMethod method,
                                   double epsilon = 0.05, const SebOptions& options = {});

/// The SEB solution backing capacity_optimal_sdist, exposed for diagnostics.
SebSolution seb_for_channel(const Channel& channel, std::size_t s,
                            const FeasibleSet& feasible, SebMethod method,
                            double epsilon = 0.05, const SebOptions& options = {});

}  // namespace qifrow
