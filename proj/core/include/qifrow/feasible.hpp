#pragma once

#include <optional>
#include <vector>

#include "qifrow/lp.hpp"
#include "qifrow/types.hpp"

namespace qifrow {

/// One linear constraint over a candidate row q, coefficients by observable
/// position.
struct RowConstraint {
    Vec coefs;
    lp::Relation rel = lp::Relation::Le;
    double rhs = 0.0;
};

/// The set of feasible rows: plain simplex, an arbitrary linear system, or
/// the non-negative padding constraint built from a base distribution.
/// Simplex membership of q is always implied.
class FeasibleSet {
public:
    enum class Kind { FullSimplex, LinearSystem, NonNegativePadding };

    static FeasibleSet full_simplex();
    static FeasibleSet linear_system(std::vector<RowConstraint> constraints);
    /// Upward-only transport from the base distribution `q_hat` over
    /// positionally ordered observables (ascending sizes).
    static FeasibleSet non_negative_padding(Vec q_hat);

    Kind kind() const { return kind_; }
    const Vec& base() const;
    const std::vector<RowConstraint>& constraints() const { return constraints_; }

    /// Appends membership constraints for the row variables `q_vars` to an LP
    /// under construction, including simplex membership. The padding kind
    /// introduces its transport variables into the problem.
    void emit(lp::Problem& p, const std::vector<int>& q_vars) const;

    bool contains(const Vec& q, double tol = kFeasibilityTol) const;

private:
    FeasibleSet(Kind k) : kind_(k) {}
    Kind kind_;
    Vec base_;
    std::vector<RowConstraint> constraints_;
};

/// Upward transport matrix between two distributions over the same ordered
/// observables. `transport` is the raw coupling: row sums reproduce the base,
/// column sums the target, and no mass moves to a smaller observable.
struct PaddingStrategy {
    std::vector<ObsId> observables;      // ascending
    std::vector<Vec> transport;          // raw T; transport[o][o'] == 0 for o' < o
    Vec base() const;                    // row sums
    Vec target() const;                  // column sums
    /// Normalized row: the runtime padding distribution for input size at
    /// position o. Throws if the base puts no mass there.
    Vec row_distribution(std::size_t o) const;
};

/// Emits the transport constraint block (T >= 0 upper-triangular, row sums =
/// base, column sums = q) into an LP; returns the dense index matrix of the
/// created T variables (-1 where the variable is structurally zero).
std::vector<std::vector<int>> append_padding_constraints(lp::Problem& p,
                                                         const std::vector<int>& q_vars,
                                                         const Vec& q_hat);

/// Prefix-dominance test: q reachable from q_hat by upward-only transport iff
/// every prefix of q's cumulative mass is bounded by q_hat's. Agrees with LP
/// feasibility of the transport block.
bool is_feasible_padding(const Vec& q_hat, const Vec& q, double tol = kStochasticTol);

/// Solves the transport program for a feasible pair and returns the strategy.
/// Among all valid couplings the one moving the least total mass is chosen,
/// so q == q_hat yields the identity transport.
PaddingStrategy extract_strategy(const Vec& q_hat, const Vec& q,
                                 const std::vector<ObsId>& observables);

}  // namespace qifrow
