#pragma once

#include <optional>
#include <string>

#include "qifrow/feasible.hpp"
#include "qifrow/qif.hpp"
#include "qifrow/types.hpp"

namespace qifrow {

/// How Copy picks the site to emulate when the prior is unknown.
enum class CopyRule { HighestPrior, MinCapacityExact, MinCapacitySDistinguish };

struct MethodSpec {
    enum class Kind {
        OptimalFixedPrior,
        OptimalCapacityExact,
        ConvexFeasible,
        WeightedAverage,
        Average,
        Copy,
        NoDefense,
        Pad,
        SebExact,
        SebApprox,
    };
    Kind kind = Kind::NoDefense;
    ObsId pad_block_kb = 5;                      // Pad: round up to this multiple
    double epsilon = 0.05;                       // SebApprox
    CopyRule copy_rule = CopyRule::HighestPrior; // Copy

    static MethodSpec of(Kind k) { return MethodSpec{k}; }
    std::string name() const;
    static MethodSpec parse(const std::string& name);  // throws on unknown
};

/// A constructed row for the designable secret, with solver diagnostics.
struct RowStrategy {
    MethodSpec method;
    Vec q;
    struct Diagnostics {
        double objective = 0.0;   // LP objective where applicable
        lp::Status status = lp::Status::Optimal;
        bool projected = false;   // baseline row was L1-projected into F
        std::string note;
    } diag;
};

/// Fixed-prior optimum: the row minimizing leakage(prior, C^q, adv) over F,
/// for an exact-guessing or s-distinguishing adversary targeting s. Gain and
/// loss modes share the minimizer, so the adversary's mode is ignored (noted
/// in diagnostics). The reported objective is the posterior vulnerability at
/// the optimum.
RowStrategy optimal_fixed_prior(const Prior& prior, const Channel& channel, std::size_t s,
                                const FeasibleSet& feasible, const Adversary& adv);

/// Unknown-prior optimum for exact guessing: minimizes the gain capacity of
/// C^q over F. The objective is the resulting capacity.
RowStrategy optimal_capacity_exact(const Channel& channel, std::size_t s,
                                   const FeasibleSet& feasible);

/// Some feasible convex combination of the rows other than s, or nullopt when
/// the hull does not meet F. Any returned row preserves the exact-guessing
/// capacities of the fixed rows.
std::optional<RowStrategy> convex_feasible(const Channel& channel, std::size_t s,
                                           const FeasibleSet& feasible);

/// The natural baseline constructions. WeightedAverage and prior-driven Copy
/// need a prior; Pad needs the defended site's original size distribution
/// (its channel row). When a feasible set is supplied and the raw baseline
/// row violates it, the row is L1-projected onto F and flagged in
/// diagnostics.
RowStrategy baseline(const MethodSpec& spec, const Channel& channel, std::size_t s,
                     const Prior* prior = nullptr,
                     const FeasibleSet* feasible = nullptr);

}  // namespace qifrow
