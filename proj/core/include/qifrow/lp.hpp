#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "qifrow/errors.hpp"

namespace qifrow::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Status { Optimal, Infeasible, Unbounded, Failed };
enum class Relation { Le, Ge, Eq };

const char* to_string(Status s);

struct Term {
    int var = 0;
    double coef = 0.0;
};

struct Constraint {
    std::vector<Term> terms;
    Relation rel = Relation::Le;
    double rhs = 0.0;
};

/// A linear program in minimization form. Variables default to [0, +inf);
/// free and upper-bounded variables are supported. All coefficients must be
/// finite and all terms must reference declared variables.
class Problem {
public:
    int add_variable(std::string name, double lower = 0.0, double upper = kInfinity);
    void add_constraint(std::vector<Term> terms, Relation rel, double rhs);
    /// Objective to minimize: terms plus an additive constant.
    void set_objective(std::vector<Term> terms, double constant = 0.0);

    std::size_t num_variables() const { return names_.size(); }
    std::size_t num_constraints() const { return constraints_.size(); }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    const std::vector<Term>& objective() const { return objective_; }
    double objective_constant() const { return objective_constant_; }
    const std::string& variable_name(int v) const { return names_.at(v); }
    double lower_bound(int v) const { return lower_.at(v); }
    double upper_bound(int v) const { return upper_.at(v); }

    /// Debug dump in the conventional CPLEX LP text format, usable for
    /// cross-checking against external solvers.
    std::string to_lp_format() const;

private:
    void check_terms(const std::vector<Term>& terms) const;

    std::vector<std::string> names_;
    std::vector<double> lower_, upper_;
    std::vector<Constraint> constraints_;
    std::vector<Term> objective_;
    double objective_constant_ = 0.0;
};

struct Solution {
    Status status = Status::Failed;
    std::vector<double> values;  // one per declared variable; set when Optimal
    double objective = 0.0;
    std::string message;
};

struct SolveOptions {
    double eps = 1e-9;          // pivot / reduced-cost tolerance
    std::size_t max_pivots = 0; // 0 = scale with problem size
    // Dense tableau guard; problems whose tableau would exceed this many
    // doubles are rejected with Status::Failed instead of thrashing.
    std::size_t max_tableau_entries = 200'000'000;
    // Consecutive non-improving pivots before switching to Bland's rule.
    std::size_t stall_limit = 1000;
};

/// Dense two-phase simplex. Deterministic: identical problems produce
/// bit-identical solutions. An Optimal result is certified by re-substituting
/// the assignment into every constraint (within 1e-8); certification failures
/// surface as Status::Failed, never as a wrong Optimal.
Solution solve(const Problem& p, const SolveOptions& opts = {});

}  // namespace qifrow::lp
