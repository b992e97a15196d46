#include "qifrow/feasible.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qifrow {

FeasibleSet FeasibleSet::full_simplex() { return FeasibleSet(Kind::FullSimplex); }

FeasibleSet FeasibleSet::linear_system(std::vector<RowConstraint> constraints) {
    FeasibleSet f(Kind::LinearSystem);
    for (const RowConstraint& c : constraints) {
        for (double a : c.coefs)
            if (!std::isfinite(a)) throw ValidationError("FeasibleSet: non-finite coefficient");
        if (!std::isfinite(c.rhs)) throw ValidationError("FeasibleSet: non-finite rhs");
    }
    f.constraints_ = std::move(constraints);
    return f;
}

FeasibleSet FeasibleSet::non_negative_padding(Vec q_hat) {
    FeasibleSet f(Kind::NonNegativePadding);
    double sum = 0.0;
    for (double v : q_hat) {
        if (!std::isfinite(v) || v < 0.0)
            throw ValidationError("FeasibleSet: padding base must be a distribution");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kStochasticTol)
        throw ValidationError("FeasibleSet: padding base must sum to 1");
    f.base_ = std::move(q_hat);
    return f;
}

const Vec& FeasibleSet::base() const {
    if (kind_ != Kind::NonNegativePadding)
        throw ValidationError("FeasibleSet: base() only valid for padding sets");
    return base_;
}

void FeasibleSet::emit(lp::Problem& p, const std::vector<int>& q_vars) const {
    const std::size_t m = q_vars.size();
    // Simplex membership: q >= 0 comes from variable bounds; the sum pins 1.
    std::vector<lp::Term> sum;
    sum.reserve(m);
    for (int v : q_vars) sum.push_back({v, 1.0});
    p.add_constraint(std::move(sum), lp::Relation::Eq, 1.0);

    switch (kind_) {
        case Kind::FullSimplex:
            break;
        case Kind::LinearSystem:
            for (const RowConstraint& c : constraints_) {
                if (c.coefs.size() != m)
                    throw ValidationError("FeasibleSet: constraint arity mismatch");
                std::vector<lp::Term> terms;
                for (std::size_t o = 0; o < m; ++o)
                    if (c.coefs[o] != 0.0) terms.push_back({q_vars[o], c.coefs[o]});
                p.add_constraint(std::move(terms), c.rel, c.rhs);
            }
            break;
        case Kind::NonNegativePadding:
            if (base_.size() != m)
                throw ValidationError("FeasibleSet: padding base arity mismatch");
            append_padding_constraints(p, q_vars, base_);
            break;
    }
}

bool FeasibleSet::contains(const Vec& q, double tol) const {
    double sum = 0.0;
    for (double v : q) {
        if (v < -tol) return false;
        sum += v;
    }
    if (std::abs(sum - 1.0) > tol) return false;
    switch (kind_) {
        case Kind::FullSimplex:
            return true;
        case Kind::LinearSystem:
            for (const RowConstraint& c : constraints_) {
                if (c.coefs.size() != q.size())
                    throw ValidationError("FeasibleSet: constraint arity mismatch");
                double lhs = 0.0;
                for (std::size_t o = 0; o < q.size(); ++o) lhs += c.coefs[o] * q[o];
                double slack = tol * std::max(1.0, std::abs(c.rhs));
                switch (c.rel) {
                    case lp::Relation::Le: if (lhs > c.rhs + slack) return false; break;
                    case lp::Relation::Ge: if (lhs < c.rhs - slack) return false; break;
                    case lp::Relation::Eq: if (std::abs(lhs - c.rhs) > slack) return false; break;
                }
            }
            return true;
        case Kind::NonNegativePadding:
            if (base_.size() != q.size())
                throw ValidationError("FeasibleSet: padding base arity mismatch");
            return is_feasible_padding(base_, q, tol);
    }
    return false;
}

std::vector<std::vector<int>> append_padding_constraints(lp::Problem& p,
                                                         const std::vector<int>& q_vars,
                                                         const Vec& q_hat) {
    const std::size_t m = q_vars.size();
    if (q_hat.size() != m)
        throw ValidationError("padding constraints: base arity mismatch");

    // T variables only where they can carry mass: source rows with q_hat > 0,
    // targets at or above the source. A zero base row forces its whole T row
    // to zero, so those variables are omitted outright.
    std::vector<std::vector<int>> t(m, std::vector<int>(m, -1));
    for (std::size_t o = 0; o < m; ++o) {
        if (q_hat[o] == 0.0) continue;
        for (std::size_t o2 = o; o2 < m; ++o2) {
            std::ostringstream name;
            name << "t_" << o << "_" << o2;
            t[o][o2] = p.add_variable(name.str(), 0.0);
        }
    }
    // Row sums reproduce the base.
    for (std::size_t o = 0; o < m; ++o) {
        if (q_hat[o] == 0.0) continue;
        std::vector<lp::Term> terms;
        for (std::size_t o2 = o; o2 < m; ++o2) terms.push_back({t[o][o2], 1.0});
        p.add_constraint(std::move(terms), lp::Relation::Eq, q_hat[o]);
    }
    // Column sums define q.
    for (std::size_t o2 = 0; o2 < m; ++o2) {
        std::vector<lp::Term> terms;
        for (std::size_t o = 0; o <= o2; ++o)
            if (t[o][o2] >= 0) terms.push_back({t[o][o2], 1.0});
        terms.push_back({q_vars[o2], -1.0});
        p.add_constraint(std::move(terms), lp::Relation::Eq, 0.0);
    }
    return t;
}

bool is_feasible_padding(const Vec& q_hat, const Vec& q, double tol) {
    if (q_hat.size() != q.size())
        throw ValidationError("is_feasible_padding: length mismatch");
    double prefix_hat = 0.0, prefix_q = 0.0;
    for (std::size_t o = 0; o < q.size(); ++o) {
        prefix_hat += q_hat[o];
        prefix_q += q[o];
        if (prefix_q > prefix_hat + tol) return false;
    }
    return true;
}

Vec PaddingStrategy::base() const {
    Vec b(observables.size(), 0.0);
    for (std::size_t o = 0; o < transport.size(); ++o)
        for (double v : transport[o]) b[o] += v;
    return b;
}

Vec PaddingStrategy::target() const {
    Vec q(observables.size(), 0.0);
    for (const Vec& row : transport)
        for (std::size_t o2 = 0; o2 < row.size(); ++o2) q[o2] += row[o2];
    return q;
}

Vec PaddingStrategy::row_distribution(std::size_t o) const {
    if (o >= transport.size())
        throw ValidationError("PaddingStrategy: row out of range");
    double sum = 0.0;
    for (double v : transport[o]) sum += v;
    if (sum <= 0.0)
        throw ValidationError("PaddingStrategy: base puts no mass on this size");
    Vec row = transport[o];
    for (double& v : row) v /= sum;
    return row;
}

PaddingStrategy extract_strategy(const Vec& q_hat, const Vec& q,
                                 const std::vector<ObsId>& observables) {
    const std::size_t m = q_hat.size();
    if (q.size() != m || observables.size() != m)
        throw ValidationError("extract_strategy: length mismatch");
    if (!is_feasible_padding(q_hat, q, kFeasibilityTol))
        throw ValidationError("extract_strategy: target not reachable by upward padding");

    lp::Problem p;
    std::vector<int> q_vars(m);
    for (std::size_t o = 0; o < m; ++o) {
        std::ostringstream name;
        name << "q" << o;
        // q is data here, not a decision: pin each coordinate.
        q_vars[o] = p.add_variable(name.str(), q[o], q[o]);
    }
    auto t = append_padding_constraints(p, q_vars, q_hat);

    // Secondary selection among the many valid couplings: minimize the mass
    // actually moved, which keeps padding overhead minimal and makes
    // q == q_hat come back as the identity transport.
    std::vector<lp::Term> objective;
    for (std::size_t o = 0; o < m; ++o)
        for (std::size_t o2 = o + 1; o2 < m; ++o2)
            if (t[o][o2] >= 0) objective.push_back({t[o][o2], 1.0});
    p.set_objective(std::move(objective));

    lp::Solution sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal) {
        // The prefix test admits tolerance-boundary pairs the exact LP may
        // reject; retry with the target relaxed by the certification slack.
        lp::Problem relaxed;
        std::vector<int> qv(m);
        for (std::size_t o = 0; o < m; ++o) {
            std::ostringstream name;
            name << "q" << o;
            qv[o] = relaxed.add_variable(name.str(),
                                         std::max(0.0, q[o] - kFeasibilityTol),
                                         q[o] + kFeasibilityTol);
        }
        auto t2 = append_padding_constraints(relaxed, qv, q_hat);
        std::vector<lp::Term> obj2;
        for (std::size_t o = 0; o < m; ++o)
            for (std::size_t o2 = o + 1; o2 < m; ++o2)
                if (t2[o][o2] >= 0) obj2.push_back({t2[o][o2], 1.0});
        relaxed.set_objective(std::move(obj2));
        sol = lp::solve(relaxed);
        t = std::move(t2);
        if (sol.status != lp::Status::Optimal)
            throw ValidationError("extract_strategy: transport program " +
                                  std::string(lp::to_string(sol.status)));
    }

    PaddingStrategy strategy;
    strategy.observables = observables;
    strategy.transport.assign(m, Vec(m, 0.0));
    for (std::size_t o = 0; o < m; ++o)
        for (std::size_t o2 = o; o2 < m; ++o2)
            if (t[o][o2] >= 0)
                strategy.transport[o][o2] = std::max(0.0, sol.values[t[o][o2]]);
    return strategy;
}

}  // namespace qifrow
