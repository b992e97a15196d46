#include "qifrow/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qifrow/predicate.hpp"
#include "qifrow/seb.hpp"

namespace qifrow {

namespace {

// LP assignments carry up to ~1e-8 of certification slack; snap the row back
// onto the simplex so downstream Channel construction (1e-9) accepts it.
Vec polish_row(Vec q) {
    double sum = 0.0;
    for (double& v : q) {
        if (v < -kFeasibilityTol)
            throw ValidationError("polish_row: negative probability beyond tolerance");
        if (v < 0.0) v = 0.0;
        sum += v;
    }
    if (sum <= 0.0) throw ValidationError("polish_row: zero mass");
    for (double& v : q) v /= sum;
    return q;
}

std::vector<int> add_row_variables(lp::Problem& p, std::size_t m, const char* prefix) {
    std::vector<int> vars(m);
    for (std::size_t o = 0; o < m; ++o) {
        std::ostringstream name;
        name << prefix << o;
        vars[o] = p.add_variable(name.str(), 0.0);
    }
    return vars;
}

RowStrategy finish_lp_strategy(MethodSpec spec, const lp::Solution& sol,
                               const std::vector<int>& q_vars, std::string note) {
    RowStrategy out;
    out.method = spec;
    out.diag.status = sol.status;
    out.diag.note = std::move(note);
    if (sol.status == lp::Status::Optimal) {
        Vec q(q_vars.size());
        for (std::size_t o = 0; o < q.size(); ++o)
            q[o] = sol.values[static_cast<std::size_t>(q_vars[o])];
        out.q = polish_row(std::move(q));
        out.diag.objective = sol.objective;
    } else {
        out.diag.objective = std::numeric_limits<double>::quiet_NaN();
        if (!sol.message.empty()) {
            if (!out.diag.note.empty()) out.diag.note += "; ";
            out.diag.note += sol.message;
        }
    }
    return out;
}

}  // namespace

std::string MethodSpec::name() const {
    switch (kind) {
        case Kind::OptimalFixedPrior: return "optimal-fixed-prior";
        case Kind::OptimalCapacityExact: return "optimal-capacity";
        case Kind::ConvexFeasible: return "convex-feasible";
        case Kind::WeightedAverage: return "weighted-average";
        case Kind::Average: return "average";
        case Kind::Copy: return "copy";
        case Kind::NoDefense: return "no-defense";
        case Kind::Pad: return "pad";
        case Kind::SebExact: return "seb-exact";
        case Kind::SebApprox: return "seb-approx";
    }
    return "unknown";
}

MethodSpec MethodSpec::parse(const std::string& name) {
    for (Kind k : {Kind::OptimalFixedPrior, Kind::OptimalCapacityExact, Kind::ConvexFeasible,
                   Kind::WeightedAverage, Kind::Average, Kind::Copy, Kind::NoDefense,
                   Kind::Pad, Kind::SebExact, Kind::SebApprox}) {
        MethodSpec spec{k};
        if (spec.name() == name) return spec;
    }
    throw ValidationError("unknown method '" + name + "'");
}

RowStrategy optimal_fixed_prior(const Prior& prior, const Channel& channel, std::size_t s,
                                const FeasibleSet& feasible, const Adversary& adv) {
    if (prior.size() != channel.num_secrets())
        throw ValidationError("optimal_fixed_prior: prior/channel size mismatch");
    if (s >= channel.num_secrets())
        throw ValidationError("optimal_fixed_prior: secret out of range");
    validate_adversary(adv, channel.num_secrets());
    bool s_dist = false;
    if (const auto* d = std::get_if<SDistinguish>(&adv.goal)) {
        if (d->secret != s)
            throw ValidationError("optimal_fixed_prior: adversary must target the designable row");
        s_dist = true;
    } else if (!adv.is_exact()) {
        throw ValidationError("optimal_fixed_prior: adversary must be exact-guessing or s-distinguishing");
    }

    const std::size_t m = channel.num_observables();
    lp::Problem p;
    std::vector<int> q_vars = add_row_variables(p, m, "q");
    std::vector<int> z_vars = add_row_variables(p, m, "z");
    feasible.emit(p, q_vars);

    for (std::size_t o = 0; o < m; ++o) {
        // Fixed-row term per column: the best competing action's mass.
        double fixed = 0.0;
        for (std::size_t t = 0; t < channel.num_secrets(); ++t) {
            if (t == s) continue;
            double w = prior[t] * channel.at(t, o);
            fixed = s_dist ? fixed + w : std::max(fixed, w);
        }
        p.add_constraint({{z_vars[o], 1.0}}, lp::Relation::Ge, fixed);
        p.add_constraint({{z_vars[o], 1.0}, {q_vars[o], -prior[s]}}, lp::Relation::Ge, 0.0);
    }
    std::vector<lp::Term> obj;
    for (int z : z_vars) obj.push_back({z, 1.0});
    p.set_objective(std::move(obj));

    MethodSpec spec{MethodSpec::Kind::OptimalFixedPrior};
    return finish_lp_strategy(spec, lp::solve(p), q_vars,
                              "adversary mode ignored: gain and loss share the minimizer");
}

RowStrategy optimal_capacity_exact(const Channel& channel, std::size_t s,
                                   const FeasibleSet& feasible) {
    if (s >= channel.num_secrets())
        throw ValidationError("optimal_capacity_exact: secret out of range");
    const std::size_t m = channel.num_observables();

    lp::Problem p;
    std::vector<int> q_vars = add_row_variables(p, m, "q");
    std::vector<int> z_vars = add_row_variables(p, m, "z");
    feasible.emit(p, q_vars);

    for (std::size_t o = 0; o < m; ++o) {
        double colmax = 0.0;
        for (std::size_t t = 0; t < channel.num_secrets(); ++t)
            if (t != s) colmax = std::max(colmax, channel.at(t, o));
        p.add_constraint({{z_vars[o], 1.0}}, lp::Relation::Ge, colmax);
        p.add_constraint({{z_vars[o], 1.0}, {q_vars[o], -1.0}}, lp::Relation::Ge, 0.0);
    }
    std::vector<lp::Term> obj;
    for (int z : z_vars) obj.push_back({z, 1.0});
    p.set_objective(std::move(obj));

    MethodSpec spec{MethodSpec::Kind::OptimalCapacityExact};
    return finish_lp_strategy(spec, lp::solve(p), q_vars, "");
}

std::optional<RowStrategy> convex_feasible(const Channel& channel, std::size_t s,
                                           const FeasibleSet& feasible) {
    if (s >= channel.num_secrets())
        throw ValidationError("convex_feasible: secret out of range");
    const std::size_t n = channel.num_secrets();
    const std::size_t m = channel.num_observables();

    lp::Problem p;
    std::vector<int> q_vars = add_row_variables(p, m, "q");
    std::vector<int> lambda;
    std::vector<std::size_t> others;
    for (std::size_t t = 0; t < n; ++t) {
        if (t == s) continue;
        std::ostringstream name;
        name << "lambda" << t;
        lambda.push_back(p.add_variable(name.str(), 0.0));
        others.push_back(t);
    }
    std::vector<lp::Term> sum;
    for (int l : lambda) sum.push_back({l, 1.0});
    p.add_constraint(std::move(sum), lp::Relation::Eq, 1.0);
    for (std::size_t o = 0; o < m; ++o) {
        std::vector<lp::Term> terms{{q_vars[o], -1.0}};
        for (std::size_t k = 0; k < others.size(); ++k) {
            double c = channel.at(others[k], o);
            if (c != 0.0) terms.push_back({lambda[k], c});
        }
        p.add_constraint(std::move(terms), lp::Relation::Eq, 0.0);
    }
    feasible.emit(p, q_vars);
    p.set_objective({});

    lp::Solution sol = lp::solve(p);
    if (sol.status == lp::Status::Infeasible) return std::nullopt;
    if (sol.status != lp::Status::Optimal)
        throw ValidationError(std::string("convex_feasible: solver ") + lp::to_string(sol.status));
    MethodSpec spec{MethodSpec::Kind::ConvexFeasible};
    return finish_lp_strategy(spec, sol, q_vars, "");
}

RowStrategy baseline(const MethodSpec& spec, const Channel& channel, std::size_t s,
                     const Prior* prior, const FeasibleSet* feasible) {
    if (s >= channel.num_secrets())
        throw ValidationError("baseline: secret out of range");
    if (prior && prior->size() != channel.num_secrets())
        throw ValidationError("baseline: prior/channel size mismatch");
    const std::size_t n = channel.num_secrets();
    const std::size_t m = channel.num_observables();

    RowStrategy out;
    out.method = spec;
    out.diag.objective = std::numeric_limits<double>::quiet_NaN();

    switch (spec.kind) {
        case MethodSpec::Kind::NoDefense:
            out.q = channel.row(s);
            break;
        case MethodSpec::Kind::Average: {
            out.q.assign(m, 0.0);
            double w = 1.0 / static_cast<double>(n - 1);
            for (std::size_t t = 0; t < n; ++t) {
                if (t == s) continue;
                for (std::size_t o = 0; o < m; ++o) out.q[o] += w * channel.at(t, o);
            }
            break;
        }
        case MethodSpec::Kind::WeightedAverage:
            if (!prior) throw ValidationError("baseline: weighted-average needs a prior");
            out.q = average_other_row(*prior, channel, s);
            break;
        case MethodSpec::Kind::Copy: {
            std::size_t target = n;  // sentinel
            if (spec.copy_rule == CopyRule::HighestPrior) {
                if (!prior) throw ValidationError("baseline: prior-driven copy needs a prior");
                double best = -1.0;
                for (std::size_t t = 0; t < n; ++t) {
                    if (t == s) continue;
                    if ((*prior)[t] > best) {
                        best = (*prior)[t];
                        target = t;
                    }
                }
            } else {
                // Capacity of C^{C_t}: constant in t for exact guessing (the
                // copied row is already in the set), so the tie rule picks the
                // first site; for s-distinguishing it is 1 + maxdist/2.
                double best = std::numeric_limits<double>::infinity();
                std::vector<Vec> others = channel.rows_except(s);
                for (std::size_t t = 0; t < n; ++t) {
                    if (t == s) continue;
                    double value;
                    if (spec.copy_rule == CopyRule::MinCapacityExact) {
                        double total = 0.0;
                        for (std::size_t o = 0; o < m; ++o) {
                            double colmax = 0.0;
                            for (const Vec& row : others) colmax = std::max(colmax, row[o]);
                            total += colmax;
                        }
                        value = total;
                    } else {
                        value = 1.0 + 0.5 * max_dist({channel.row(t)}, others).value;
                    }
                    if (value < best - 1e-15) {
                        best = value;
                        target = t;
                    }
                }
            }
            out.q = channel.row(target);
            out.diag.note = "copied " + channel.secret_ids()[target];
            break;
        }
        case MethodSpec::Kind::Pad: {
            if (spec.pad_block_kb <= 0)
                throw ValidationError("baseline: pad block must be positive");
            const Vec& q_hat = channel.row(s);
            const auto& obs = channel.observable_ids();
            out.q.assign(m, 0.0);
            for (std::size_t o = 0; o < m; ++o) {
                if (q_hat[o] == 0.0) continue;
                ObsId size = obs[o];
                ObsId block = spec.pad_block_kb;
                ObsId target = ((size + block - 1) / block) * block;
                auto it = std::find(obs.begin(), obs.end(), target);
                if (it == obs.end()) {
                    std::ostringstream os;
                    os << "baseline: pad target " << target
                       << "KB is not among the channel observables";
                    throw ValidationError(os.str());
                }
                out.q[static_cast<std::size_t>(it - obs.begin())] += q_hat[o];
            }
            break;
        }
        default:
            throw ValidationError("baseline: '" + spec.name() + "' is not a baseline method");
    }

    if (feasible && !feasible->contains(out.q)) {
        out.q = project_to_feasible(out.q, *feasible);
        out.diag.projected = true;
        if (!out.diag.note.empty()) out.diag.note += "; ";
        out.diag.note += "L1-projected onto the feasible set";
    }
    return out;
}

}  // namespace qifrow
