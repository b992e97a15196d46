#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

#include "qifrow/qif.hpp"
#include "qifrow/wf.hpp"

namespace qifrow {

namespace {

RowStrategy make_row(const MethodSpec& spec, const Channel& channel, std::size_t s,
                     const FeasibleSet& feasible, const Adversary& adversary,
                     const Prior* prior, const EvalOptions& options) {
    switch (spec.kind) {
        case MethodSpec::Kind::OptimalFixedPrior: {
            if (!prior)
                throw ValidationError("evaluate: optimal-fixed-prior needs a prior");
            // The program covers exact guessing and distinguishing the
            // defended site; anything else has no fixed-prior optimum here.
            if (const auto* d = std::get_if<SDistinguish>(&adversary.goal)) {
                if (d->secret != s)
                    throw ValidationError(
                        "evaluate: the distinguishing target must be the defended site");
            } else if (!adversary.is_exact()) {
                throw ValidationError(
                    "evaluate: optimal-fixed-prior needs an exact or s-distinguishing adversary");
            }
            return optimal_fixed_prior(*prior, channel, s, feasible, adversary);
        }
        case MethodSpec::Kind::OptimalCapacityExact:
            return optimal_capacity_exact(channel, s, feasible);
        case MethodSpec::Kind::ConvexFeasible: {
            auto r = convex_feasible(channel, s, feasible);
            if (r) return *std::move(r);
            RowStrategy out;
            out.method = spec;
            out.diag.status = lp::Status::Infeasible;
            out.diag.objective = std::numeric_limits<double>::quiet_NaN();
            out.diag.note = "no convex combination is feasible";
            return out;
        }
        case MethodSpec::Kind::SebExact:
            return capacity_optimal_sdist(channel, s, feasible, SebMethod::ExactLp,
                                          options.seb_epsilon, options.seb);
        case MethodSpec::Kind::SebApprox:
            return capacity_optimal_sdist(channel, s, feasible, SebMethod::Approx,
                                          spec.epsilon > 0 ? spec.epsilon : options.seb_epsilon,
                                          options.seb);
        default:
            return baseline(spec, channel, s, prior, &feasible);
    }
}

void run_cells(std::size_t count, int jobs, const std::function<void(std::size_t)>& work) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                work(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

FeasibleSet FeasibilitySpec::build(const Channel& channel, std::size_t s) const {
    switch (kind) {
        case Kind::FullSimplex:
            return FeasibleSet::full_simplex();
        case Kind::NonNegativePadding:
            return FeasibleSet::non_negative_padding(channel.row(s));
        case Kind::LinearSystem:
            for (const RowConstraint& c : constraints)
                if (c.coefs.size() != channel.num_observables())
                    throw ValidationError(
                        "FeasibilitySpec: constraint arity does not match the channel");
            return FeasibleSet::linear_system(constraints);
    }
    throw ValidationError("FeasibilitySpec: unknown kind");
}

Channel working_channel(const Channel& channel, std::size_t s,
                        const std::vector<MethodSpec>& methods, ObsId pad_block_kb) {
    std::set<ObsId> sizes(channel.observable_ids().begin(), channel.observable_ids().end());
    bool has_pad = false;
    const Vec& q_hat = channel.row(s);
    for (const MethodSpec& method : methods) {
        if (method.kind != MethodSpec::Kind::Pad) continue;
        has_pad = true;
        ObsId block = method.pad_block_kb > 0 ? method.pad_block_kb : pad_block_kb;
        for (std::size_t o = 0; o < q_hat.size(); ++o) {
            if (q_hat[o] == 0.0) continue;
            ObsId size = channel.observable_ids()[o];
            sizes.insert(((size + block - 1) / block) * block);
        }
    }
    if (!has_pad || sizes.size() == channel.num_observables()) return channel;
    return channel.with_observables(std::vector<ObsId>(sizes.begin(), sizes.end()));
}

std::vector<EvalRow> evaluate_fixed_prior(const SiteCorpus& corpus, std::size_t s,
                                          const FeasibilitySpec& feasible,
                                          const Adversary& adversary,
                                          const std::vector<MethodSpec>& methods,
                                          const std::vector<std::string>& prior_names,
                                          const EvalOptions& options) {
    if (prior_names.empty()) throw ValidationError("evaluate: no priors selected");
    Channel channel = working_channel(corpus.channel, s, methods, options.pad_block_kb);
    FeasibleSet f = feasible.build(channel, s);

    std::vector<EvalRow> rows(methods.size() * prior_names.size());
    run_cells(rows.size(), options.jobs, [&](std::size_t cell) {
        std::size_t mi = cell / prior_names.size();
        std::size_t pi = cell % prior_names.size();
        const MethodSpec& spec = methods[mi];
        auto it = corpus.priors.find(prior_names[pi]);
        if (it == corpus.priors.end())
            throw ValidationError("evaluate: unknown prior '" + prior_names[pi] + "'");
        const Prior& prior = it->second;

        EvalRow row;
        row.method = spec.name();
        row.prior = prior_names[pi];
        RowStrategy strategy = make_row(spec, channel, s, f, adversary, &prior, options);
        row.status = strategy.diag.status;
        row.projected = strategy.diag.projected;
        if (strategy.diag.status == lp::Status::Optimal) {
            row.q = strategy.q;
            Channel defended = channel.with_row(s, strategy.q);
            row.posterior_vulnerability = posterior_value(prior, defended, adversary);
            try {
                row.leakage = leakage(prior, defended, adversary);
            } catch (const InfiniteLeakageError&) {
                row.leakage = std::numeric_limits<double>::infinity();
            }
        } else {
            row.leakage = std::numeric_limits<double>::quiet_NaN();
            row.posterior_vulnerability = std::numeric_limits<double>::quiet_NaN();
        }
        rows[cell] = std::move(row);
    });
    return rows;
}

std::vector<EvalRow> evaluate_capacity(const SiteCorpus& corpus, std::size_t s,
                                       const FeasibilitySpec& feasible,
                                       const Adversary& adversary,
                                       const std::vector<MethodSpec>& methods,
                                       const EvalOptions& options) {
    Channel channel = working_channel(corpus.channel, s, methods, options.pad_block_kb);
    FeasibleSet f = feasible.build(channel, s);
    const Prior* traffic = nullptr;
    if (auto it = corpus.priors.find("traffic"); it != corpus.priors.end())
        traffic = &it->second;

    std::vector<EvalRow> rows(methods.size());
    run_cells(rows.size(), options.jobs, [&](std::size_t cell) {
        MethodSpec spec = methods[cell];
        if (spec.kind == MethodSpec::Kind::Copy && spec.copy_rule == CopyRule::HighestPrior) {
            // Capacity mode is prior-agnostic; pick the copy target by the
            // capacity criterion matching the adversary.
            spec.copy_rule = adversary.is_exact() ? CopyRule::MinCapacityExact
                                                  : CopyRule::MinCapacitySDistinguish;
        }
        EvalRow row;
        row.method = spec.name();
        RowStrategy strategy = make_row(spec, channel, s, f, adversary, traffic, options);
        row.status = strategy.diag.status;
        row.projected = strategy.diag.projected;
        if (strategy.diag.status == lp::Status::Optimal) {
            row.q = strategy.q;
            Channel defended = channel.with_row(s, strategy.q);
            try {
                row.capacity = capacity(defended, adversary).value;
            } catch (const InfiniteLeakageError&) {
                row.capacity = std::numeric_limits<double>::infinity();
            }
        } else {
            row.capacity = std::numeric_limits<double>::quiet_NaN();
        }
        rows[cell] = std::move(row);
    });
    return rows;
}

}  // namespace qifrow
