#include "qifrow/qif.hpp"

#include <algorithm>
#include <cmath>

#include "qifrow/predicate.hpp"

namespace qifrow {

namespace {

double exact_prior_gain(const Prior& prior) {
    double best = 0.0;
    for (std::size_t s = 0; s < prior.size(); ++s) best = std::max(best, prior[s]);
    return best;
}

double exact_posterior_gain(const Prior& prior, const Channel& channel) {
    double total = 0.0;
    for (std::size_t o = 0; o < channel.num_observables(); ++o) {
        double best = 0.0;
        for (std::size_t s = 0; s < channel.num_secrets(); ++s)
            best = std::max(best, prior[s] * channel.at(s, o));
        total += best;
    }
    return total;
}

double predicate_prior_gain(const Prior& prior, const std::vector<std::size_t>& subset) {
    double in_mass = 0.0;
    for (std::size_t s : subset) in_mass += prior[s];
    return std::max(in_mass, 1.0 - in_mass);
}

}  // namespace

double prior_value(const Prior& prior, const Adversary& adv) {
    validate_adversary(adv, prior.size());
    double gain;
    if (adv.is_exact()) {
        gain = exact_prior_gain(prior);
    } else {
        gain = predicate_prior_gain(prior, adversary_subset(adv));
    }
    return adv.mode == Mode::Gain ? gain : 1.0 - gain;
}

double posterior_value(const Prior& prior, const Channel& channel, const Adversary& adv) {
    if (prior.size() != channel.num_secrets())
        throw ValidationError("posterior_value: prior/channel size mismatch");
    validate_adversary(adv, prior.size());
    double gain;
    if (adv.is_exact()) {
        gain = exact_posterior_gain(prior, channel);
    } else {
        auto [marginal, reduced] = reduce_and_compose(prior, adversary_subset(adv), channel);
        gain = exact_posterior_gain(marginal, reduced);
    }
    return adv.mode == Mode::Gain ? gain : 1.0 - gain;
}

double leakage(const Prior& prior, const Channel& channel, const Adversary& adv) {
    if (adv.mode == Mode::Gain) {
        double before = prior_value(prior, adv);
        double after = posterior_value(prior, channel, adv);
        if (before <= 0.0)
            throw ValidationError("leakage: prior vulnerability is zero");
        return after / before;
    }
    double before = prior_value(prior, adv);
    double after = posterior_value(prior, channel, adv);
    if (before <= 0.0)
        throw ValidationError("leakage: prior risk is zero, leakage undefined");
    if (after <= 0.0)
        throw InfiniteLeakageError("leakage: posterior risk is zero (perfectly revealing)");
    return before / after;
}

CapacityResult capacity(const Channel& channel, const Adversary& adv) {
    const std::size_t n = channel.num_secrets();
    if (n < 2) throw ValidationError("capacity: needs at least two secrets");
    validate_adversary(adv, n);

    if (adv.is_exact()) {
        if (adv.mode == Mode::Gain) {
            double total = 0.0;
            for (std::size_t o = 0; o < channel.num_observables(); ++o) {
                double best = 0.0;
                for (std::size_t s = 0; s < n; ++s) best = std::max(best, channel.at(s, o));
                total += best;
            }
            return {total, Prior::uniform(n)};
        }
        DistanceWitness d = diameter(channel.rows());
        if (d.value >= 2.0 - kStochasticTol)
            throw InfiniteLeakageError("capacity: diameter is 2, loss capacity unbounded");
        return {1.0 / (1.0 - 0.5 * d.value), Prior::two_point(n, d.first, d.second)};
    }

    std::vector<std::size_t> subset = adversary_subset(adv);
    std::vector<bool> in_p(n, false);
    for (std::size_t s : subset) in_p[s] = true;
    std::vector<Vec> rows_p, rows_np;
    std::vector<std::size_t> idx_p, idx_np;
    for (std::size_t s = 0; s < n; ++s) {
        if (in_p[s]) {
            rows_p.push_back(channel.row(s));
            idx_p.push_back(s);
        } else {
            rows_np.push_back(channel.row(s));
            idx_np.push_back(s);
        }
    }
    DistanceWitness d = max_dist(rows_p, rows_np);
    Prior witness = Prior::two_point(n, idx_p[d.first], idx_np[d.second]);
    if (adv.mode == Mode::Gain) return {1.0 + 0.5 * d.value, std::move(witness)};
    if (d.value >= 2.0 - kStochasticTol)
        throw InfiniteLeakageError("capacity: max distance is 2, loss capacity unbounded");
    return {1.0 / (1.0 - 0.5 * d.value), std::move(witness)};
}

}  // namespace qifrow
