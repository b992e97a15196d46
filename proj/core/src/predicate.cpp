#include "qifrow/predicate.hpp"

#include <algorithm>

namespace qifrow {

namespace {

std::vector<bool> membership_mask(const std::vector<std::size_t>& p, std::size_t n) {
    if (p.empty()) throw ValidationError("predicate: empty subset");
    std::vector<bool> in_p(n, false);
    for (std::size_t s : p) {
        if (s >= n) throw ValidationError("predicate: secret out of range");
        if (in_p[s]) throw ValidationError("predicate: duplicate secret in subset");
        in_p[s] = true;
    }
    std::size_t count = static_cast<std::size_t>(std::count(in_p.begin(), in_p.end(), true));
    if (count == n) throw ValidationError("predicate: subset must be proper");
    return in_p;
}

}  // namespace

PredicateFactorization factorize(const Prior& prior, const std::vector<std::size_t>& p) {
    const std::size_t n = prior.size();
    std::vector<bool> in_p = membership_mask(p, n);

    PredicateFactorization f;
    f.marginal.assign(2, 0.0);
    for (std::size_t s = 0; s < n; ++s) f.marginal[in_p[s] ? 0 : 1] += prior[s];

    f.conditional.assign(2, Vec(n, 0.0));
    for (int w = 0; w < 2; ++w) {
        bool want = (w == 0);
        if (f.marginal[w] > 0.0) {
            for (std::size_t s = 0; s < n; ++s)
                if (in_p[s] == want) f.conditional[w][s] = prior[s] / f.marginal[w];
        } else {
            std::size_t class_size = 0;
            for (std::size_t s = 0; s < n; ++s)
                if (in_p[s] == want) ++class_size;
            for (std::size_t s = 0; s < n; ++s)
                if (in_p[s] == want)
                    f.conditional[w][s] = 1.0 / static_cast<double>(class_size);
        }
    }
    return f;
}

std::pair<Prior, Channel> reduce_and_compose(const Prior& prior,
                                             const std::vector<std::size_t>& p,
                                             const Channel& channel) {
    if (prior.size() != channel.num_secrets())
        throw ValidationError("reduce_and_compose: prior/channel size mismatch");
    PredicateFactorization f = factorize(prior, p);

    const std::size_t m = channel.num_observables();
    std::vector<Vec> composed(2, Vec(m, 0.0));
    for (int w = 0; w < 2; ++w)
        for (std::size_t s = 0; s < prior.size(); ++s) {
            double c = f.conditional[w][s];
            if (c == 0.0) continue;
            const Vec& row = channel.row(s);
            for (std::size_t o = 0; o < m; ++o) composed[w][o] += c * row[o];
        }

    Channel reduced({"P", "not_P"}, channel.observable_ids(), std::move(composed));
    return {Prior(f.marginal), std::move(reduced)};
}

Vec average_other_row(const Prior& prior, const Channel& channel, std::size_t s) {
    if (prior.size() != channel.num_secrets())
        throw ValidationError("average_other_row: prior/channel size mismatch");
    if (s >= prior.size()) throw ValidationError("average_other_row: secret out of range");
    double rest = 1.0 - prior[s];
    if (rest <= 0.0)
        throw ValidationError("average_other_row: prior puts all mass on s");

    Vec q(channel.num_observables(), 0.0);
    for (std::size_t t = 0; t < channel.num_secrets(); ++t) {
        if (t == s) continue;
        double w = prior[t] / rest;
        if (w == 0.0) continue;
        const Vec& row = channel.row(t);
        for (std::size_t o = 0; o < q.size(); ++o) q[o] += w * row[o];
    }
    return q;
}

}  // namespace qifrow
