#include <cmath>

#include "qifrow/metric.hpp"
#include "qifrow/wf.hpp"

namespace qifrow {

AttackReport simulate_attack(const Channel& channel, std::size_t s, const Vec* q,
                             const PaddingStrategy* transport,
                             const Prior& attacker_prior, std::size_t n_samples,
                             std::uint64_t seed) {
    if ((q == nullptr) == (transport == nullptr))
        throw ValidationError("simulate_attack: pass exactly one of a row or a transport");
    if (s >= channel.num_secrets())
        throw ValidationError("simulate_attack: secret out of range");
    if (attacker_prior.size() != channel.num_secrets())
        throw ValidationError("simulate_attack: prior/channel size mismatch");
    if (n_samples < 1000)
        throw ValidationError("simulate_attack: need at least 1000 samples");
    if (q && q->size() != channel.num_observables())
        throw ValidationError("simulate_attack: row arity mismatch");

    // Pre-normalize the transport rows the defended site will answer from.
    std::vector<Vec> padded_rows;
    if (transport) {
        if (transport->observables != channel.observable_ids())
            throw ValidationError("simulate_attack: transport observables mismatch");
        if (l1_distance(transport->base(), channel.row(s)) > 1e-6)
            throw ValidationError(
                "simulate_attack: transport base must match the site's original row");
        for (std::size_t o = 0; o < transport->transport.size(); ++o)
            for (std::size_t o2 = 0; o2 < o; ++o2)
                if (transport->transport[o][o2] != 0.0)
                    throw ValidationError("simulate_attack: transport moves mass downward");
        padded_rows.resize(channel.num_observables());
        const Vec& q_hat = channel.row(s);
        for (std::size_t o = 0; o < q_hat.size(); ++o)
            if (q_hat[o] > 0.0) padded_rows[o] = transport->row_distribution(o);
    }

    Rng rng(seed);
    struct Sample {
        std::size_t obs;
        bool is_s;
    };
    std::vector<Sample> samples;
    samples.reserve(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
        std::size_t site = rng.sample(attacker_prior.probs());
        std::size_t obs;
        if (site != s) {
            obs = rng.sample(channel.row(site));
        } else if (q) {
            obs = rng.sample(*q);
        } else {
            std::size_t requested = rng.sample(channel.row(s));
            obs = requested + rng.sample(std::span<const double>(padded_rows[requested])
                                             .subspan(requested));
            if (obs < requested)
                throw ValidationError("simulate_attack: transport moved mass downward");
        }
        samples.push_back({obs, site == s});
    }

    const std::size_t n_train = (n_samples * 8) / 10;
    const std::size_t n_test = n_samples - n_train;
    if (n_train == 0 || n_test == 0)
        throw ValidationError("simulate_attack: degenerate train/test split");

    // Empirical-frequency Bayes classifier on the single size feature:
    // predict s iff the training joint count for (s, size) strictly exceeds
    // the count for (not-s, size); ties and unseen sizes go to not-s.
    std::vector<std::size_t> count_s(channel.num_observables(), 0);
    std::vector<std::size_t> count_other(channel.num_observables(), 0);
    for (std::size_t k = 0; k < n_train; ++k) {
        if (samples[k].is_s)
            ++count_s[samples[k].obs];
        else
            ++count_other[samples[k].obs];
    }

    std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
    for (std::size_t k = n_train; k < n_samples; ++k) {
        bool predict_s = count_s[samples[k].obs] > count_other[samples[k].obs];
        if (samples[k].is_s) {
            predict_s ? ++tp : ++fn;
        } else {
            predict_s ? ++fp : ++tn;
        }
    }

    AttackReport report;
    report.n_train = n_train;
    report.n_test = n_test;
    report.seed = seed;
    report.rng_name = Rng::kName;
    report.accuracy = static_cast<double>(tp + tn) / static_cast<double>(n_test);
    report.recall = (tp + fn) ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    double precision = (tp + fp) ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    report.f1 = (precision + report.recall > 0.0)
                    ? 2.0 * precision * report.recall / (precision + report.recall)
                    : 0.0;
    return report;
}

}  // namespace qifrow
