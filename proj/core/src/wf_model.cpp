#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qifrow/wf.hpp"

namespace qifrow {

std::map<ObsId, double> generate_site(const SiteModel& model, Rng& rng) {
    if (model.depth_weights.size() != model.pages_per_depth.size() ||
        model.depth_weights.empty())
        throw ValidationError("generate_site: depth weights and page counts must align");
    double sum = 0.0;
    for (double w : model.depth_weights) {
        if (!(w >= 0.0)) throw ValidationError("generate_site: negative depth weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kStochasticTol)
        throw ValidationError("generate_site: depth weights must sum to 1");
    if (model.min_size_kb < 1 || model.max_size_kb < model.min_size_kb)
        throw ValidationError("generate_site: bad size range");

    std::map<ObsId, double> dist;
    for (std::size_t d = 0; d < model.depth_weights.size(); ++d) {
        int pages = model.pages_per_depth[d];
        if (pages < 1) throw ValidationError("generate_site: each depth needs a page");
        double per_page = model.depth_weights[d] / static_cast<double>(pages);
        for (int k = 0; k < pages; ++k) {
            ObsId size = rng.next_int(model.min_size_kb, model.max_size_kb);
            dist[size] += per_page;
        }
    }
    return dist;
}

SiteCorpus make_synthetic_corpus(std::size_t n_sites, std::uint64_t seed,
                                 const SiteModel& model) {
    if (n_sites < 2) throw ValidationError("make_synthetic_corpus: need at least two sites");

    std::vector<std::map<ObsId, double>> sites(n_sites);
    std::set<ObsId> sizes;
    for (std::size_t i = 0; i < n_sites; ++i) {
        Rng rng = Rng::stream(seed, i);
        sites[i] = generate_site(model, rng);
        for (const auto& [size, p] : sites[i]) sizes.insert(size);
    }

    std::vector<ObsId> observables(sizes.begin(), sizes.end());
    std::vector<std::string> names(n_sites);
    std::vector<Vec> rows(n_sites, Vec(observables.size(), 0.0));
    for (std::size_t i = 0; i < n_sites; ++i) {
        std::ostringstream name;
        name << "site" << (i < 10 ? "0" : "") << i;
        names[i] = name.str();
        for (const auto& [size, p] : sites[i]) {
            auto it = std::lower_bound(observables.begin(), observables.end(), size);
            rows[i][static_cast<std::size_t>(it - observables.begin())] = p;
        }
    }

    SiteCorpus corpus{Channel(std::move(names), std::move(observables), std::move(rows)), {}, {}};
    corpus.visits.resize(n_sites);
    for (std::size_t i = 0; i < n_sites; ++i) {
        Rng rng = Rng::stream(seed, 0x5649534954ull + i);  // separate visit stream
        // Monthly visits in millions, log-uniform over ~0.01 .. 30.
        corpus.visits[i] = std::round(1000.0 * 0.01 * std::pow(10.0, 3.5 * rng.next_double())) / 1000.0;
    }
    corpus.priors.emplace("uniform", Prior::uniform(n_sites));
    corpus.priors.emplace("traffic", traffic_prior(corpus.visits));
    return corpus;
}

Prior traffic_prior(const std::vector<double>& visits) {
    double total = 0.0;
    for (double v : visits) {
        if (!(v >= 0.0)) throw ValidationError("traffic_prior: negative visits");
        total += v;
    }
    if (total <= 0.0) throw ValidationError("traffic_prior: no visits at all");
    Vec p(visits.size());
    for (std::size_t i = 0; i < visits.size(); ++i) p[i] = visits[i] / total;
    return Prior(std::move(p));
}

Prior one_on_n_prior(const std::vector<double>& visits, std::size_t s, std::size_t n) {
    if (s >= visits.size()) throw ValidationError("one_on_n_prior: secret out of range");
    if (n == 0 || n >= visits.size())
        throw ValidationError("one_on_n_prior: n must be in [1, secrets-1]");
    Vec p(visits.size(), 0.0);
    p[s] = 0.5;
    double total = 0.0;
    std::size_t taken = 0;
    for (std::size_t t = 0; t < visits.size() && taken < n; ++t) {
        if (t == s) continue;
        total += visits[t];
        ++taken;
    }
    if (total <= 0.0) throw ValidationError("one_on_n_prior: selected sites have no traffic");
    taken = 0;
    for (std::size_t t = 0; t < visits.size() && taken < n; ++t) {
        if (t == s) continue;
        p[t] = 0.5 * visits[t] / total;
        ++taken;
    }
    return Prior(std::move(p));
}

}  // namespace qifrow
