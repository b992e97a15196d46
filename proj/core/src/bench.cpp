#include "qifrow/bench.hpp"

#include <chrono>
#include <fstream>

#include "qifrow/io.hpp"

namespace qifrow {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

FeasibilitySpec spec_for(bool padding) {
    FeasibilitySpec f;
    f.kind = padding ? FeasibilitySpec::Kind::NonNegativePadding
                     : FeasibilitySpec::Kind::FullSimplex;
    return f;
}

}  // namespace

std::vector<BenchRow> bench_seb(const BenchConfig& config) {
    std::vector<BenchRow> rows;
    const std::size_t s = 0;

    for (std::size_t n_sites : config.sites_list) {
        SiteModel model;
        model.max_size_kb = config.obs_cap;
        SiteCorpus corpus = make_synthetic_corpus(n_sites, config.seed, model);
        const Channel& channel = corpus.channel;
        FeasibleSet f = spec_for(config.padding).build(channel, s);
        const std::size_t m = channel.num_observables();

        {
            auto t0 = Clock::now();
            SebSolution exact =
                seb_l1_exact(channel.rows_except(s), f, config.seb);
            rows.push_back({"vary-sites", n_sites, m, "seb-exact", seconds_since(t0),
                            1.0 + 0.5 * exact.radius});
        }
        if (m <= 12) {
            auto t0 = Clock::now();
            SebSolution embed = seb_l1_embedding(channel.rows_except(s), f);
            rows.push_back({"vary-sites", n_sites, m, "seb-embed", seconds_since(t0),
                            1.0 + 0.5 * embed.radius});
        }
        {
            auto t0 = Clock::now();
            RowStrategy approx = capacity_optimal_sdist(channel, s, f, SebMethod::Approx,
                                                        config.epsilon, config.seb);
            rows.push_back({"vary-sites", n_sites, m, "seb-approx", seconds_since(t0),
                            approx.diag.objective});
        }
    }

    for (ObsId obs_cap : config.obs_list) {
        SiteModel model;
        model.max_size_kb = obs_cap;
        SiteCorpus corpus = make_synthetic_corpus(config.sites_fixed, config.seed, model);
        const Channel& channel = corpus.channel;
        FeasibleSet f = spec_for(config.padding).build(channel, s);
        const std::size_t m = channel.num_observables();
        const Prior& uniform = corpus.priors.at("uniform");

        {
            auto t0 = Clock::now();
            RowStrategy r = optimal_fixed_prior(uniform, channel, s, f,
                                                Adversary::exact_guess());
            rows.push_back({"vary-observables", config.sites_fixed, m,
                            "optimal-fixed-prior", seconds_since(t0), r.diag.objective});
        }
        {
            auto t0 = Clock::now();
            RowStrategy r = optimal_capacity_exact(channel, s, f);
            rows.push_back({"vary-observables", config.sites_fixed, m, "optimal-capacity",
                            seconds_since(t0), r.diag.objective});
        }
        {
            auto t0 = Clock::now();
            RowStrategy r = capacity_optimal_sdist(channel, s, f, SebMethod::Approx,
                                                   config.epsilon, config.seb);
            rows.push_back({"vary-observables", config.sites_fixed, m, "seb-approx",
                            seconds_since(t0), r.diag.objective});
        }
    }
    return rows;
}

void save_bench(const std::vector<BenchRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "experiment,n_secrets,n_observables,method,seconds,value\n";
    for (const BenchRow& r : rows)
        out << r.experiment << ',' << r.n_secrets << ',' << r.n_observables << ','
            << r.method << ',' << format_g12(r.seconds) << ',' << format_g12(r.value)
            << '\n';
}

}  // namespace qifrow
