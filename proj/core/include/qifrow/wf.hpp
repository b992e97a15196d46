#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qifrow/feasible.hpp"
#include "qifrow/optimize.hpp"
#include "qifrow/rng.hpp"
#include "qifrow/seb.hpp"

namespace qifrow {

/// Click-depth model of one website: a visitor lands on some depth with the
/// given weight and picks a page uniformly within it; every page has a fixed
/// size in KB.
struct SiteModel {
    Vec depth_weights{0.3, 0.25, 0.2, 0.15, 0.1};
    std::vector<int> pages_per_depth{1, 10, 10, 10, 10};
    ObsId min_size_kb = 1;
    ObsId max_size_kb = 300;
};

/// Page-size distribution of one synthetic site (sizes drawn uniformly from
/// the model's range; duplicate sizes merge).
std::map<ObsId, double> generate_site(const SiteModel& model, Rng& rng);

struct SiteCorpus {
    Channel channel;
    std::map<std::string, Prior> priors;
    std::vector<double> visits;  // per secret, millions; empty when unknown
};

/// Seeded corpus of synthetic sites over the union of their page sizes.
/// Ships with "uniform" and "traffic" priors (traffic from synthetic visit
/// counts). Per-site sampling uses independent substreams, so site i is the
/// same regardless of the corpus size.
SiteCorpus make_synthetic_corpus(std::size_t n_sites, std::uint64_t seed,
                                 const SiteModel& model = {});

/// Prior proportional to visit counts.
Prior traffic_prior(const std::vector<double>& visits);

/// Two-block prior: 0.5 on s, the rest split across the first n other
/// secrets (corpus order) proportionally to their traffic, renormalized.
Prior one_on_n_prior(const std::vector<double>& visits, std::size_t s, std::size_t n);

/// Feasibility described relative to a channel, so evaluation can rebuild it
/// after extending the observable space (the padding base is the defended
/// site's current row).
struct FeasibilitySpec {
    enum class Kind { FullSimplex, NonNegativePadding, LinearSystem };
    Kind kind = Kind::FullSimplex;
    std::vector<RowConstraint> constraints;  // LinearSystem only

    FeasibleSet build(const Channel& channel, std::size_t s) const;
};

struct EvalRow {
    std::string method;
    std::string prior;  // empty in capacity mode
    double leakage = 0.0;
    double posterior_vulnerability = 0.0;
    double capacity = 0.0;
    lp::Status status = lp::Status::Optimal;
    bool projected = false;
    Vec q;  // over the working channel's observables
};

struct EvalOptions {
    int jobs = 1;
    double seb_epsilon = 0.05;
    ObsId pad_block_kb = 5;
    SebOptions seb;
};

/// Per-(method, prior) leakage and posterior vulnerability against the given
/// adversary. When Pad is among the methods the working channel is extended
/// with the padded sizes first (zero columns leave every quantity unchanged).
std::vector<EvalRow> evaluate_fixed_prior(const SiteCorpus& corpus, std::size_t s,
                                          const FeasibilitySpec& feasible,
                                          const Adversary& adversary,
                                          const std::vector<MethodSpec>& methods,
                                          const std::vector<std::string>& prior_names,
                                          const EvalOptions& options = {});

/// Per-method capacity of the defended channel against the given adversary.
std::vector<EvalRow> evaluate_capacity(const SiteCorpus& corpus, std::size_t s,
                                       const FeasibilitySpec& feasible,
                                       const Adversary& adversary,
                                       const std::vector<MethodSpec>& methods,
                                       const EvalOptions& options = {});

/// The working channel evaluate_* would use (observables extended for Pad).
Channel working_channel(const Channel& channel, std::size_t s,
                        const std::vector<MethodSpec>& methods, ObsId pad_block_kb);

struct AttackReport {
    double accuracy = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::uint64_t seed = 0;
    std::string rng_name;
};

/// Simulates the distinguishing attack: samples sites from the attacker's
/// prior, observes page sizes (site s answers through its padding transport
/// when one is given, or directly from the replacement row q), trains an
/// empirical-frequency Bayes classifier on the first 80% of the stream and
/// scores the rest. Fixed seed gives a bit-identical report.
AttackReport simulate_attack(const Channel& channel, std::size_t s, const Vec* q,
                             const PaddingStrategy* transport,
                             const Prior& attacker_prior, std::size_t n_samples,
                             std::uint64_t seed);

}  // namespace qifrow
