#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qifrow/seb.hpp"
#include "qifrow/wf.hpp"

namespace qifrow {

struct BenchRow {
    std::string experiment;  // vary-sites | vary-observables
    std::size_t n_secrets = 0;
    std::size_t n_observables = 0;
    std::string method;
    double seconds = 0.0;
    double value = 0.0;  // capacity for SEB methods, LP objective otherwise
};

struct BenchConfig {
    std::vector<std::size_t> sites_list{25, 50, 100, 200};  // vary-sites sweep
    ObsId obs_cap = 12;              // size range for the vary-sites sweep
    std::vector<ObsId> obs_list{};    // vary-observables sweep (empty = skip)
    std::size_t sites_fixed = 20;     // corpus size for the vary-observables sweep
    double epsilon = 0.05;
    std::uint64_t seed = 1;
    bool padding = true;              // non-negative padding vs full simplex
    SebOptions seb;
};

/// Runtime/quality sweeps over synthetic corpora: SEB exact vs approx (and
/// the embedding route where its cap allows) as the site count grows, and
/// the fixed-prior/capacity programs as the observable count grows.
std::vector<BenchRow> bench_seb(const BenchConfig& config);

void save_bench(const std::vector<BenchRow>& rows, const std::string& path);

}  // namespace qifrow
