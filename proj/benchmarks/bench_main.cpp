#include <benchmark/benchmark.h>

#include "qifrow/metric.hpp"
#include "qifrow/qif.hpp"
#include "qifrow/rng.hpp"
#include "qifrow/seb.hpp"
#include "qifrow/wf.hpp"

using namespace qifrow;

namespace {

std::vector<Vec> random_points(std::size_t n, std::size_t m, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Vec> points(n, Vec(m));
    for (Vec& p : points) {
        double sum = 0.0;
        for (double& x : p) {
            x = rng.next_double() + 1e-6;
            sum += x;
        }
        for (double& x : p) x /= sum;
    }
    return points;
}

void BM_L1Distance(benchmark::State& state) {
    auto points = random_points(2, static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(l1_distance(points[0], points[1]));
}
BENCHMARK(BM_L1Distance)->RangeMultiplier(4)->Range(16, 1024);

void BM_ExactCapacity(benchmark::State& state) {
    auto points = random_points(static_cast<std::size_t>(state.range(0)), 64, 2);
    std::vector<std::string> names;
    std::vector<ObsId> obs;
    for (std::size_t i = 0; i < points.size(); ++i) names.push_back("s" + std::to_string(i));
    for (std::size_t o = 0; o < 64; ++o) obs.push_back(static_cast<ObsId>(o + 1));
    Channel channel(names, obs, points);
    for (auto _ : state)
        benchmark::DoNotOptimize(capacity(channel, Adversary::exact_guess()).value);
}
BENCHMARK(BM_ExactCapacity)->RangeMultiplier(2)->Range(8, 64);

void BM_SebApprox(benchmark::State& state) {
    auto points = random_points(static_cast<std::size_t>(state.range(0)), 64, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(seb_l2_approx(points, 0.05).second);
}
BENCHMARK(BM_SebApprox)->RangeMultiplier(2)->Range(16, 256);

void BM_SebExactLp(benchmark::State& state) {
    auto points = random_points(static_cast<std::size_t>(state.range(0)), 12, 4);
    FeasibleSet simplex = FeasibleSet::full_simplex();
    for (auto _ : state)
        benchmark::DoNotOptimize(seb_l1_exact(points, simplex).radius);
}
BENCHMARK(BM_SebExactLp)->Unit(benchmark::kMillisecond)->RangeMultiplier(2)->Range(8, 64);

}  // namespace

BENCHMARK_MAIN();
