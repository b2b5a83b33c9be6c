// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "bicmlab/capacity.hpp"
#include "bicmlab/enumeration.hpp"
#include "bicmlab/shaping.hpp"

namespace {

using namespace bicm;

std::vector<double> snr_grid() {
    std::vector<double> s;
    for (int i = 0; i < 32; ++i) s.push_back(std::pow(10.0, (-10.0 + i) / 10.0));
    return s;
}

void BM_CapacityCurve(benchmark::State& state) {
    const Constellation c(psk(8), generate(LabelingKind::BRGC, 3));
    const auto snrs = snr_grid();
    const QuadratureSpec q;
    for (auto _ : state) {
        auto r = state.range(0) ? capacity_curve(CapacityMode::BICM, c, snrs, FadingModel::awgn(), q)
                                : capacity_curve_serial(CapacityMode::BICM, c, snrs, FadingModel::awgn(), q);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_CapacityCurve)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Census(benchmark::State& state) {
    const InputAlphabet x = pam(8);
    for (auto _ : state) {
        auto r = state.range(0) ? classify_labelings(x) : classify_labelings_serial(x);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_Census)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Shaping(benchmark::State& state) {
    const InputAlphabet x = pam(8);
    const Labeling l = generate(LabelingKind::BRGC, 3);
    const QuadratureSpec q;
    ShapingOptions o;
    o.grid_step = 0.05;
    o.coarse_step = 0.25;
    for (auto _ : state) {
        auto r = state.range(0) ? optimize_bit_pmfs(x, l, 1.0, FadingModel::awgn(), q, o)
                                : optimize_bit_pmfs_serial(x, l, 1.0, FadingModel::awgn(), q, o);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_Shaping)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
