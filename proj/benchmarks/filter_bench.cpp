#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "l0lms/filters.hpp"
#include "l0lms/sim.hpp"

namespace {

struct Fixture {
    std::vector<double> x;
    double d;
    Fixture(std::size_t l) : x(l) {
        std::mt19937_64 rng(7);
        std::normal_distribution<double> g(0.0, 1.0);
        for (auto& v : x) v = g(rng);
        d = g(rng);
    }
};

void BM_Step(benchmark::State& state, l0lms::AlgorithmConfig cfg) {
    const std::size_t l = static_cast<std::size_t>(state.range(0));
    Fixture fx(l);
    l0lms::FilterState s(l);
    for (auto _ : state) {
        l0lms::step(s, l0lms::InputTap{fx.x, fx.d}, cfg);
        benchmark::DoNotOptimize(s.w.data());
    }
    state.SetItemsProcessed(state.iterations() * l);
}

void BM_RunTrial(benchmark::State& state) {
    l0lms::TrialConfig cfg;
    cfg.system = l0lms::gen_general_sparse(128, 8, 0.0, 5);
    cfg.signal = {l0lms::SignalKind::white, 1.0, 0.0, false};
    cfg.noise_var = 1e-4;
    cfg.iterations = 2000;
    cfg.algo = {l0lms::Variant::l0lms, 1e-2, 8e-5, 5.0, 4, 1e-5};
    for (auto _ : state) {
        auto curve = l0lms::run_trial(cfg);
        benchmark::DoNotOptimize(curve.msd.data());
    }
    state.SetItemsProcessed(state.iterations() * cfg.iterations * 128);
}

}  // namespace

BENCHMARK_CAPTURE(BM_Step, lms, l0lms::AlgorithmConfig{l0lms::Variant::lms, 1e-3, 0, 5, 1, 1e-5})
    ->Arg(128)->Arg(500);
BENCHMARK_CAPTURE(BM_Step, nlms, l0lms::AlgorithmConfig{l0lms::Variant::nlms, 1e-3, 0, 5, 1, 1e-5})
    ->Arg(128)->Arg(500);
BENCHMARK_CAPTURE(BM_Step, l0lms_q1,
                  l0lms::AlgorithmConfig{l0lms::Variant::l0lms, 1e-3, 8e-5, 5, 1, 1e-5})
    ->Arg(128)->Arg(500);
BENCHMARK_CAPTURE(BM_Step, l0lms_q4,
                  l0lms::AlgorithmConfig{l0lms::Variant::l0lms, 1e-3, 8e-5, 5, 4, 1e-5})
    ->Arg(128)->Arg(500);
BENCHMARK(BM_RunTrial);

BENCHMARK_MAIN();
