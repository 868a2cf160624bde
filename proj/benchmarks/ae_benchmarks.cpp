#include <benchmark/benchmark.h>

#include "ae/ae_solver.hpp"
#include "ae/decision_engine.hpp"
#include "ae/forward_map.hpp"
#include "ae/synthesis.hpp"

namespace {

using namespace ae;

PatternCounts reference_counts() {
    return PatternCounts::from_canonical({568, 553, 649, 1813, 3534, 3607, 1068, 8208});
}

RationalPoint reference_point() {
    RationalPoint point;
    point.p_a = Rational(3, 10);
    point.pi = {{{Rational(7, 10), Rational(8, 10)},
                 {Rational(6, 10), Rational(7, 10)},
                 {Rational(8, 10), Rational(9, 10)}}};
    return point;
}

void BM_evaluate_exact(benchmark::State& state) {
    const PatternCounts counts = reference_counts();
    for (auto _ : state) {
        const AeSolution solution = evaluate(counts);
        benchmark::DoNotOptimize(solution.selected);
    }
}
BENCHMARK(BM_evaluate_exact);

void BM_forward_map_rational(benchmark::State& state) {
    const RationalPoint point = reference_point();
    for (auto _ : state) {
        const auto freqs = pattern_probabilities<Rational>(point);
        benchmark::DoNotOptimize(freqs[0]);
    }
}
BENCHMARK(BM_forward_map_rational);

void BM_forward_map_bigfloat(benchmark::State& state) {
    const FloatPoint point = to_float_point(reference_point());
    for (auto _ : state) {
        const auto freqs = pattern_probabilities<BigFloat>(point);
        benchmark::DoNotOptimize(freqs[0]);
    }
}
BENCHMARK(BM_forward_map_bigfloat);

void BM_sample_independent_20k(benchmark::State& state) {
    const RationalPoint point = reference_point();
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const SampleResult sample = sample_independent(point, 20000, seed++);
        benchmark::DoNotOptimize(sample.by_label.a[0]);
    }
}
BENCHMARK(BM_sample_independent_20k);

void BM_compare_methods_20k(benchmark::State& state) {
    const SampleResult sample = sample_independent(reference_point(), 20000, 7);
    for (auto _ : state) {
        const ComparisonReport report = compare_methods(sample.by_label);
        benchmark::DoNotOptimize(report.mv_errors.total);
    }
}
BENCHMARK(BM_compare_methods_20k);

}  // namespace

BENCHMARK_MAIN();
