// Microbenchmarks for the hot paths: single-point stage evaluations, the
// oscillatory double quadrature they sit on, and a full profile row.

#include <benchmark/benchmark.h>

#include <complex>

#include "kerr/amplitude.hpp"
#include "kerr/config.hpp"
#include "kerr/derived.hpp"
#include "kerr/probability.hpp"
#include "kerr/profile.hpp"
#include "kerr/quadrature.hpp"

using namespace kerr;

namespace {

const ExperimentConfig& cfg() {
    static const ExperimentConfig c = scenario("fig2").entries[2].cfg;
    return c;
}

const DerivedParams& prm() {
    static const DerivedParams p = derive_params(cfg());
    return p;
}

void bm_box2_phase(benchmark::State& state) {
    const QuadratureRule& rule = gauss_legendre(64);
    for (auto _ : state) {
        QuadResult q = integrate_box2(
            [](double t1, double t2) {
                return std::exp(Complex(0.0, t1 - t2));
            },
            rule);
        benchmark::DoNotOptimize(q.value);
    }
}
BENCHMARK(bm_box2_phase);

void bm_prob_s1_point(benchmark::State& state) {
    const QuadratureRule& rule = gauss_legendre(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        ProbabilityValue v = prob_s1(87.0, cfg(), prm(), rule);
        benchmark::DoNotOptimize(v.value);
    }
}
BENCHMARK(bm_prob_s1_point)->Arg(32)->Arg(64)->Arg(128);

void bm_prob_s2_point(benchmark::State& state) {
    const QuadratureRule& rule = gauss_legendre(64);
    for (auto _ : state) {
        ProbabilityValue v = prob_s2(87.0, cfg(), prm(), rule);
        benchmark::DoNotOptimize(v.value);
    }
}
BENCHMARK(bm_prob_s2_point);

void bm_closed_forms(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        ProbabilityValue a = prob_s3_printed(x, cfg(), prm());
        ProbabilityValue b = prob_s3_reduced(x, cfg(), prm());
        benchmark::DoNotOptimize(a.value + b.value);
        x += 0.37;
        if (x > 1000.0) x = 0.0;
    }
}
BENCHMARK(bm_closed_forms);

void bm_amplitude_s0_origin(benchmark::State& state) {
    const ScreenPoint pt = make_screen_point({0.0, 0.0}, {0.0, 0.0}, prm());
    for (auto _ : state) {
        Amplitude q = amplitude_s0(pt, cfg(), prm(), 1e-6);
        benchmark::DoNotOptimize(q.value);
    }
}
BENCHMARK(bm_amplitude_s0_origin)->Unit(benchmark::kMillisecond);

void bm_scan_profile_row(benchmark::State& state) {
    const QuadratureRule& rule = gauss_legendre(64);
    for (auto _ : state) {
        Profile p = scan_profile(cfg(), prm(), {Stage::S2, Stage::S3Reduced},
                                 {64, 1041.0}, rule, Normalization::PeakUnit,
                                 static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(p.values);
    }
}
BENCHMARK(bm_scan_profile_row)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
