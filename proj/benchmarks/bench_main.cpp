#include "slicevol/functionals.hpp"
#include "slicevol/oracle.hpp"
#include "slicevol/sampling.hpp"
#include "slicevol/starbody.hpp"

#include <benchmark/benchmark.h>

#include <limits>

using namespace slicevol;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

StarBody make_body(int kind) {
    switch (kind) {
    case 0: return StarBody::ball(AlgebraKind::Complex, 2, 1.0);
    case 1: return StarBody::polydisc(AlgebraKind::Complex, {1.0, 2.0});
    case 2: {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
        a.diagonal() << 4.0, 4.0, 1.0, 1.0;
        return StarBody::ellipsoid(AlgebraKind::Complex, a);
    }
    case 3: return StarBody::lp_ball(AlgebraKind::Complex, 2, kInf, 1.0);
    default:
        return StarBody::radial_perturbation(StarBody::ball(AlgebraKind::Complex, 2, 1.0), 0.1,
                                             "re_block1_sq");
    }
}

QuadratureSpec bench_spec(std::size_t n) {
    QuadratureSpec spec;
    spec.sphere_samples = n;
    spec.seed = 1;
    return spec;
}

void BM_radial(benchmark::State& state) {
    const StarBody body = make_body(static_cast<int>(state.range(0)));
    const auto dirs = sample_sphere(body.algebra(), body.blocks(), 1024, 7);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(body.radial(dirs[i]));
        i = (i + 1) & 1023;
    }
}
BENCHMARK(BM_radial)->DenseRange(0, 4)->Unit(benchmark::kNanosecond);

void BM_slice_measure(benchmark::State& state) {
    const StarBody cube = make_body(3);
    const auto dirs = sample_sphere(AlgebraKind::Complex, 2, 64, 11);
    const QuadratureSpec spec = bench_spec(1);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(slice_measure(cube, dirs[i], spec).value);
        i = (i + 1) & 63;
    }
}
BENCHMARK(BM_slice_measure)->Unit(benchmark::kMicrosecond);

void BM_volume_polar(benchmark::State& state) {
    const StarBody cube = make_body(3);
    const QuadratureSpec spec = bench_spec(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(volume_polar(cube, spec).value);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_volume_polar)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

void BM_defect_pipeline(benchmark::State& state) {
    const StarBody cube = make_body(3);
    const QuadratureSpec spec = bench_spec(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(circularity_defect(cube, spec).defect.value);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_defect_pipeline)->RangeMultiplier(4)->Range(1 << 8, 1 << 12)->Complexity();

void BM_sample_sphere(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_sphere(AlgebraKind::Quaternion, 2,
                                               static_cast<std::size_t>(state.range(0)), 3));
}
BENCHMARK(BM_sample_sphere)->Range(1 << 8, 1 << 14);

void BM_rejection_volume(benchmark::State& state) {
    const StarBody body = make_body(1);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            mc_volume_rejection(body, static_cast<std::size_t>(state.range(0)), 5).value);
}
BENCHMARK(BM_rejection_volume)->Range(1 << 10, 1 << 14);

} // namespace

BENCHMARK_MAIN();
