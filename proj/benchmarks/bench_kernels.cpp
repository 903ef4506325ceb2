// Serial-reference vs OpenMP-parallel comparison of the batch kernels.
// Run: ./bench_kernels [--benchmark_filter=...]

#include "skelscore/boundedness.hpp"
#include "skelscore/centeredness.hpp"
#include "skelscore/smoothness.hpp"
#include "skelscore/synthetic.hpp"
#include "skelscore/topology.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace skelscore;

SyntheticShape make_shape(std::size_t n) {
    ShapeParams params;
    params.radius = 0.35;
    params.neck_radius = 0.12;
    params.length = 1.2;
    return generate(ShapeKind::Dumbbell, params, n, 1);
}

void BM_H0Barcode(benchmark::State& state, Execution exec) {
    const auto shape = make_shape(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto barcode = h0_barcode(shape.cloud, 1.6, exec);
        benchmark::DoNotOptimize(barcode);
    }
}

void BM_Boundedness(benchmark::State& state, Execution exec) {
    const auto shape = make_shape(1024);
    SkeletalPointSet queries;
    for (std::size_t i = 0; i < static_cast<std::size_t>(state.range(0)); ++i)
        queries.points.push_back(0.5 * shape.cloud[i * 3]);
    queries.correspondence.assign(queries.points.size(), 0);
    BoundednessOptions options;
    options.exec = exec;
    for (auto _ : state) {
        auto overall = overall_boundedness_points(queries, shape.cloud, options);
        benchmark::DoNotOptimize(overall);
    }
}

void BM_Centeredness(benchmark::State& state, Execution exec) {
    const auto shape = make_shape(static_cast<std::size_t>(state.range(0)));
    SkeletalPointSet identity;
    identity.points = shape.cloud.points;
    CenterednessOptions options;
    options.exec = exec;
    for (auto _ : state) {
        auto scores = score_skeletal_centeredness(identity, shape.cloud, options);
        benchmark::DoNotOptimize(scores);
    }
}

void BM_Smoothness(benchmark::State& state, Execution exec) {
    const auto shape = make_shape(static_cast<std::size_t>(state.range(0)));
    SkeletalPointSet identity;
    identity.points = shape.cloud.points;
    SmoothnessOptions options;
    options.exec = exec;
    for (auto _ : state) {
        auto scores = score_point_smoothness(identity, options);
        benchmark::DoNotOptimize(scores);
    }
}

}  // namespace

BENCHMARK_CAPTURE(BM_H0Barcode, serial, Execution::Serial)->Arg(1024)->Arg(4096);
BENCHMARK_CAPTURE(BM_H0Barcode, parallel, Execution::Parallel)->Arg(1024)->Arg(4096);
BENCHMARK_CAPTURE(BM_Boundedness, serial, Execution::Serial)->Arg(64)->Arg(256);
BENCHMARK_CAPTURE(BM_Boundedness, parallel, Execution::Parallel)->Arg(64)->Arg(256);
BENCHMARK_CAPTURE(BM_Centeredness, serial, Execution::Serial)->Arg(4096);
BENCHMARK_CAPTURE(BM_Centeredness, parallel, Execution::Parallel)->Arg(4096);
BENCHMARK_CAPTURE(BM_Smoothness, serial, Execution::Serial)->Arg(4096);
BENCHMARK_CAPTURE(BM_Smoothness, parallel, Execution::Parallel)->Arg(4096);

BENCHMARK_MAIN();
