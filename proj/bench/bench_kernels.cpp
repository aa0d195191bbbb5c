// Serial reference against OpenMP kernels on the enumerations behind the acceptance runs.

#include <benchmark/benchmark.h>

#include "scatterforge/construction.hpp"
#include "scatterforge/kernels.hpp"
#include "scatterforge/rank_code.hpp"

using namespace scatterforge;
using kernels::Exec;

namespace {

FqSubspace u_sigma(std::uint32_t q, unsigned m) {
    return construction::build_U_sigma(construction::ConstructionParams::make(Tower::build(q, 1, m), 1));
}

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void BM_PointWeights(benchmark::State& state) {
    const auto U = u_sigma(static_cast<std::uint32_t>(state.range(1)), static_cast<unsigned>(state.range(2)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::point_weights(U, exec_of(state)));
}

void BM_HyperplaneWeights(benchmark::State& state) {
    const auto U = u_sigma(static_cast<std::uint32_t>(state.range(1)), static_cast<unsigned>(state.range(2)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::hyperplane_weights(U, exec_of(state)));
}

void BM_PointMultiplicities(benchmark::State& state) {
    const auto U = u_sigma(static_cast<std::uint32_t>(state.range(1)), static_cast<unsigned>(state.range(2)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::point_multiplicities(U, exec_of(state)));
}

void BM_CodewordWeights(benchmark::State& state) {
    const auto C = rank_code::psi(u_sigma(static_cast<std::uint32_t>(state.range(1)),
                                          static_cast<unsigned>(state.range(2))));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::codeword_weights(C.tower, C.generator, exec_of(state)));
}

void BM_SecantCover(benchmark::State& state) {
    const auto params = construction::ConstructionParams::make(Tower::build(2, 1, 5).with_quadratic_extension(), 1);
    const auto U = construction::build_U_sigma(params);
    std::vector<Vec> pts;
    const ProjectiveSpace PS(U.tower().fqm(), 3);
    const auto mult = kernels::point_multiplicities(U, Exec::serial);
    for (std::uint64_t r = 0; r < mult.size(); ++r)
        if (mult[r] > 0) pts.push_back(PS.point(r));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::secant_cover(U.tower().fq2m(), 3, pts, exec_of(state)));
}

void BM_Minimality(benchmark::State& state) {
    const auto C = rank_code::psi(u_sigma(static_cast<std::uint32_t>(state.range(1)),
                                          static_cast<unsigned>(state.range(2))));
    const Budget budget{std::uint64_t{1} << 32};
    for (auto _ : state) benchmark::DoNotOptimize(rank_code::is_minimal(C, budget, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_PointWeights)->Args({0, 3, 5})->Args({1, 3, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HyperplaneWeights)->Args({0, 3, 5})->Args({1, 3, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PointMultiplicities)->Args({0, 3, 5})->Args({1, 3, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CodewordWeights)->Args({0, 2, 7})->Args({1, 2, 7})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SecantCover)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Minimality)->Args({0, 2, 5})->Args({1, 2, 5})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
