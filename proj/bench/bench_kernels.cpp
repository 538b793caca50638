#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "vi/harness.hpp"
#include "vi/kernels.hpp"
#include "vi/operators.hpp"

namespace {

std::vector<double> random_image(int n) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<double> img(static_cast<std::size_t>(n * n));
    for (auto& v : img) v = U(rng);
    return img;
}

template <bool Parallel>
void BM_convolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto img = random_image(n);
    std::vector<double> out(img.size());
    const auto k = vi::build_gaussian_kernel(5, 1.5);
    for (auto _ : state) {
        if constexpr (Parallel)
            vi::kernels::parallel::convolve_circular(img, n, n, k, vi::kernels::Direction::forward, out);
        else
            vi::kernels::serial::convolve_circular(img, n, n, k, vi::kernels::Direction::forward, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}

template <bool Parallel>
void BM_sweep(benchmark::State& state) {
    const auto p = vi::make_preset("network_51");
    const vi::SweepGrid grid{{0.3332, 0.464}, {0.8, 1.2, 1.6}, {1.21, 1.8}};
    for (auto _ : state) {
        auto cells = Parallel ? vi::sweep(p.problem, grid, p.config, p.stop, p.x0, p.x1)
                              : vi::sweep_serial(p.problem, grid, p.config, p.stop, p.x0, p.x1);
        benchmark::DoNotOptimize(cells.data());
    }
}

void BM_deblur_gradient(benchmark::State& state) {
    const auto p = vi::make_preset("deblur_gaussian_53");
    const vi::Vector x = vi::Vector::Constant(p.problem.dimension, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(p.problem.op(x));
}

}  // namespace

BENCHMARK(BM_convolve<false>)->Name("convolve/serial")->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_convolve<true>)->Name("convolve/openmp")->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_sweep<false>)->Name("sweep/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep<true>)->Name("sweep/openmp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_deblur_gradient)->Name("deblur_gradient/64x64");

BENCHMARK_MAIN();
