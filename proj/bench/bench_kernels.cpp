// Serial reference loops against the OpenMP kernels, same inputs for both.
// Thread count comes from OMP_NUM_THREADS. Times are wall clock since CPU time
// only counts the calling thread.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>

#include "kronlift/kernels.hpp"
#include "kronlift/lift.hpp"
#include "kronlift/recovery.hpp"
#include "kronlift/system_model.hpp"

namespace kl = kronlift;
namespace kk = kronlift::kernels;

namespace {

kl::Matrix random_matrix(Eigen::Index r, Eigen::Index c, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd;
    kl::Matrix m(r, c);
    for (Eigen::Index i = 0; i < m.size(); ++i)
        m.data()[i] = nd(gen);
    return m;
}

kl::Vector random_vector(Eigen::Index n, std::uint64_t seed)
{
    return random_matrix(n, 1, seed).col(0);
}

template <kl::Matrix (*F)(const kl::Matrix&, const kl::Matrix&)>
void bm_hadamard(benchmark::State& state)
{
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const kl::Matrix a = random_matrix(n, n, 1), b = random_matrix(n, n, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(F(a, b));
    state.SetItemsProcessed(state.iterations() * n * n);
}

template <kl::Matrix (*F)(const kl::Matrix&, const kl::Matrix&)>
void bm_kron(benchmark::State& state)
{
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const kl::Matrix a = random_matrix(n, n, 3), b = random_matrix(n, n, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(F(a, b));
    state.SetItemsProcessed(state.iterations() * n * n * n * n);
}

template <kl::Vector (*F)(const kl::Matrix&, const kl::Vector&)>
void bm_quadratic(benchmark::State& state)
{
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const kl::Matrix g = random_matrix(n, n * n, 5);
    const kl::Vector x = random_vector(n, 6);
    for (auto _ : state)
        benchmark::DoNotOptimize(F(g, x));
    state.SetItemsProcessed(state.iterations() * n * n * n);
}

template <kl::Vector (*F)(const kl::Matrix&, const kl::Vector&)>
void bm_cubic(benchmark::State& state)
{
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const kl::Matrix r = random_matrix(n, n * n * n, 7);
    const kl::Vector x = random_vector(n, 8);
    for (auto _ : state)
        benchmark::DoNotOptimize(F(r, x));
    state.SetItemsProcessed(state.iterations() * n * n * n * n);
}

void bm_nullspace_search(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const kl::LiftedSystem lift = kl::build_lifted(kl::random_system(n, 2, 9, kl::draw_root(n, 9)));
    kl::NullSearchOptions opts;
    opts.seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(kl::nullspace_search(lift, opts));
}

} // namespace

BENCHMARK(bm_hadamard<kk::serial::hadamard>)->Name("hadamard/serial")->UseRealTime()->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(bm_hadamard<kk::hadamard>)->Name("hadamard/omp")->UseRealTime()->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(bm_kron<kk::serial::kron>)->Name("kron/serial")->UseRealTime()->RangeMultiplier(2)->Range(8, 64);
BENCHMARK(bm_kron<kk::kron>)->Name("kron/omp")->UseRealTime()->RangeMultiplier(2)->Range(8, 64);
BENCHMARK(bm_quadratic<kk::serial::quadratic_apply>)->Name("quadratic_apply/serial")->UseRealTime()->RangeMultiplier(2)->Range(16, 128);
BENCHMARK(bm_quadratic<kk::quadratic_apply>)->Name("quadratic_apply/omp")->UseRealTime()->RangeMultiplier(2)->Range(16, 128);
BENCHMARK(bm_cubic<kk::serial::cubic_apply>)->Name("cubic_apply/serial")->UseRealTime()->RangeMultiplier(2)->Range(8, 32);
BENCHMARK(bm_cubic<kk::cubic_apply>)->Name("cubic_apply/omp")->UseRealTime()->RangeMultiplier(2)->Range(8, 32);
BENCHMARK(bm_nullspace_search)->Name("nullspace_search")->UseRealTime()->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
