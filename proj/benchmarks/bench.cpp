#include <benchmark/benchmark.h>

#include <random>

#include "capit/census.hpp"
#include "capit/cohomology.hpp"
#include "capit/matrix.hpp"
#include "capit/transfer.hpp"

using namespace capit;

namespace {

Mat random_mat(std::size_t rows, std::size_t cols, int bound, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(-bound, bound);
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

ExtensionGroup quaternion_like() {
  GAction inv(FiniteAbelianGroup({2}), FiniteAbelianGroup({8}),
              {[] {
                IMat m(1, 1);
                m(0, 0) = 7;
                return m;
              }()});
  return enumerate_extensions(inv).at(1);
}

}  // namespace

static void BM_snf_small(benchmark::State& state) {
  Mat m = random_mat(8, 8, 20, 42);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_snf_small);

static void BM_snf_presentation_shape(benchmark::State& state) {
  // the shape from_presentation feeds: many small-entry relation rows plus
  // the diagonal annihilator block, reduced modulo the group exponent
  const std::size_t gens = 64, rel = 128;
  const int exponent = 64;
  Mat m = random_mat(gens, rel + gens, 8, 7);
  for (std::size_t i = 0; i < gens; ++i)
    for (std::size_t j = 0; j < gens; ++j)
      m(i, rel + j) = i == j ? exponent : 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(smith_normal_form(
        m, {.col_transforms = false, .modulus = exponent}));
}
BENCHMARK(BM_snf_presentation_shape);

static void BM_h2_order16_group(benchmark::State& state) {
  GAction act = GAction::trivial(FiniteAbelianGroup({16}), FiniteAbelianGroup({4}));
  for (auto _ : state) benchmark::DoNotOptimize(cohomology(act, 2));
}
BENCHMARK(BM_h2_order16_group)->Unit(benchmark::kMillisecond);

static void BM_h1_swap_action(benchmark::State& state) {
  IMat swap(2, 2);
  swap(0, 1) = 1;
  swap(1, 0) = 1;
  GAction act(FiniteAbelianGroup({2}), FiniteAbelianGroup({2, 2}), {swap});
  for (auto _ : state) benchmark::DoNotOptimize(cohomology(act, 1));
}
BENCHMARK(BM_h1_swap_action);

static void BM_check_extension_light(benchmark::State& state) {
  ExtensionGroup ext = quaternion_like();
  ExtensionCheckOptions opt;
  opt.intermediate_subgroups = false;
  opt.cocycle_checks = false;
  for (auto _ : state) benchmark::DoNotOptimize(check_extension(ext, opt));
}
BENCHMARK(BM_check_extension_light);

static void BM_check_extension_full(benchmark::State& state) {
  ExtensionGroup ext = quaternion_like();
  for (auto _ : state) benchmark::DoNotOptimize(check_extension(ext));
}
BENCHMARK(BM_check_extension_full)->Unit(benchmark::kMillisecond);

static void BM_transfer_kernel(benchmark::State& state) {
  ExtensionGroup ext = quaternion_like();
  for (auto _ : state) benchmark::DoNotOptimize(transfer_kernel(ext));
}
BENCHMARK(BM_transfer_kernel);

BENCHMARK_MAIN();
