#include <benchmark/benchmark.h>

#include "pet/averaging.hpp"
#include "pet/instances.hpp"
#include "pet/random.hpp"
#include "pet/sequence.hpp"

namespace {

using pet::LamplighterElement;

void BM_LamplighterMul(benchmark::State& state) {
  pet::Rng rng(1);
  std::vector<LamplighterElement> elems;
  for (int i = 0; i < 64; ++i)
    elems.push_back(pet::random_lamplighter(rng, static_cast<int>(state.range(0)), 50));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mul(elems[i % 64], elems[(i + 1) % 64]));
    ++i;
  }
}
BENCHMARK(BM_LamplighterMul)->Arg(4)->Arg(16);

void BM_QuadraticRecurrenceEval(benchmark::State& state) {
  const std::int64_t j = state.range(0);
  for (auto _ : state) {
    auto seq = pet::canonical_wreath_sequence();
    benchmark::DoNotOptimize(seq(j));
  }
  state.SetComplexityN(j);
}
BENCHMARK(BM_QuadraticRecurrenceEval)->Arg(64)->Arg(512)->Arg(4096);

void BM_ClosedFormEval(benchmark::State& state) {
  const std::int64_t j = state.range(0);
  auto a = LamplighterElement::alpha(0);
  auto b = LamplighterElement::beta();
  for (auto _ : state)
    benchmark::DoNotOptimize(pet::quadratic_closed_form(a, b, LamplighterElement(), j));
}
BENCHMARK(BM_ClosedFormEval)->Arg(64)->Arg(512);

void BM_RegularRepresentation(benchmark::State& state) {
  pet::FiniteWreathElement g(2, 3, {1, 0, 1}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(pet::regular_representation(g));
}
BENCHMARK(BM_RegularRepresentation);

void BM_DegreeCheckCanonical(benchmark::State& state) {
  auto seq = pet::canonical_wreath_sequence();
  const int window = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(pet::degree_upper_check(seq, 2, window, 50'000'000));
}
BENCHMARK(BM_DegreeCheckCanonical)->Arg(3)->Arg(5);

void BM_AverageSweep(benchmark::State& state) {
  pet::Rng rng(2);
  pet::AbelianOrthogonalInstance inst = pet::random_abelian_degree2(rng, 6, 6);
  pet::UnitaryAction act(
      pet::GroupSequence<pet::OrthogonalOperator>::abelian_binomial(inst.generators));
  Eigen::VectorXd x = pet::random_unit_vector(rng, inst.dim);
  for (auto _ : state) {
    pet::AverageSweep sweep(act, x);
    Eigen::VectorXd v;
    for (std::int64_t n = 0; n <= state.range(0); ++n) v = sweep.next();
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AverageSweep)->Arg(256)->Arg(2048);

void BM_SpectralNorm(benchmark::State& state) {
  pet::Rng rng(3);
  const int d = static_cast<int>(state.range(0));
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(pet::spectral_norm(a));
}
BENCHMARK(BM_SpectralNorm)->Arg(6)->Arg(24)->Arg(96);

void BM_FolnerDefectBoxes(benchmark::State& state) {
  pet::FolnerNet boxes = pet::FolnerNet::zd_boxes(2);
  pet::IntPoint g({1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(boxes.defect(state.range(0), g));
}
BENCHMARK(BM_FolnerDefectBoxes)->Arg(20)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
