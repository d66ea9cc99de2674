// Serial reference vs OpenMP path for the parallel kernels.

#include <benchmark/benchmark.h>

#include "krg/torus.hpp"
#include "krg/verifier.hpp"

using namespace krg;

namespace {

void BM_TorusTopForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const bool parallel = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(torus_top_form(n, InvolutionKind::SigmaR, parallel));
  state.SetLabel(parallel ? "openmp" : "serial");
}
BENCHMARK(BM_TorusTopForm)->ArgsProduct({{4, 6, 8}, {0, 1}})->Unit(benchmark::kMillisecond);

const KRPresentation& presentation() {
  static const KRPresentation p = [] {
    LieGroup g(GroupSpec::parse("SU4"));
    return KRPresentation(TypeContext(g, Involution::uniform(g.root_data(), InvolutionKind::SigmaH)), 20);
  }();
  return p;
}

void BM_VerifySquares(benchmark::State& state) {
  VerifyOptions opt;
  opt.parallel = state.range(0) != 0;
  opt.samples = 400;
  for (auto _ : state) benchmark::DoNotOptimize(verify_squares(presentation(), opt));
  state.SetLabel(opt.parallel ? "openmp" : "serial");
}
BENCHMARK(BM_VerifySquares)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_VerifyCR(benchmark::State& state) {
  VerifyOptions opt;
  opt.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(verify_cr(presentation(), opt));
  state.SetLabel(opt.parallel ? "openmp" : "serial");
}
BENCHMARK(BM_VerifyCR)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_VerifyLeibniz(benchmark::State& state) {
  VerifyOptions opt;
  opt.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(verify_leibniz(presentation(), opt));
  state.SetLabel(opt.parallel ? "openmp" : "serial");
}
BENCHMARK(BM_VerifyLeibniz)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
