#include <benchmark/benchmark.h>

#include <cstdint>

#include <Eigen/Dense>

#include "asphdg/asp.hpp"
#include "asphdg/bench.hpp"
#include "asphdg/condense.hpp"
#include "asphdg/krylov.hpp"

using namespace asphdg;

namespace {

ExperimentConfig make(ProblemKind p, int dim, std::int64_t n, SmootherKind s, AuxKind a = AuxKind::direct) {
  ExperimentConfig c;
  c.problem = p;
  c.dim = dim;
  c.n = static_cast<int>(n);
  c.smoother = s;
  c.aux = a;
  c.record_timings = false;
  return c;
}

void BM_AssembleCondense2D(benchmark::State& state) {
  const ExperimentConfig c = make(ProblemKind::scalar_rd, 2, state.range(0), SmootherKind::bgs);
  for (auto _ : state) benchmark::DoNotOptimize(discretize(c));
}
BENCHMARK(BM_AssembleCondense2D)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_AssembleCondense3D(benchmark::State& state) {
  const ExperimentConfig c = make(ProblemKind::scalar_rd, 3, state.range(0), SmootherKind::bgs);
  for (auto _ : state) benchmark::DoNotOptimize(discretize(c));
}
BENCHMARK(BM_AssembleCondense3D)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

// One application of each preconditioner on the condensed system.
void preconditioner_apply(benchmark::State& state, const ExperimentConfig& c) {
  const Discretization d = discretize(c);
  const LinearOperator b = build_preconditioner(d.mesh, d.problem, d.system, preconditioner_config(c));
  const Eigen::VectorXd r = Eigen::VectorXd::Ones(d.system.num_global);
  for (auto _ : state) benchmark::DoNotOptimize(b.apply(r));
  state.counters["dofs"] = d.system.num_global;
}

void BM_ApplyScalarBGS(benchmark::State& state) {
  preconditioner_apply(state, make(ProblemKind::scalar_rd, 2, state.range(0), SmootherKind::bgs));
}
BENCHMARK(BM_ApplyScalarBGS)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_ApplyVectorJacobi(benchmark::State& state) {
  preconditioner_apply(state, make(ProblemKind::vector_rd, 2, state.range(0), SmootherKind::jacobi));
}
BENCHMARK(BM_ApplyVectorJacobi)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_ApplyPlateDirect(benchmark::State& state) {
  preconditioner_apply(state, make(ProblemKind::biharmonic, 2, state.range(0), SmootherKind::none));
}
BENCHMARK(BM_ApplyPlateDirect)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_ApplyPlateASP(benchmark::State& state) {
  preconditioner_apply(state, make(ProblemKind::biharmonic, 2, state.range(0), SmootherKind::bgs, AuxKind::asp));
}
BENCHMARK(BM_ApplyPlateASP)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_FullSolve(benchmark::State& state) {
  const ExperimentConfig c = make(ProblemKind::vector_rd, 2, state.range(0), SmootherKind::bgs);
  int iters = 0;
  for (auto _ : state) iters = run_experiment(c).iters;
  state.counters["iters"] = iters;
}
BENCHMARK(BM_FullSolve)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
