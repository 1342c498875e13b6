#include <benchmark/benchmark.h>

#include <random>

#include "nematic/assembly.hpp"
#include "nematic/experiments.hpp"
#include "nematic/mesh.hpp"
#include "nematic/scheme.hpp"
#include "nematic/sparse.hpp"

using namespace nematic;

namespace {

Mesh make_mesh(int n) { return generate_rectangle_mesh(-1, 1, -1, 1, n, n); }

P1VectorField random_field(const Mesh& mesh, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1, 1);
  P1VectorField f = P1VectorField::zeros(mesh);
  for (double& v : f.values) v = dist(rng);
  return f;
}

void BM_assemble_convection(benchmark::State& state) {
  const Mesh mesh = make_mesh(static_cast<int>(state.range(0)));
  const DofPatterns pat(mesh);
  const P1VectorField u = random_field(mesh, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(assemble_convection(mesh, u, &pat));
}
BENCHMARK(BM_assemble_convection)->Arg(41)->Arg(81);

void BM_assemble_stiffness(benchmark::State& state) {
  const Mesh mesh = make_mesh(static_cast<int>(state.range(0)));
  const DofPatterns pat(mesh);
  for (auto _ : state)
    benchmark::DoNotOptimize(assemble_stiffness_p1(mesh, 2, &pat));
}
BENCHMARK(BM_assemble_stiffness)->Arg(41)->Arg(81);

void BM_spmv(benchmark::State& state) {
  const Mesh mesh = make_mesh(static_cast<int>(state.range(0)));
  const SparseMatrix A = assemble_stiffness_p1(mesh, 2);
  std::vector<double> x(A.n_cols, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(spmv(A, x));
}
BENCHMARK(BM_spmv)->Arg(41)->Arg(81)->Arg(161);

void BM_full_step(benchmark::State& state) {
  const Mesh mesh = make_mesh(static_cast<int>(state.range(0)));
  SimParams params;
  const Stepper stepper(mesh, params);
  const SimState init = stepper.initialize(
      annihilation_d0, [](double, double) { return Vec2{0, 0}; });
  for (auto _ : state) {
    SimState s = init;
    stepper.advance(s);
    benchmark::DoNotOptimize(s.d.values.data());
  }
}
BENCHMARK(BM_full_step)->Arg(21)->Arg(41)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
