#include <benchmark/benchmark.h>

#include "mms/assembly.hpp"
#include "mms/solver.hpp"

using namespace mms;

namespace {

const MaterialParams kRef = from_lame(100.0, 50.0);
const MmsField kField;

Mat3 sample_deformation() {
  return Mat3::identity() + eval(kField, Vec3(0.37, 0.21, 0.68)).grad_u;
}

void BM_SymEig(benchmark::State& state) {
  const SymMat3 B = aat(sample_deformation());
  for (auto _ : state) {
    benchmark::DoNotOptimize(sym_eig(B));
  }
}
BENCHMARK(BM_SymEig);

void BM_MatLog(benchmark::State& state) {
  const SymMat3 B = aat(sample_deformation());
  for (auto _ : state) {
    benchmark::DoNotOptimize(mat_func_sym(B, kHalfLog));
  }
}
BENCHMARK(BM_MatLog);

void BM_Tangent(benchmark::State& state) {
  const CaseId c = static_cast<CaseId>(state.range(0));
  const Mat3 F = sample_deformation();
  for (auto _ : state) {
    benchmark::DoNotOptimize(tangent(c, kRef, F));
  }
}
BENCHMARK(BM_Tangent)->DenseRange(0, 2);

void BM_Source(benchmark::State& state) {
  const CaseId c = static_cast<CaseId>(state.range(0));
  const Vec3 X(0.37, 0.21, 0.68);
  for (auto _ : state) {
    benchmark::DoNotOptimize(source(c, kRef, kField, X));
  }
}
BENCHMARK(BM_Source)->DenseRange(0, 2);

void BM_TangentAssembly(benchmark::State& state) {
  const CaseId c = static_cast<CaseId>(state.range(0));
  const Mesh mesh = build_mesh(8);
  Assembler asmb(mesh);
  std::vector<double> u(mesh.num_dofs());
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    const Vec3 un = eval(kField, mesh.nodes[n]).u;
    for (int i = 0; i < 3; ++i) u[3 * n + i] = un[i];
  }
  CsrMatrix K = asmb.make_matrix();
  for (auto _ : state) {
    asmb.tangent_matrix(u, c, kRef, K);
    benchmark::DoNotOptimize(K.vals.data());
  }
}
BENCHMARK(BM_TangentAssembly)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_LinearSolve(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const Mesh mesh = build_mesh(N);
  Assembler asmb(mesh);
  const std::vector<double> zero(mesh.num_dofs(), 0.0);
  CsrMatrix K = asmb.make_matrix();
  asmb.tangent_matrix(zero, CaseId::I, kRef, K);
  const auto b = asmb.external_force(CaseId::I, kRef, kField,
                                     LoadMode::lumped, 1.0);
  std::vector<double> x;
  for (auto _ : state) {
    pcg_solve(K, b, x, 1e-12);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_LinearSolve)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
