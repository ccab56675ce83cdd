#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mms/assembly.hpp"
#include "mms/solver.hpp"
#include "mms/verify.hpp"
#include "test_support.hpp"

using namespace mms;
using mms::test::Rng;

namespace {

const MaterialParams kRef = from_lame(100.0, 50.0);
const MmsField kField;

std::vector<double> interpolate_exact(const Mesh& mesh, const MmsField& f) {
  std::vector<double> u(mesh.num_dofs());
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    const Vec3 un = eval(f, mesh.nodes[n]).u;
    for (int i = 0; i < 3; ++i) u[3 * n + i] = un[i];
  }
  return u;
}

double vec_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("build_mesh counts and geometry") {
  const Mesh m4 = build_mesh(4);
  CHECK(m4.num_nodes() == 125);
  CHECK(m4.num_elems() == 64);
  CHECK(m4.boundary_nodes.size() == 98);
  CHECK(m4.interior_nodes.size() == 27);
  CHECK(m4.h == 0.25);
  for (int n = 0; n < m4.num_nodes(); ++n) {
    for (int d = 0; d < 3; ++d) {
      const double q = m4.nodes[n][d] / m4.h;
      CHECK(q == doctest::Approx(std::round(q)).epsilon(1e-15));
    }
  }

  const Mesh m2 = build_mesh(2);
  CHECK(m2.interior_nodes.size() == 1);
  CHECK(m2.interior_nodes[0] == m2.node_id(1, 1, 1));

  CHECK_THROWS_AS(build_mesh(1), InvalidResolution);
}

TEST_CASE("shape functions") {
  const ShapeEval center = shape(Vec3(0.0, 0.0, 0.0));
  for (int a = 0; a < 8; ++a) CHECK(center.N[a] == doctest::Approx(0.125));

  for (int a = 0; a < 8; ++a) {
    const ShapeEval corner = shape(
        Vec3(kHexCorners[a][0], kHexCorners[a][1], kHexCorners[a][2]));
    for (int b = 0; b < 8; ++b)
      CHECK(corner.N[b] == doctest::Approx(a == b ? 1.0 : 0.0));
  }

  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const ShapeEval se = shape(rng.vec3(-1.0, 1.0));
    double sum = 0.0;
    double dsum[3] = {0.0, 0.0, 0.0};
    for (int a = 0; a < 8; ++a) {
      sum += se.N[a];
      for (int d = 0; d < 3; ++d) dsum[d] += se.dN[a][d];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    for (int d = 0; d < 3; ++d) CHECK(std::abs(dsum[d]) <= 1e-14);
  }
}

TEST_CASE("internal force: zero and rigid translation") {
  const Mesh mesh = build_mesh(4);
  Assembler asmb(mesh);

  const std::vector<double> zero(mesh.num_dofs(), 0.0);
  for (CaseId c : {CaseId::I, CaseId::II, CaseId::III}) {
    const auto f = asmb.internal_force(zero, c, kRef);
    CHECK(vec_norm(f) <= 1e-12);
  }

  std::vector<double> shift(mesh.num_dofs());
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    shift[3 * n] = 0.02;
    shift[3 * n + 1] = -0.01;
    shift[3 * n + 2] = 0.005;
  }
  for (CaseId c : {CaseId::I, CaseId::II, CaseId::III}) {
    const auto f = asmb.internal_force(shift, c, kRef);
    CHECK(vec_norm(f) <= 1e-11);
  }
}

TEST_CASE("weak-form consistency: interpolated exact field balances the body load at O(h^2)") {
  double res[2];
  int idx = 0;
  for (int N : {8, 16}) {
    const Mesh mesh = build_mesh(N);
    Assembler asmb(mesh);
    const auto u = interpolate_exact(mesh, kField);
    const auto fi = asmb.internal_force(u, CaseId::I, kRef);
    const auto fe = asmb.external_force(CaseId::I, kRef, kField,
                                        LoadMode::body, 1.0);
    std::vector<double> r(fe.size(), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = fe[i] - fi[i];
    for (int nb : mesh.boundary_nodes)
      for (int d = 0; d < 3; ++d) r[3 * nb + d] = 0.0;
    res[idx++] = vec_norm(r) / vec_norm(fe);
  }
  CHECK(res[0] / res[1] == doctest::Approx(4.0).epsilon(0.3));
}

TEST_CASE("tangent: Case I constant in u") {
  const Mesh mesh = build_mesh(2);
  Assembler asmb(mesh);
  Rng rng(29);
  std::vector<double> u1(mesh.num_dofs()), u2(mesh.num_dofs());
  for (auto& v : u1) v = rng.uniform(-0.01, 0.01);
  for (auto& v : u2) v = rng.uniform(-0.01, 0.01);
  CsrMatrix K1 = asmb.make_matrix();
  CsrMatrix K2 = asmb.make_matrix();
  asmb.tangent_matrix(u1, CaseId::I, kRef, K1);
  asmb.tangent_matrix(u2, CaseId::I, kRef, K2);
  for (std::size_t k = 0; k < K1.vals.size(); ++k) {
    CHECK(std::abs(K1.vals[k] - K2.vals[k]) <=
          1e-14 * std::max(1.0, std::abs(K1.vals[k])));
  }
}

TEST_CASE("tangent: rigid translation is in the nullspace before BC elimination") {
  const Mesh mesh = build_mesh(4);
  Assembler asmb(mesh);
  const std::vector<double> zero(mesh.num_dofs(), 0.0);
  CsrMatrix K = asmb.make_matrix();
  asmb.tangent_matrix(zero, CaseId::I, kRef, K, /*eliminate_bc=*/false);

  std::vector<double> t(mesh.num_dofs()), y(mesh.num_dofs());
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    t[3 * n] = 1.0;
    t[3 * n + 1] = -2.0;
    t[3 * n + 2] = 0.5;
  }
  matvec(K, t.data(), y.data());
  CHECK(vec_norm(y) <= 1e-10 * vec_norm(t));
}

TEST_CASE("tangent matrix is exactly symmetric after assembly") {
  const Mesh mesh = build_mesh(4);
  Assembler asmb(mesh);
  const auto u = interpolate_exact(mesh, kField);
  CsrMatrix K = asmb.make_matrix();
  for (CaseId c : {CaseId::I, CaseId::II, CaseId::III}) {
    asmb.tangent_matrix(u, c, kRef, K);
    CHECK(asymmetry_inf(K) == 0.0);
  }
}

TEST_CASE("tangent matches finite differences of the internal force (N=2)") {
  const Mesh mesh = build_mesh(2);
  Assembler asmb(mesh);
  Rng rng(31);
  std::vector<double> u(mesh.num_dofs(), 0.0);
  for (int n : mesh.interior_nodes)
    for (int d = 0; d < 3; ++d) u[3 * n + d] = rng.uniform(-0.005, 0.005);

  for (CaseId c : {CaseId::I, CaseId::II}) {
    CsrMatrix K = asmb.make_matrix();
    asmb.tangent_matrix(u, c, kRef, K);
    const double h = 1e-6;
    for (int nfree : mesh.interior_nodes) {
      for (int d = 0; d < 3; ++d) {
        const int col = 3 * nfree + d;
        auto up = u, um = u;
        up[col] += h;
        um[col] -= h;
        const auto fp = asmb.internal_force(up, c, kRef);
        const auto fm = asmb.internal_force(um, c, kRef);
        for (int mrow : mesh.interior_nodes) {
          for (int e = 0; e < 3; ++e) {
            const int row = 3 * mrow + e;
            const double fd = (fp[row] - fm[row]) / (2.0 * h);
            double kval = 0.0;
            for (int kk = K.rowptr[row]; kk < K.rowptr[row + 1]; ++kk) {
              if (K.cols[kk] == col) {
                kval = K.vals[kk];
                break;
              }
            }
            CHECK(std::abs(kval - fd) <= 1e-6 * std::max(1.0, std::abs(kval)));
          }
        }
      }
    }
  }
}

TEST_CASE("external force: scaling, interior support, partition of unity") {
  const Mesh mesh = build_mesh(4);
  Assembler asmb(mesh);

  const auto f0 = asmb.external_force(CaseId::I, kRef, kField,
                                      LoadMode::lumped, 0.0);
  CHECK(vec_norm(f0) == 0.0);

  const auto fl = asmb.external_force(CaseId::I, kRef, kField,
                                      LoadMode::lumped, 1.0);
  int loaded_nodes = 0;
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    const bool nonzero = fl[3 * n] != 0.0 || fl[3 * n + 1] != 0.0 ||
                         fl[3 * n + 2] != 0.0;
    if (nonzero) {
      ++loaded_nodes;
      CHECK(mesh.is_boundary[n] == 0);
      const Vec3 want =
          load_value(CaseId::I, kRef, kField, mesh.nodes[n],
                     LoadMode::lumped, false, mesh.h);
      for (int d = 0; d < 3; ++d)
        CHECK(fl[3 * n + d] == doctest::Approx(want[d]).epsilon(1e-14));
    }
  }
  CHECK(loaded_nodes <= 27);
  CHECK(loaded_nodes > 0);

  // body mode: linear in t
  const auto fb1 = asmb.external_force(CaseId::II, kRef, kField,
                                       LoadMode::body, 1.0);
  const auto fbh = asmb.external_force(CaseId::II, kRef, kField,
                                       LoadMode::body, 0.5);
  for (std::size_t i = 0; i < fb1.size(); ++i)
    CHECK(fbh[i] == doctest::Approx(0.5 * fb1[i]).epsilon(1e-15));
  for (int nb : mesh.boundary_nodes)
    for (int d = 0; d < 3; ++d) CHECK(fb1[3 * nb + d] == 0.0);
}

TEST_CASE("pcg: zero rhs, spd solve, failure surfaces") {
  const Mesh mesh = build_mesh(4);
  Assembler asmb(mesh);
  const std::vector<double> zero(mesh.num_dofs(), 0.0);
  CsrMatrix K = asmb.make_matrix();
  asmb.tangent_matrix(zero, CaseId::I, kRef, K);

  std::vector<double> x;
  CHECK(pcg_solve(K, zero, x, 1e-12) == 0);
  CHECK(vec_norm(x) == 0.0);

  const auto b = asmb.external_force(CaseId::I, kRef, kField,
                                     LoadMode::lumped, 1.0);
  const int iters = pcg_solve(K, b, x, 1e-12);
  CHECK(iters > 0);
  std::vector<double> r(b.size());
  matvec(K, x.data(), r.data());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  CHECK(vec_norm(r) <= 1e-12 * vec_norm(b) * (1.0 + 1e-6));
}

TEST_CASE("solve_linear: tolerance sensitivity is below the discretization error") {
  const Mesh mesh = build_mesh(8);
  SolverConfig cfg;
  cfg.load_mode = LoadMode::lumped;
  const SolveResult tight = solve_linear(mesh, CaseId::I, kRef, kField, cfg,
                                         CaseId::I);
  cfg.linear_tol = 1e-6;
  const SolveResult loose = solve_linear(mesh, CaseId::I, kRef, kField, cfg,
                                         CaseId::I);
  const NormPair nt = error_norms(mesh, tight.u, kField);
  const NormPair nl = error_norms(mesh, loose.u, kField);
  CHECK(std::abs(nt.l2 - nl.l2) / nt.l2 < 1e-4);

  SolverConfig bad;
  CHECK_THROWS_AS(solve_linear(mesh, CaseId::II, kRef, kField, bad, CaseId::II),
                  ValidationError);
}

TEST_CASE("solver config validation") {
  SolverConfig cfg;
  cfg.dt = 0.3;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg.dt = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg.dt = 2.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg.dt = 0.125;
  CHECK(cfg.increments() == 8);
  cfg.rel_tol = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("newton: boundary zeros, quadratic contraction, path independence") {
  const Mesh mesh = build_mesh(4);
  SolverConfig cfg;
  cfg.load_mode = LoadMode::body;

  const SolveResult res = solve_newton(mesh, CaseId::II, kRef, kField, cfg,
                                       CaseId::II);
  for (int nb : mesh.boundary_nodes)
    for (int d = 0; d < 3; ++d) CHECK(res.u[3 * nb + d] == 0.0);

  // quadratic contraction near the root: log-residual ratio >= 1.7 on the
  // final two iterations of the single increment
  const auto& hist = res.increments.back().residuals;
  REQUIRE(hist.size() >= 3);
  const double fnorm = hist.front();  // first residual equals |f_ext|
  const double rm2 = hist[hist.size() - 2] / fnorm;
  const double rm1 = hist[hist.size() - 1] / fnorm;
  CHECK(std::log(rm1) / std::log(rm2) >= 1.7);

  // converged statics do not depend on the increment path
  SolverConfig half = cfg;
  half.dt = 0.5;
  SolverConfig tenth = cfg;
  tenth.dt = 0.1;
  for (CaseId c : {CaseId::II, CaseId::III}) {
    const SolveResult a = solve_newton(mesh, c, kRef, kField, half, c);
    const SolveResult b = solve_newton(mesh, c, kRef, kField, tenth, c);
    const double l2a = error_norms(mesh, a.u, kField).l2;
    const double l2b = error_norms(mesh, b.u, kField).l2;
    CHECK(std::abs(l2a - l2b) / l2a <= 1e-10);
  }
}

TEST_CASE("newton divergence carries the residual history") {
  const Mesh mesh = build_mesh(2);
  SolverConfig cfg;
  cfg.load_mode = LoadMode::body;
  cfg.max_newton_iters = 1;
  try {
    solve_newton(mesh, CaseId::II, kRef, MmsField(0.05, 2), cfg, CaseId::II);
    FAIL("expected NewtonDivergence");
  } catch (const NewtonDivergence& e) {
    CHECK(e.pseudo_time == 1.0);
    CHECK(e.residual_history.size() >= 2);
  }
}

TEST_CASE("inverted configuration raises NonPositiveJacobian") {
  // C1 = 0.2 inverts the mapping near the diagonal point 0.375; the N = 8
  // lumped load samples it
  const Mesh mesh = build_mesh(8);
  SolverConfig cfg;
  cfg.load_mode = LoadMode::lumped;
  CHECK_THROWS_AS(
      solve_newton(mesh, CaseId::II, kRef, MmsField(0.2, 2), cfg, CaseId::II),
      NonPositiveJacobian);
}

TEST_CASE("first_order: one-step limit and monotone approach to the converged path") {
  const Mesh mesh = build_mesh(4);
  SolverConfig cfg;
  cfg.load_mode = LoadMode::lumped;
  cfg.stepping = Stepping::first_order;

  // dt = 1 is a single linearized solve: K(0) u = f_ext
  cfg.dt = 1.0;
  const SolveResult one = solve_first_order(mesh, CaseId::II, kRef, kField,
                                            cfg, CaseId::II);
  Assembler asmb(mesh);
  const auto fe = asmb.external_force(CaseId::II, kRef, kField,
                                      LoadMode::lumped, 1.0);
  CsrMatrix K = asmb.make_matrix();
  asmb.tangent_matrix(std::vector<double>(mesh.num_dofs(), 0.0), CaseId::II,
                      kRef, K);
  std::vector<double> lin;
  pcg_solve(K, fe, lin, cfg.linear_tol);
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < lin.size(); ++i) {
    diff = std::max(diff, std::abs(lin[i] - one.u[i]));
    scale = std::max(scale, std::abs(lin[i]));
  }
  CHECK(diff <= 1e-12 * std::max(1.0, scale));

  SolverConfig newton_cfg;
  newton_cfg.load_mode = LoadMode::lumped;
  const SolveResult ref = solve_newton(mesh, CaseId::II, kRef, kField,
                                       newton_cfg, CaseId::II);
  double prev = std::numeric_limits<double>::max();
  for (double dt : {0.5, 0.25, 0.125}) {
    cfg.dt = dt;
    const SolveResult fo = solve_first_order(mesh, CaseId::II, kRef, kField,
                                             cfg, CaseId::II);
    double dist = 0.0;
    for (std::size_t i = 0; i < fo.u.size(); ++i) {
      const double d = fo.u[i] - ref.u[i];
      dist += d * d;
    }
    dist = std::sqrt(dist);
    CHECK(dist < prev);
    prev = dist;
  }
}

TEST_CASE("case I first_order increments are vacuous") {
  const Mesh mesh = build_mesh(4);
  SolverConfig cfg;
  cfg.load_mode = LoadMode::lumped;
  cfg.stepping = Stepping::first_order;
  cfg.dt = 0.2;
  const SolveResult a = solve_first_order(mesh, CaseId::I, kRef, kField, cfg,
                                          CaseId::I);
  cfg.dt = 0.05;
  const SolveResult b = solve_first_order(mesh, CaseId::I, kRef, kField, cfg,
                                          CaseId::I);
  const double l2a = error_norms(mesh, a.u, kField).l2;
  const double l2b = error_norms(mesh, b.u, kField).l2;
  CHECK(std::abs(l2a - l2b) <= 1e-9);
}
