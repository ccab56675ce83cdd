#include "mms/solver.hpp"

#include <cmath>
#include <string>

#include "mms/parallel.hpp"

namespace mms {

std::string to_string(Stepping s) {
  return s == Stepping::converged ? "converged" : "first_order";
}

Stepping stepping_from_string(const std::string& s) {
  if (s == "converged") return Stepping::converged;
  if (s == "first_order" || s == "first-order") return Stepping::first_order;
  throw ValidationError("unknown stepping '" + s +
                        "' (expected converged or first_order)");
}

int SolverConfig::increments() const {
  if (!(dt > 0.0) || dt > 1.0) {
    throw ValidationError("SolverConfig: dt must lie in (0, 1]");
  }
  const double m = 1.0 / dt;
  const int mi = static_cast<int>(std::lround(m));
  if (mi < 1 || std::abs(mi * dt - 1.0) > 1e-9) {
    throw ValidationError("SolverConfig: 1/dt must be an integer");
  }
  return mi;
}

void SolverConfig::validate() const {
  if (!(rel_tol > 0.0)) throw ValidationError("SolverConfig: rel_tol must be positive");
  if (!(linear_tol > 0.0)) throw ValidationError("SolverConfig: linear_tol must be positive");
  if (max_newton_iters < 1) throw ValidationError("SolverConfig: max_newton_iters must be >= 1");
  (void)increments();
}

namespace {

void axpy(std::vector<double>& y, double alpha, const std::vector<double>& x) {
  const std::size_t n = y.size();
  double* yp = y.data();
  const double* xp = x.data();
  parallel::for_range(static_cast<std::ptrdiff_t>((n + 16383) / 16384),
                      [&](std::ptrdiff_t c) {
                        const std::size_t lo = static_cast<std::size_t>(c) * 16384;
                        const std::size_t hi = std::min(lo + 16384, n);
                        for (std::size_t i = lo; i < hi; ++i)
                          yp[i] += alpha * xp[i];
                      });
}

/// r = b - f_int(u) with boundary entries forced to zero.
std::vector<double> residual(const Assembler& asmb,
                             const std::vector<double>& target,
                             const std::vector<double>& u, CaseId model,
                             const MaterialParams& p) {
  std::vector<double> r = asmb.internal_force(u, model, p);
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) r[i] = target[i] - r[i];
  for (int nb : asmb.mesh().boundary_nodes)
    for (int i = 0; i < 3; ++i) r[3 * nb + i] = 0.0;
  return r;
}

}  // namespace

int pcg_solve(const CsrMatrix& A, const std::vector<double>& b,
              std::vector<double>& x, double tol) {
  const std::size_t n = b.size();
  x.assign(n, 0.0);

  const double norm_b = parallel::norm2(b.data(), n);
  if (norm_b == 0.0) return 0;
  const double stop = tol * norm_b;

  std::vector<double> diag_inv(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0;
    for (int k = A.rowptr[i]; k < A.rowptr[i + 1]; ++k) {
      if (A.cols[k] == static_cast<int>(i)) {
        d = A.vals[k];
        break;
      }
    }
    diag_inv[i] = (d != 0.0) ? 1.0 / d : 1.0;
  }

  std::vector<double> r = b;
  std::vector<double> z(n), q(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = diag_inv[i] * r[i];
  std::vector<double> d = z;
  double rho = parallel::dot(r.data(), z.data(), n);

  const int max_iters =
      20 * static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  for (int it = 1; it <= max_iters; ++it) {
    matvec(A, d.data(), q.data());
    const double dq = parallel::dot(d.data(), q.data(), n);
    if (dq <= 0.0) {
      throw LinearSolveFailure("pcg: non-positive curvature (matrix not SPD)");
    }
    const double alpha = rho / dq;
    axpy(x, alpha, d);
    axpy(r, -alpha, q);
    const double rn = parallel::norm2(r.data(), n);
    if (rn <= stop) return it;
    for (std::size_t i = 0; i < n; ++i) z[i] = diag_inv[i] * r[i];
    const double rho_new = parallel::dot(r.data(), z.data(), n);
    const double beta = rho_new / rho;
    rho = rho_new;
    for (std::size_t i = 0; i < n; ++i) d[i] = z[i] + beta * d[i];
  }
  throw LinearSolveFailure("pcg: no convergence within " +
                           std::to_string(max_iters) + " iterations");
}

SolveResult solve_linear(const Mesh& mesh, CaseId model,
                         const MaterialParams& p, const MmsField& field,
                         const SolverConfig& cfg, CaseId source_case) {
  if (model != CaseId::I) {
    throw ValidationError("solve_linear: model case must be I");
  }
  cfg.validate();
  Assembler asmb(mesh);
  const std::vector<double> f_ext =
      asmb.external_force(source_case, p, field, cfg.load_mode, 1.0);
  std::vector<double> u0(mesh.num_dofs(), 0.0);
  CsrMatrix K = asmb.make_matrix();
  asmb.tangent_matrix(u0, model, p, K);

  SolveResult res;
  res.u.assign(mesh.num_dofs(), 0.0);
  res.linear_iters_total = pcg_solve(K, f_ext, res.u, cfg.linear_tol);
  for (int nb : mesh.boundary_nodes)
    for (int i = 0; i < 3; ++i) res.u[3 * nb + i] = 0.0;
  IncrementReport rep;
  rep.t = 1.0;
  rep.newton_iters = 1;
  res.increments.push_back(std::move(rep));
  return res;
}

SolveResult solve_newton(const Mesh& mesh, CaseId model,
                         const MaterialParams& p, const MmsField& field,
                         const SolverConfig& cfg, CaseId source_case) {
  cfg.validate();
  Assembler asmb(mesh);
  const std::vector<double> f_base =
      asmb.external_force(source_case, p, field, cfg.load_mode, 1.0);
  const std::size_t n = f_base.size();

  SolveResult res;
  res.u.assign(n, 0.0);
  CsrMatrix K = asmb.make_matrix();
  std::vector<double> target(n), delta(n);

  const int m = cfg.increments();
  for (int k = 1; k <= m; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(m);
    for (std::size_t i = 0; i < n; ++i) target[i] = t * f_base[i];
    const double f_norm = parallel::norm2(target.data(), n);
    const double stop = cfg.rel_tol * std::max(f_norm, 1e-12);

    IncrementReport rep;
    rep.t = t;
    rep.newton_iters = 0;

    bool converged = false;
    for (int it = 0; it <= cfg.max_newton_iters; ++it) {
      std::vector<double> r = residual(asmb, target, res.u, model, p);
      const double rn = parallel::norm2(r.data(), n);
      rep.residuals.push_back(rn);
      if (rn <= stop) {
        converged = true;
        break;
      }
      if (it == cfg.max_newton_iters) break;
      asmb.tangent_matrix(res.u, model, p, K);
      res.linear_iters_total += pcg_solve(K, r, delta, cfg.linear_tol);
      axpy(res.u, 1.0, delta);
      ++rep.newton_iters;
    }
    if (!converged) {
      throw NewtonDivergence(
          "newton: no convergence at t = " + std::to_string(t) + " after " +
              std::to_string(rep.newton_iters) + " iterations",
          t, rep.residuals);
    }
    res.increments.push_back(std::move(rep));
  }
  for (int nb : mesh.boundary_nodes)
    for (int i = 0; i < 3; ++i) res.u[3 * nb + i] = 0.0;
  return res;
}

SolveResult solve_first_order(const Mesh& mesh, CaseId model,
                              const MaterialParams& p, const MmsField& field,
                              const SolverConfig& cfg, CaseId source_case) {
  cfg.validate();
  Assembler asmb(mesh);
  const std::vector<double> f_base =
      asmb.external_force(source_case, p, field, cfg.load_mode, 1.0);
  const std::size_t n = f_base.size();

  SolveResult res;
  res.u.assign(n, 0.0);
  CsrMatrix K = asmb.make_matrix();
  std::vector<double> rhs(n), delta(n);

  // Pure incremental continuation: the tangent at the start-of-increment
  // state is applied to the load increment alone. There is no residual
  // feedback, so drift accumulates and the path error is O(dt); a single
  // equilibrium-corrected step per increment would contract inherited error
  // quadratically and land at O(dt^2) instead.
  const int m = cfg.increments();
  double t_prev = 0.0;
  for (int k = 1; k <= m; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(m);
    const double dt_k = t - t_prev;
    for (std::size_t i = 0; i < n; ++i) rhs[i] = dt_k * f_base[i];
    for (int nb : mesh.boundary_nodes)
      for (int i = 0; i < 3; ++i) rhs[3 * nb + i] = 0.0;
    asmb.tangent_matrix(res.u, model, p, K);
    res.linear_iters_total += pcg_solve(K, rhs, delta, cfg.linear_tol);
    axpy(res.u, 1.0, delta);
    IncrementReport rep;
    rep.t = t;
    rep.newton_iters = 1;
    rep.residuals.push_back(parallel::norm2(rhs.data(), n));
    res.increments.push_back(std::move(rep));
    t_prev = t;
  }
  for (int nb : mesh.boundary_nodes)
    for (int i = 0; i < 3; ++i) res.u[3 * nb + i] = 0.0;
  return res;
}

SolveResult solve(const Mesh& mesh, CaseId model, const MaterialParams& p,
                  const MmsField& field, const SolverConfig& cfg,
                  CaseId source_case) {
  if (cfg.stepping == Stepping::first_order) {
    return solve_first_order(mesh, model, p, field, cfg, source_case);
  }
  if (model == CaseId::I) {
    return solve_linear(mesh, model, p, field, cfg, source_case);
  }
  return solve_newton(mesh, model, p, field, cfg, source_case);
}

}  // namespace mms
