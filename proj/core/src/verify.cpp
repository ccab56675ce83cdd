#include "mms/verify.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mms/numfmt.hpp"
#include "mms/parallel.hpp"

namespace mms {

NormPair error_norms(const Mesh& mesh, const std::vector<double>& u_num,
                     const MmsField& field) {
  const int nn = mesh.num_nodes();
  std::vector<double> emag2(nn);
  const double scale = 1.0 / (std::sqrt(3.0) * std::abs(field.C1));
  parallel::for_range(nn, [&](std::ptrdiff_t n) {
    const Vec3 u_mms = eval(field, mesh.nodes[n]).u;
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double d = (u_num[3 * n + i] - u_mms[i]) * scale;
      s += d * d;
    }
    emag2[n] = s;
  });
  NormPair np;
  double sum = 0.0;
  double max2 = 0.0;
  for (double v : emag2) {
    sum += v;
    max2 = std::max(max2, v);
  }
  np.l2 = std::sqrt(sum / static_cast<double>(nn));
  np.linf = std::sqrt(max2);
  return np;
}

double ooc(double l_coarse, double l_fine, double r) {
  if (!(l_coarse > 0.0) || !(l_fine > 0.0)) {
    throw NonPositiveNorm("ooc: error norms must be positive");
  }
  if (!(r > 1.0)) throw NonPositiveNorm("ooc: refinement ratio must exceed 1");
  return std::log(l_coarse / l_fine) / std::log(r);
}

double increment_p(double l_c, double l_m, double l_f, double r_inc) {
  if (!(r_inc > 1.0)) {
    throw NonPositiveNorm("increment_p: refinement ratio must exceed 1");
  }
  const double num = l_c - l_m;
  const double den = l_m - l_f;
  const double floor = 1e-9 * std::max(1.0, std::abs(l_m));
  if (std::abs(den) <= floor || std::abs(num) <= floor || num * den <= 0.0) {
    throw DegenerateTriplet(
        "increment_p: norm differences below noise floor or sign-inconsistent");
  }
  return std::log(num / den) / std::log(r_inc);
}

StudyTable run_grid_study(const CasePairing& pairing, const MaterialParams& p,
                          const MmsField& field, const SolverConfig& cfg,
                          const std::vector<int>& levels) {
  if (levels.empty()) {
    StudyTable t;
    t.kind = StudyTable::Kind::grid;
    t.pairing = pairing;
    t.load_mode = cfg.load_mode;
    return t;
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const int N = levels[i];
    if (N < 2 || (N & (N - 1)) != 0) {
      throw ValidationError("run_grid_study: levels must be powers of 2");
    }
    if (i > 0 && levels[i] != 2 * levels[i - 1]) {
      throw ValidationError(
          "run_grid_study: levels must ascend with refinement ratio 2");
    }
  }

  SolverConfig run_cfg = cfg;
  run_cfg.stepping = Stepping::converged;  // grid studies use converged solves

  StudyTable table;
  table.kind = StudyTable::Kind::grid;
  table.pairing = pairing;
  table.load_mode = cfg.load_mode;

  for (const int N : levels) {
    const Mesh mesh = build_mesh(N);
    SolveResult sol;
    try {
      sol = solve(mesh, pairing.model_case, p, field, run_cfg,
                  pairing.source_case);
    } catch (const Error& e) {
      throw Error("grid study level N=" + std::to_string(N) + ": " + e.what());
    }
    StudyRow row;
    row.level = mesh.h;
    row.grid_n = N;
    row.norms = error_norms(mesh, sol.u, field);
    table.rows.push_back(row);
  }
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    table.ooc_l2.push_back(
        ooc(table.rows[i - 1].norms.l2, table.rows[i].norms.l2, 2.0));
    table.ooc_linf.push_back(
        ooc(table.rows[i - 1].norms.linf, table.rows[i].norms.linf, 2.0));
  }
  return table;
}

StudyTable run_increment_study(CaseId model, const MaterialParams& p,
                               const MmsField& field, const SolverConfig& cfg,
                               const std::vector<double>& dts, int grid_n) {
  for (std::size_t i = 1; i < dts.size(); ++i) {
    if (std::abs(dts[i] - 0.5 * dts[i - 1]) > 1e-12 * dts[i - 1]) {
      throw ValidationError("run_increment_study: dts must halve");
    }
  }

  StudyTable table;
  table.kind = StudyTable::Kind::increment;
  table.pairing = {model, model};
  table.load_mode = cfg.load_mode;

  const Mesh mesh = build_mesh(grid_n);
  for (const double dt : dts) {
    SolverConfig run_cfg = cfg;
    run_cfg.dt = dt;
    SolveResult sol;
    try {
      if (run_cfg.stepping == Stepping::first_order) {
        sol = solve_first_order(mesh, model, p, field, run_cfg, model);
      } else {
        sol = solve(mesh, model, p, field, run_cfg, model);
      }
    } catch (const Error& e) {
      throw Error("increment study dt=" + fmt_shortest(dt) + ": " + e.what());
    }
    StudyRow row;
    row.level = dt;
    row.grid_n = grid_n;
    row.norms = error_norms(mesh, sol.u, field);
    table.rows.push_back(row);
  }
  for (std::size_t i = 2; i < table.rows.size(); ++i) {
    const auto rate = [&](auto pick) {
      try {
        return increment_p(pick(table.rows[i - 2].norms),
                           pick(table.rows[i - 1].norms),
                           pick(table.rows[i].norms), 2.0);
      } catch (const DegenerateTriplet&) {
        return std::numeric_limits<double>::quiet_NaN();
      }
    };
    table.p_l2.push_back(rate([](const NormPair& n) { return n.l2; }));
    table.p_linf.push_back(rate([](const NormPair& n) { return n.linf; }));
  }
  return table;
}

Report report(const StudyTable& table) {
  Report rep;
  std::ostringstream csv;
  std::ostringstream text;

  if (table.kind == StudyTable::Kind::grid) {
    csv << "N,h,L2,Linf,OOC_L2,OOC_Linf\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const StudyRow& r = table.rows[i];
      csv << r.grid_n << ',' << fmt_shortest(r.level) << ','
          << fmt_shortest(r.norms.l2) << ',' << fmt_shortest(r.norms.linf)
          << ',';
      if (i > 0) {
        csv << fmt_shortest(table.ooc_l2[i - 1]) << ','
            << fmt_shortest(table.ooc_linf[i - 1]);
      } else {
        csv << ',';
      }
      csv << '\n';
    }

    text << "grid study: model " << to_string(table.pairing.model_case)
         << ", source " << to_string(table.pairing.source_case) << ", "
         << to_string(table.load_mode) << " load\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const StudyRow& r = table.rows[i];
      text << "  N=" << r.grid_n << "  h=" << fmt_sig(r.level, 6)
           << "  L2=" << fmt_sig(r.norms.l2, 6)
           << "  Linf=" << fmt_sig(r.norms.linf, 6);
      if (i > 0) {
        text << "  OOC_L2=" << fmt_sig(table.ooc_l2[i - 1], 4)
             << "  OOC_Linf=" << fmt_sig(table.ooc_linf[i - 1], 4);
      }
      text << '\n';
    }
    if (!table.ooc_l2.empty()) {
      const double o2 = table.ooc_l2.back();
      const double oi = table.ooc_linf.back();
      rep.pass = o2 >= kOocBandLo && o2 <= kOocBandHi && oi >= kOocBandLo &&
                 oi <= kOocBandHi;
      text << "  finest pair OOC_L2=" << fmt_sig(o2, 4)
           << " OOC_Linf=" << fmt_sig(oi, 4) << " vs theoretical 2, band ["
           << kOocBandLo << ", " << kOocBandHi << "]: "
           << (rep.pass ? "PASS" : "FAIL") << '\n';
    } else {
      text << "  (fewer than two levels; no convergence order)\n";
      rep.pass = false;
    }
  } else {
    csv << "dt,L2,Linf,p_L2,p_Linf\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const StudyRow& r = table.rows[i];
      csv << fmt_shortest(r.level) << ',' << fmt_shortest(r.norms.l2) << ','
          << fmt_shortest(r.norms.linf) << ',';
      if (i >= 2) {
        const double pl2 = table.p_l2[i - 2];
        const double pli = table.p_linf[i - 2];
        csv << (std::isnan(pl2) ? "degenerate" : fmt_shortest(pl2)) << ','
            << (std::isnan(pli) ? "degenerate" : fmt_shortest(pli));
      } else {
        csv << ',';
      }
      csv << '\n';
    }

    text << "increment study: case " << to_string(table.pairing.model_case)
         << ", " << to_string(table.load_mode) << " load, grid N="
         << (table.rows.empty() ? 0 : table.rows.front().grid_n) << '\n';
    bool all_in_band = !table.p_l2.empty();
    for (std::size_t i = 0; i + 2 < table.rows.size(); ++i) {
      const double pl2 = table.p_l2[i];
      const double pli = table.p_linf[i];
      text << "  triplet " << fmt_sig(table.rows[i].level, 4) << "-"
           << fmt_sig(table.rows[i + 1].level, 4) << "-"
           << fmt_sig(table.rows[i + 2].level, 4) << ": p_L2=";
      if (std::isnan(pl2)) {
        text << "degenerate";
      } else {
        text << fmt_sig(pl2, 4);
      }
      text << " p_Linf=";
      if (std::isnan(pli)) {
        text << "degenerate";
      } else {
        text << fmt_sig(pli, 4);
      }
      text << '\n';
      const bool ok = !std::isnan(pl2) && !std::isnan(pli) &&
                      pl2 >= kIncrementBandLo && pl2 <= kIncrementBandHi &&
                      pli >= kIncrementBandLo && pli <= kIncrementBandHi;
      all_in_band = all_in_band && ok;
    }
    rep.pass = all_in_band;
    if (!table.p_l2.empty()) {
      text << "  all triplets vs theoretical 1, band [" << kIncrementBandLo
           << ", " << kIncrementBandHi << "]: "
           << (rep.pass ? "PASS" : "FAIL") << '\n';
    } else {
      text << "  (fewer than three dt levels; no rate)\n";
    }
  }

  rep.csv = csv.str();
  rep.summary = text.str();
  return rep;
}

}  // namespace mms
