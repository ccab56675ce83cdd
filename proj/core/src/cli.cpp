#include "mms/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mms/deck.hpp"
#include "mms/numfmt.hpp"
#include "mms/parallel.hpp"
#include "mms/run_config.hpp"
#include "mms/verify.hpp"

namespace mms {

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

fs::path prepare_out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");
  return dir;
}

void emit_manifest(const RunConfig& cfg, const std::string& command) {
  write_file(prepare_out_dir(cfg) / "manifest.txt",
             manifest_text(cfg, command));
}

Vec3 parse_point(const std::string& s) {
  std::stringstream ss(s);
  Vec3 x;
  char comma = 0;
  if (!(ss >> x[0] >> comma >> x[1] >> comma >> x[2])) {
    throw ValidationError("--at expects 'X,Y,Z'");
  }
  return x;
}

struct CommonFlags {
  std::string config_path;
  std::string case_name;
  std::string source_case_name;
  std::string load;
  std::string stepping;
  std::string out_dir;
  std::string levels;
  std::string dts;
  int grid_n = -1;
  double dt = 0.0;
  double lambda = 0.0, mu = 0.0, c1 = 0.0;
  int periods = 0;
  int threads = 0;

  CLI::App* attach(CLI::App* cmd, bool with_levels, bool with_dts) {
    cmd->add_option("--config", config_path, "key = value configuration file");
    cmd->add_option("--case", case_name, "constitutive model: I, II or III");
    cmd->add_option("--source-case", source_case_name,
                    "source-term case (defaults to --case)");
    cmd->add_option("--load", load, "load mode: lumped/cload or body/dload");
    cmd->add_option("--stepping", stepping, "converged or first_order");
    cmd->add_option("--out", out_dir, "output directory");
    if (with_levels) cmd->add_option("--levels", levels, "grid levels, e.g. 4,8,16,32");
    if (with_dts) cmd->add_option("--dts", dts, "increment sizes, e.g. 0.2,0.1,0.05");
    cmd->add_option("--N", grid_n, "elements per side");
    cmd->add_option("--dt", dt, "pseudo-time increment");
    cmd->add_option("--lambda", lambda, "first Lame constant");
    cmd->add_option("--mu", mu, "second Lame constant");
    cmd->add_option("--C1", c1, "displacement field magnitude");
    cmd->add_option("--n", periods, "field periods per unit length");
    cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    return cmd;
  }

  static bool given(const CLI::App* cmd, const char* flag) {
    const CLI::Option* opt = cmd->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  }

  RunConfig resolve(const CLI::App* cmd) const {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (const char* env = std::getenv("MMS_OUT_DIR");
        env != nullptr && *env != '\0' && !given(cmd, "--out") &&
        cfg.out_dir == ".") {
      cfg.out_dir = env;
    }
    auto set = [&](const char* flag, const std::string& key,
                   const std::string& value) {
      if (given(cmd, flag)) apply_config_entry(cfg, key, value);
    };
    set("--case", "case", case_name);
    set("--source-case", "source_case", source_case_name);
    set("--load", "load", load);
    set("--stepping", "stepping", stepping);
    set("--out", "out", out_dir);
    if (given(cmd, "--levels")) apply_config_entry(cfg, "levels", levels);
    if (given(cmd, "--dts")) apply_config_entry(cfg, "dts", dts);
    if (given(cmd, "--N")) cfg.grid_n = grid_n;
    if (given(cmd, "--dt")) cfg.solver.dt = dt;
    if (given(cmd, "--lambda")) cfg.lambda = lambda;
    if (given(cmd, "--mu")) cfg.mu = mu;
    if (given(cmd, "--C1")) cfg.c1 = c1;
    if (given(cmd, "--n")) cfg.periods = periods;
    if (threads > 0) parallel::set_threads(threads);
    cfg.validate();
    return cfg;
  }
};

int run_source(const RunConfig& cfg, const Vec3& at) {
  const SourceEval se =
      source(cfg.model_case, cfg.material(), cfg.field(), at);
  std::cout << fmt_shortest(se.phi[0]) << ' ' << fmt_shortest(se.phi[1]) << ' '
            << fmt_shortest(se.phi[2]) << '\n';
  emit_manifest(cfg, "source");
  return 0;
}

int run_solve(const RunConfig& cfg) {
  const Mesh mesh = build_mesh(cfg.grid_n);
  const SolveResult sol = solve(mesh, cfg.model_case, cfg.material(),
                                cfg.field(), cfg.solver, cfg.resolved_source());
  const NormPair norms = error_norms(mesh, sol.u, cfg.field());

  const fs::path dir = prepare_out_dir(cfg);
  std::ostringstream csv;
  export_solution_csv(mesh, sol.u, csv);
  write_file(dir / "solution.csv", csv.str());
  emit_manifest(cfg, "solve");

  std::cout << "case " << to_string(cfg.model_case) << " N=" << cfg.grid_n
            << " load=" << to_string(cfg.solver.load_mode)
            << "  L2=" << fmt_sig(norms.l2, 6)
            << "  Linf=" << fmt_sig(norms.linf, 6) << '\n';
  std::cout << "wrote " << (dir / "solution.csv").string() << '\n';
  return 0;
}

int run_study_grid(const RunConfig& cfg) {
  const CasePairing pairing{cfg.model_case, cfg.resolved_source()};
  const StudyTable table = run_grid_study(pairing, cfg.material(), cfg.field(),
                                          cfg.solver, cfg.levels);
  const Report rep = report(table);
  const fs::path dir = prepare_out_dir(cfg);
  write_file(dir / "study_grid.csv", rep.csv);
  emit_manifest(cfg, "study-grid");
  std::cout << rep.summary;
  std::cout << "wrote " << (dir / "study_grid.csv").string() << '\n';
  return rep.pass ? 0 : 1;
}

int run_study_increment(const RunConfig& cfg) {
  const StudyTable table =
      run_increment_study(cfg.model_case, cfg.material(), cfg.field(),
                          cfg.solver, cfg.dts, cfg.grid_n);
  const Report rep = report(table);
  const fs::path dir = prepare_out_dir(cfg);
  write_file(dir / "study_increment.csv", rep.csv);
  emit_manifest(cfg, "study-increment");
  std::cout << rep.summary;
  std::cout << "wrote " << (dir / "study_increment.csv").string() << '\n';
  return rep.pass ? 0 : 1;
}

int run_export_deck(const RunConfig& cfg, bool nlgeom, bool emit_zeros,
                    int precision) {
  DeckSpec spec;
  spec.grid_n = cfg.grid_n;
  spec.load = cfg.solver.load_mode;
  spec.nlgeom = nlgeom;
  spec.target_case = cfg.model_case;
  spec.precision = precision;
  spec.emit_zeros = emit_zeros;

  const fs::path dir = prepare_out_dir(cfg);
  std::ostringstream text;
  int lines = 0;
  fs::path file;
  if (spec.load == LoadMode::lumped) {
    lines = export_cload(spec, cfg.material(), cfg.field(), text);
    file = dir / "cload.inp";
  } else {
    lines = export_dload_table(spec, cfg.material(), cfg.field(), text);
    file = dir / "dload_table.csv";
  }
  write_file(file, text.str());
  emit_manifest(cfg, "export-deck");
  std::cout << "wrote " << file.string() << " (" << lines << " data lines)\n";
  return 0;
}

int run_export_field(const RunConfig& cfg, int sample_n) {
  const fs::path dir = prepare_out_dir(cfg);
  std::ostringstream text;
  const int rows =
      export_field_csv(cfg.model_case, cfg.material(), cfg.field(),
                       sample_n > 0 ? sample_n : cfg.grid_n, text);
  write_file(dir / "source_field.csv", text.str());
  emit_manifest(cfg, "export-field");
  std::cout << "wrote " << (dir / "source_field.csv").string() << " (" << rows
            << " rows)\n";
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Manufactured-solution verification for elastostatic FE solves"};
  app.set_version_flag("--version", std::string("mmsverify ") + kVersion);
  app.require_subcommand(1);

  CommonFlags f_source, f_solve, f_grid, f_inc, f_deck, f_field;

  auto* cmd_source = f_source.attach(
      app.add_subcommand("source", "evaluate the source term at a point"),
      false, false);
  std::string at_str = "0.5,0.5,0.5";
  cmd_source->add_option("--at", at_str, "evaluation point 'X,Y,Z'");

  auto* cmd_solve = f_solve.attach(
      app.add_subcommand("solve", "solve one boundary-value problem"), false,
      false);

  auto* cmd_grid = f_grid.attach(
      app.add_subcommand("study-grid", "grid refinement study"), true, false);

  auto* cmd_inc = f_inc.attach(
      app.add_subcommand("study-increment", "increment refinement study"),
      false, true);

  auto* cmd_deck = f_deck.attach(
      app.add_subcommand("export-deck", "write solver-exchange load deck"),
      false, false);
  bool nlgeom = false, emit_zeros = false;
  int precision = 16;
  cmd_deck->add_flag("--nlgeom", nlgeom, "finite-strain load convention");
  cmd_deck->add_flag("--emit-zeros", emit_zeros, "emit zero-valued loads");
  cmd_deck->add_option("--precision", precision, "significant digits");

  auto* cmd_field = f_field.attach(
      app.add_subcommand("export-field", "write sampled source field CSV"),
      false, false);
  int sample_n = 0;
  cmd_field->add_option("--sample-n", sample_n, "lattice resolution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForVersion& e) {
    std::cout << app.version() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    if (cmd_source->parsed()) {
      return run_source(f_source.resolve(cmd_source), parse_point(at_str));
    }
    if (cmd_solve->parsed()) return run_solve(f_solve.resolve(cmd_solve));
    if (cmd_grid->parsed()) return run_study_grid(f_grid.resolve(cmd_grid));
    if (cmd_inc->parsed()) {
      RunConfig cfg = f_inc.resolve(cmd_inc);
      if (!CommonFlags::given(cmd_inc, "--stepping")) {
        cfg.solver.stepping = Stepping::first_order;
      }
      if (!CommonFlags::given(cmd_inc, "--N")) cfg.grid_n = 4;
      return run_study_increment(cfg);
    }
    if (cmd_deck->parsed()) {
      return run_export_deck(f_deck.resolve(cmd_deck), nlgeom, emit_zeros,
                             precision);
    }
    if (cmd_field->parsed()) {
      return run_export_field(f_field.resolve(cmd_field), sample_n);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

int cli_main(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace mms
