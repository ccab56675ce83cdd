#include "mms/run_config.hpp"

#include <fstream>
#include <sstream>

#include "mms/numfmt.hpp"

namespace mms {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ValidationError("key '" + key + "': expected a number, got '" + v + "'");
  }
}

int parse_int(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const int i = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ValidationError("key '" + key + "': expected an integer, got '" + v + "'");
  }
}

}  // namespace

void RunConfig::validate() const {
  try {
    (void)material();
  } catch (const InvalidMaterial& e) {
    throw ValidationError(e.what());
  }
  field().validate();  // C1 != 0, n >= 1
  solver.validate();   // dt tiling, tolerances
  if (levels.empty()) throw ValidationError("levels must not be empty");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 2) throw ValidationError("levels: every N must be >= 2");
    if (i > 0 && levels[i] <= levels[i - 1]) {
      throw ValidationError("levels must be strictly ascending");
    }
  }
  if (grid_n < 2) throw ValidationError("N must be >= 2");
  for (std::size_t i = 0; i < dts.size(); ++i) {
    SolverConfig probe = solver;
    probe.dt = dts[i];
    (void)probe.increments();
    if (i > 0 && dts[i] >= dts[i - 1]) {
      throw ValidationError("dts must be strictly descending");
    }
  }
}

void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value, int line_no) {
  if (key == "case") {
    cfg.model_case = case_from_string(value);
  } else if (key == "source_case") {
    cfg.source_case = case_from_string(value);
  } else if (key == "levels") {
    cfg.levels.clear();
    for (const auto& tok : split_csv(value))
      cfg.levels.push_back(parse_int(tok, key));
  } else if (key == "N") {
    cfg.grid_n = parse_int(value, key);
  } else if (key == "dts") {
    cfg.dts.clear();
    for (const auto& tok : split_csv(value))
      cfg.dts.push_back(parse_double(tok, key));
  } else if (key == "dt") {
    cfg.solver.dt = parse_double(value, key);
  } else if (key == "load") {
    cfg.solver.load_mode = load_mode_from_string(value);
  } else if (key == "stepping") {
    cfg.solver.stepping = stepping_from_string(value);
  } else if (key == "out") {
    cfg.out_dir = value;
  } else if (key == "lambda") {
    cfg.lambda = parse_double(value, key);
  } else if (key == "mu") {
    cfg.mu = parse_double(value, key);
  } else if (key == "C1") {
    cfg.c1 = parse_double(value, key);
  } else if (key == "n") {
    cfg.periods = parse_int(value, key);
  } else if (key == "rel_tol") {
    cfg.solver.rel_tol = parse_double(value, key);
  } else if (key == "linear_tol") {
    cfg.solver.linear_tol = parse_double(value, key);
  } else if (key == "max_newton_iters") {
    cfg.solver.max_newton_iters = parse_int(value, key);
  } else {
    throw ParseError("line " + std::to_string(line_no) + ": unknown key '" +
                     key + "'");
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");

  RunConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty key");
    }
    apply_config_entry(cfg, key, value, line_no);
  }
  cfg.validate();
  return cfg;
}

std::string manifest_text(const RunConfig& cfg, const std::string& command) {
  std::ostringstream out;
  out << "mmsverify " << kVersion << '\n';
  out << "command = " << command << '\n';
  out << "case = " << to_string(cfg.model_case) << '\n';
  out << "source_case = " << to_string(cfg.resolved_source()) << '\n';
  out << "levels = ";
  for (std::size_t i = 0; i < cfg.levels.size(); ++i) {
    if (i) out << ',';
    out << cfg.levels[i];
  }
  out << '\n';
  out << "N = " << cfg.grid_n << '\n';
  out << "dts = ";
  for (std::size_t i = 0; i < cfg.dts.size(); ++i) {
    if (i) out << ',';
    out << fmt_shortest(cfg.dts[i]);
  }
  out << '\n';
  out << "dt = " << fmt_shortest(cfg.solver.dt) << '\n';
  out << "load = " << to_string(cfg.solver.load_mode) << '\n';
  out << "stepping = " << to_string(cfg.solver.stepping) << '\n';
  out << "lambda = " << fmt_shortest(cfg.lambda) << '\n';
  out << "mu = " << fmt_shortest(cfg.mu) << '\n';
  out << "C1 = " << fmt_shortest(cfg.c1) << '\n';
  out << "n = " << cfg.periods << '\n';
  out << "rel_tol = " << fmt_shortest(cfg.solver.rel_tol) << '\n';
  out << "linear_tol = " << fmt_shortest(cfg.solver.linear_tol) << '\n';
  out << "max_newton_iters = " << cfg.solver.max_newton_iters << '\n';
  out << "out = " << cfg.out_dir << '\n';
  return out.str();
}

}  // namespace mms
