#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mms/solver.hpp"

namespace mms {

inline constexpr const char* kVersion = "0.1.0";

/// Fully resolved configuration of a run. Defaults are the reference
/// constants: C1 = 0.01, n = 2, lambda = 100, mu = 50.
struct RunConfig {
  CaseId model_case = CaseId::I;
  std::optional<CaseId> source_case;  // defaults to model_case
  std::vector<int> levels = {4, 8, 16, 32};
  int grid_n = 8;
  std::vector<double> dts = {0.2, 0.1, 0.05, 0.025};
  std::string out_dir = ".";
  double lambda = 100.0;
  double mu = 50.0;
  double c1 = 0.01;
  int periods = 2;
  SolverConfig solver;

  CaseId resolved_source() const {
    return source_case.value_or(model_case);
  }
  MaterialParams material() const { return from_lame(lambda, mu); }
  MmsField field() const { return MmsField(c1, periods); }

  /// Fail-fast validation of every module-level precondition.
  void validate() const;
};

/// Parses a plain `key = value` file ('#' comments, blank lines allowed).
/// Unknown keys raise ParseError with the line number; invalid values raise
/// ValidationError naming the violated precondition. Returned config is
/// validated.
RunConfig load_config(const std::string& path);

/// Applies one key/value pair (shared by the file parser and CLI flags).
void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value, int line_no = 0);

/// Renders the fully resolved configuration plus artifact version; written
/// next to every run's outputs so the run can be reproduced.
std::string manifest_text(const RunConfig& cfg, const std::string& command);

}  // namespace mms
