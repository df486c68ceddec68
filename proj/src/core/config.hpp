// The scan-job configuration surface: a line-based "key = value" grammar with
// '#' comments and a single [job] section. Keys are lowercase; model
// parameters are namespaced as "q1.mu", "q2.delta_t".

#pragma once

#include <string>
#include <vector>

#include "core/grid.hpp"
#include "core/types.hpp"

namespace kfid {

enum class Command {
  fidelity_map,
  gap_map,
  chern,
  z2,
  segment,
  critical_line,
  counterexamples,
  ising,
};

const char* command_name(Command c);
Command command_from_name(const std::string& name);  // throws Status::parse

enum class OutputKind { csv, pgm, report };

struct ScanJob {
  Command command = Command::fidelity_map;
  std::string model;  // empty only for counterexamples
  ParamPoint q1, q2;
  bool has_q2 = false;
  double beta = std::numeric_limits<double>::infinity();  // "inf" selects the pure-state kernel
  GridSpec grid{201, 201};
  double tol = 1e-8;
  int n_s = 200;     // segment subdivisions
  int n_grid = 120;  // Chern mesh
  Momentum k;        // critical-line momentum
  bool has_k = false;
  std::vector<std::pair<OutputKind, std::string>> outputs;

  // Runtime knobs, not part of the config grammar.
  int workers = 1;
  std::string out_dir;

  bool operator==(const ScanJob& other) const;
};

// Parses and fully validates a config; overrides are "key=value" strings
// applied after the file's keys (they may replace them). Syntax and
// validation errors carry the offending key and line number.
ScanJob parse_config(const std::string& text, const std::vector<std::string>& overrides = {});

// Canonical echo of the effective config; parse_config(format_config(job))
// yields an equivalent job.
std::string format_config(const ScanJob& job);

// "0.5", "pi", "-pi", "2pi/3", "pi/2", ... -> value.
double parse_pi_expr(const std::string& token);

}  // namespace kfid
