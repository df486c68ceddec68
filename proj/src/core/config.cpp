#include "core/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "core/models.hpp"

namespace kfid {
namespace {

struct NamedCommand {
  Command cmd;
  const char* name;
};

constexpr NamedCommand kCommands[] = {
    {Command::fidelity_map, "fidelity-map"}, {Command::gap_map, "gap-map"},
    {Command::chern, "chern"},               {Command::z2, "z2"},
    {Command::segment, "segment"},           {Command::critical_line, "critical-line"},
    {Command::counterexamples, "counterexamples"}, {Command::ising, "ising"},
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  fail(Status::parse, line > 0 ? "line " + std::to_string(line) + ": " + msg : msg);
}

double parse_number(const std::string& v, int line, const std::string& key) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    parse_fail(line, "key \"" + key + "\": expected a number, got \"" + v + "\"");
  }
}

int parse_int(const std::string& v, int line, const std::string& key) {
  try {
    std::size_t pos = 0;
    int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    parse_fail(line, "key \"" + key + "\": expected an integer, got \"" + v + "\"");
  }
}

struct Entry {
  std::string key;
  std::string value;
  int line;
};

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

const char* command_name(Command c) {
  for (const auto& nc : kCommands)
    if (nc.cmd == c) return nc.name;
  return "?";
}

Command command_from_name(const std::string& name) {
  for (const auto& nc : kCommands)
    if (name == nc.name) return nc.cmd;
  fail(Status::parse, "unknown command \"" + name + "\"");
}

double parse_pi_expr(const std::string& token) {
  std::string t = trim(token);
  if (t.empty()) fail(Status::parse, "empty momentum component");
  double sign = 1.0;
  if (t[0] == '+' || t[0] == '-') {
    if (t[0] == '-') sign = -1.0;
    t = t.substr(1);
  }
  std::size_t p = t.find("pi");
  if (p == std::string::npos) {
    std::size_t pos = 0;
    double x = std::stod(t, &pos);
    if (pos != t.size()) fail(Status::parse, "bad momentum component \"" + token + "\"");
    return sign * x;
  }
  double coeff = 1.0;
  if (p > 0) {
    std::string pre = t.substr(0, p);
    if (!pre.empty() && pre.back() == '*') pre.pop_back();
    std::size_t pos = 0;
    coeff = std::stod(pre, &pos);
    if (pos != pre.size()) fail(Status::parse, "bad momentum component \"" + token + "\"");
  }
  std::string rest = t.substr(p + 2);
  double div = 1.0;
  if (!rest.empty()) {
    if (rest[0] != '/') fail(Status::parse, "bad momentum component \"" + token + "\"");
    std::size_t pos = 0;
    div = std::stod(rest.substr(1), &pos);
    if (pos != rest.size() - 1 || div == 0.0)
      fail(Status::parse, "bad momentum component \"" + token + "\"");
  }
  return sign * coeff * std::numbers::pi / div;
}

bool ScanJob::operator==(const ScanJob& other) const {
  return command == other.command && model == other.model && q1 == other.q1 && q2 == other.q2 &&
         has_q2 == other.has_q2 &&
         (beta == other.beta || (std::isinf(beta) && std::isinf(other.beta))) &&
         grid.nx == other.grid.nx && grid.ny == other.grid.ny && tol == other.tol &&
         n_s == other.n_s && n_grid == other.n_grid && has_k == other.has_k &&
         (!has_k || (k.dim == other.k.dim && k.k == other.k.k)) && outputs == other.outputs;
}

ScanJob parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  // Pass 1: split into entries, enforce the single [job] section and
  // reject duplicate keys.
  std::vector<Entry> entries;
  bool in_job = false;
  int line_no = 0;
  std::istringstream is(text);
  std::string raw;
  while (std::getline(is, raw)) {
    ++line_no;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line != "[job]") parse_fail(line_no, "unknown section \"" + line + "\"");
      if (in_job) parse_fail(line_no, "duplicate [job] section");
      in_job = true;
      continue;
    }
    if (!in_job) parse_fail(line_no, "entries must appear inside the [job] section");
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) parse_fail(line_no, "expected \"key = value\"");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) parse_fail(line_no, "empty key");
    if (value.empty()) parse_fail(line_no, "key \"" + key + "\" has no value");
    for (const auto& e : entries)
      if (e.key == key) parse_fail(line_no, "duplicate key \"" + key + "\"");
    entries.push_back({key, value, line_no});
  }
  if (!in_job) fail(Status::parse, "missing [job] section");

  for (const std::string& ov : overrides) {
    std::size_t eq = ov.find('=');
    if (eq == std::string::npos)
      fail(Status::parse, "override \"" + ov + "\" is not of the form key=value");
    std::string key = trim(ov.substr(0, eq));
    std::string value = trim(ov.substr(eq + 1));
    if (key.empty() || value.empty())
      fail(Status::parse, "override \"" + ov + "\" is not of the form key=value");
    auto it = std::find_if(entries.begin(), entries.end(),
                           [&](const Entry& e) { return e.key == key; });
    if (it != entries.end()) {
      it->value = value;
      it->line = 0;
    } else {
      entries.push_back({key, value, 0});
    }
  }

  // Pass 2: interpret keys.
  ScanJob job;
  bool has_command = false, has_model = false, has_beta = false, has_grid = false;
  bool has_tol = false, has_ns = false, has_ngrid = false;
  std::string grid_value;
  int grid_line = 0;

  for (const Entry& e : entries) {
    if (e.key == "command") {
      try {
        job.command = command_from_name(e.value);
      } catch (const Error& err) {
        parse_fail(e.line, err.what());
      }
      has_command = true;
    } else if (e.key == "model") {
      job.model = e.value;
      has_model = true;
    } else if (e.key == "beta") {
      if (e.value == "inf") {
        job.beta = std::numeric_limits<double>::infinity();
      } else {
        job.beta = parse_number(e.value, e.line, e.key);
        if (!(job.beta >= 0.0)) parse_fail(e.line, "beta must be non-negative");
      }
      has_beta = true;
    } else if (e.key == "grid") {
      grid_value = e.value;
      grid_line = e.line;
      has_grid = true;
    } else if (e.key == "tol") {
      job.tol = parse_number(e.value, e.line, e.key);
      if (!(job.tol > 0.0)) parse_fail(e.line, "tol must be positive");
      has_tol = true;
    } else if (e.key == "n_s") {
      job.n_s = parse_int(e.value, e.line, e.key);
      if (job.n_s < 2) parse_fail(e.line, "n_s must be at least 2");
      has_ns = true;
    } else if (e.key == "n_grid") {
      job.n_grid = parse_int(e.value, e.line, e.key);
      if (job.n_grid < 8) parse_fail(e.line, "n_grid must be at least 8");
      has_ngrid = true;
    } else if (e.key == "k") {
      std::istringstream ks(e.value);
      std::string tok;
      std::vector<double> comps;
      while (std::getline(ks, tok, ',')) {
        try {
          comps.push_back(parse_pi_expr(tok));
        } catch (const Error& err) {
          parse_fail(e.line, err.what());
        }
      }
      if (comps.empty() || comps.size() > 3) parse_fail(e.line, "k needs 1 to 3 components");
      job.k.dim = static_cast<int>(comps.size());
      for (std::size_t i = 0; i < comps.size(); ++i) job.k.k[i] = comps[i];
      job.has_k = true;
    } else if (e.key.rfind("q1.", 0) == 0 || e.key.rfind("q2.", 0) == 0) {
      std::string pname = e.key.substr(3);
      if (pname.empty()) parse_fail(e.line, "empty parameter name in \"" + e.key + "\"");
      ParamPoint& q = e.key[1] == '1' ? job.q1 : job.q2;
      q[pname] = parse_number(e.value, e.line, e.key);
      if (e.key[1] == '2') job.has_q2 = true;
    } else if (e.key == "out.csv") {
      job.outputs.emplace_back(OutputKind::csv, e.value);
    } else if (e.key == "out.pgm") {
      job.outputs.emplace_back(OutputKind::pgm, e.value);
    } else if (e.key == "out.report") {
      job.outputs.emplace_back(OutputKind::report, e.value);
    } else {
      parse_fail(e.line, "unknown key \"" + e.key + "\"");
    }
  }

  if (!has_command) fail(Status::parse, "missing required key \"command\"");

  // Command-specific validation.
  const Command c = job.command;
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) fail(Status::parse, std::string(command_name(c)) + ": " + msg);
  };

  bool wants_model = c != Command::counterexamples;
  if (c == Command::ising && !has_model) {
    job.model = "ising_tf";
    has_model = true;
  }
  require(!wants_model || has_model, "missing required key \"model\"");
  require(wants_model || !has_model, "key \"model\" is not used by this command");

  System sys;  // validates the model id
  if (wants_model) {
    if (c != Command::fidelity_map && c != Command::gap_map && c != Command::segment &&
        job.model == "triplet_product")
      fail(Status::parse, std::string(command_name(c)) + ": needs a single catalog model");
    sys = resolve_system(job.model);
    if (c == Command::ising && job.model != "ising_tf")
      fail(Status::parse, "ising: model must be ising_tf");
    if (c == Command::z2 && job.model != "dirac3d_ti")
      fail(Status::parse, "z2: model must be dirac3d_ti");
  }

  bool wants_q1 = wants_model;
  bool wants_q2 = c == Command::fidelity_map || c == Command::segment ||
                  c == Command::critical_line || c == Command::ising ||
                  (c == Command::z2 && job.has_q2);
  require(!wants_q1 || !job.q1.empty(), "missing q1 parameters");
  require(wants_q1 || job.q1.empty(), "q1 parameters are not used by this command");
  require(!wants_q2 || job.has_q2, "missing q2 parameters");
  require(wants_q2 || !job.has_q2, "q2 parameters are not used by this command");

  if (wants_model) {
    for (const ModelDef* m : sys.sectors) {
      flatten_params(*m, job.q1);  // throws schema_mismatch with names
      if (wants_q2) flatten_params(*m, job.q2);
      break;  // sectors share one schema
    }
  }

  require(!has_beta || c == Command::fidelity_map, "key \"beta\" is only used by fidelity-map");
  require(!has_ns || c == Command::segment, "key \"n_s\" is only used by segment");
  require(!has_ngrid || c == Command::chern, "key \"n_grid\" is only used by chern");
  require(!has_tol || c == Command::segment || c == Command::critical_line ||
              c == Command::fidelity_map,
          "key \"tol\" is not used by this command");
  require(!job.has_k || c == Command::critical_line, "key \"k\" is only used by critical-line");
  require(c != Command::critical_line || job.has_k, "missing required key \"k\"");
  if (c == Command::critical_line && job.has_k && wants_model)
    require(job.k.dim == sys.dim_k(), "k dimension does not match the model");

  bool wants_grid = c == Command::fidelity_map || c == Command::gap_map ||
                    c == Command::segment || c == Command::ising || c == Command::counterexamples;
  require(wants_grid || !has_grid, "key \"grid\" is not used by this command");
  if (has_grid) {
    std::size_t x = grid_value.find('x');
    if (x == std::string::npos) {
      int n = parse_int(grid_value, grid_line, "grid");
      if (n < 2) parse_fail(grid_line, "grid must have at least 2 points per axis");
      job.grid = {n, n};
    } else {
      int nx = parse_int(grid_value.substr(0, x), grid_line, "grid");
      int ny = parse_int(grid_value.substr(x + 1), grid_line, "grid");
      if (nx < 2 || ny < 2) parse_fail(grid_line, "grid must have at least 2 points per axis");
      if (wants_model && sys.dim_k() == 1)
        parse_fail(grid_line, "1d models take a single grid size");
      job.grid = {nx, ny};
    }
  }

  for (const auto& [kind, path] : job.outputs) {
    bool ok = false;
    switch (kind) {
      case OutputKind::csv:
        ok = c == Command::fidelity_map || c == Command::gap_map || c == Command::segment ||
             c == Command::ising;
        break;
      case OutputKind::pgm:
        ok = c == Command::fidelity_map || c == Command::gap_map;
        break;
      case OutputKind::report:
        ok = true;
        break;
    }
    require(ok, "output kind not supported by this command (" + path + ")");
  }

  return job;
}

std::string format_config(const ScanJob& job) {
  std::ostringstream os;
  os << "[job]\n";
  os << "command = " << command_name(job.command) << "\n";
  if (!job.model.empty()) os << "model = " << job.model << "\n";
  const Command c = job.command;
  if (c == Command::fidelity_map)
    os << "beta = " << (std::isinf(job.beta) ? std::string("inf") : fmt17(job.beta)) << "\n";
  if (c == Command::fidelity_map || c == Command::gap_map || c == Command::segment ||
      c == Command::ising || c == Command::counterexamples) {
    bool one_d = false;
    if (!job.model.empty() && c != Command::counterexamples)
      one_d = resolve_system(job.model).dim_k() == 1;
    if (one_d || c == Command::ising)
      os << "grid = " << job.grid.nx << "\n";
    else
      os << "grid = " << job.grid.nx << "x" << job.grid.ny << "\n";
  }
  if (c == Command::segment || c == Command::critical_line || c == Command::fidelity_map)
    os << "tol = " << fmt17(job.tol) << "\n";
  if (c == Command::segment) os << "n_s = " << job.n_s << "\n";
  if (c == Command::chern) os << "n_grid = " << job.n_grid << "\n";
  if (job.has_k) {
    os << "k = ";
    for (int i = 0; i < job.k.dim; ++i) os << (i ? "," : "") << fmt17(job.k[i]);
    os << "\n";
  }
  auto emit_q = [&](const char* prefix, const ParamPoint& q) {
    for (const auto& [name, value] : q) os << prefix << name << " = " << fmt17(value) << "\n";
  };
  emit_q("q1.", job.q1);
  if (job.has_q2) emit_q("q2.", job.q2);
  for (const auto& [kind, path] : job.outputs) {
    const char* kname = kind == OutputKind::csv ? "csv" : kind == OutputKind::pgm ? "pgm" : "report";
    os << "out." << kname << " = " << path << "\n";
  }
  return os.str();
}

}  // namespace kfid
