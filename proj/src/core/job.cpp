#include "core/job.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "core/correspondence.hpp"
#include "core/fidelity.hpp"
#include "core/io.hpp"
#include "core/scan.hpp"
#include "core/topology.hpp"

namespace kfid {
namespace {

std::string resolve_path(const ScanJob& job, const std::string& path) {
  if (job.out_dir.empty() || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(job.out_dir) / path).string();
}

void emit_q(std::ostringstream& os, const char* label, const ParamPoint& q) {
  os << label << ":";
  for (const auto& [name, value] : q) os << " " << name << "=" << format_value(value);
  os << "\n";
}

struct GridStats {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  int min_ix = 0, min_iy = 0;
  std::size_t masked = 0;
  std::size_t zeros = 0;
};

GridStats grid_stats(const Grid2D& g, double tol) {
  GridStats st;
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      double v = g.at(ix, iy);
      if (v == kSentinel) {
        ++st.masked;
        continue;
      }
      if (v <= tol) ++st.zeros;
      if (v < st.min) {
        st.min = v;
        st.min_ix = ix;
        st.min_iy = iy;
      }
      st.max = std::max(st.max, v);
    }
  return st;
}

}  // namespace

JobResult run_job(const ScanJob& job) {
  JobResult res;
  std::ostringstream rep;
  rep << "command: " << command_name(job.command) << "\n";
  if (!job.model.empty()) rep << "model: " << job.model << "\n";

  Grid2D grid;  // grid-shaped payload, if the command makes one
  bool grid_is_fidelity = false;
  double pgm_scale = 1.0;  // gap maps are rescaled to [0,1] for PGM emission
  SegmentReport seg;
  bool have_seg = false;
  bool wants_pgm = std::any_of(job.outputs.begin(), job.outputs.end(),
                               [](const auto& o) { return o.first == OutputKind::pgm; });

  switch (job.command) {
    case Command::fidelity_map: {
      System sys = resolve_system(job.model);
      emit_q(rep, "q1", job.q1);
      emit_q(rep, "q2", job.q2);
      rep << "beta: " << (std::isinf(job.beta) ? std::string("inf") : format_value(job.beta))
          << "\n";
      grid = fidelity_map(sys, job.q1, job.q2, job.beta, job.grid, job.workers);
      grid_is_fidelity = true;
      GridStats st = grid_stats(grid, job.tol);
      rep << "grid: " << grid.nx << "x" << grid.ny << "\n";
      rep << "masked nodes: " << st.masked << "\n";
      rep << "zeros (fidelity <= " << format_value(job.tol) << "): " << st.zeros << "\n";
      rep << "min fidelity: " << format_value(st.min) << " at k = ("
          << format_value(grid.kx(st.min_ix)) << ", " << format_value(grid.ky(st.min_iy))
          << ")\n";
      rep << "max fidelity: " << format_value(st.max) << "\n";
      break;
    }
    case Command::gap_map: {
      System sys = resolve_system(job.model);
      emit_q(rep, "q1", job.q1);
      grid = gap_map(sys, job.q1, job.grid, job.workers);
      GridStats st = grid_stats(grid, 1e-9);
      rep << "grid: " << grid.nx << "x" << grid.ny << "\n";
      rep << "min gap: " << format_value(st.min) << " at k = (" << format_value(grid.kx(st.min_ix))
          << ", " << format_value(grid.ky(st.min_iy)) << ")\n";
      rep << "max gap: " << format_value(st.max) << "\n";
      if (wants_pgm) {
        pgm_scale = st.max > 0.0 ? st.max : 1.0;
        rep << "pgm scale: values divided by " << format_value(pgm_scale) << "\n";
      }
      break;
    }
    case Command::chern: {
      const ModelDef& m = model_by_id(job.model);
      emit_q(rep, "q1", job.q1);
      int c = chern_number(m, job.q1, job.n_grid);
      rep << "n_grid: " << job.n_grid << "\n";
      rep << "C = " << c << "\n";
      break;
    }
    case Command::z2: {
      const ModelDef& m = model_by_id(job.model);
      emit_q(rep, "q1", job.q1);
      int nu = z2_strong(m, job.q1);
      rep << "nu = " << nu << "\n";
      if (job.has_q2) {
        emit_q(rep, "q2", job.q2);
        int nu2 = z2_strong(m, job.q2);
        rep << "nu(q2) = " << nu2 << "\n";
        for (const TriInner& ti : tri_antipodality(m, job.q1, job.q2))
          rep << "inner(" << format_value(ti.k[0]) << "," << format_value(ti.k[1]) << ","
              << format_value(ti.k[2]) << ") = " << (ti.inner > 0 ? "+1" : "-1") << "\n";
      }
      break;
    }
    case Command::segment: {
      System sys = resolve_system(job.model);
      emit_q(rep, "q1", job.q1);
      emit_q(rep, "q2", job.q2);
      seg = gapless_on_segment(sys, job.q1, job.q2, job.grid, job.n_s, job.tol, job.workers);
      have_seg = true;
      rep << "n_s: " << job.n_s << "\n";
      rep << "tol: " << format_value(job.tol) << "\n";
      rep << "events: " << seg.events.size() << "\n";
      for (const auto& ev : seg.events)
        rep << "event k = (" << format_value(ev.k[0]) << ", "
            << format_value(ev.k.dim > 1 ? ev.k[1] : 0.0) << ") s = " << format_value(ev.s)
            << " gap = " << format_value(ev.gap) << "\n";
      break;
    }
    case Command::critical_line: {
      const ModelDef& m = model_by_id(job.model);
      emit_q(rep, "q1", job.q1);
      emit_q(rep, "q2", job.q2);
      CriticalLine line = critical_line(m, job.q1, job.q2, job.k, job.tol);
      rep << "k = (";
      for (int i = 0; i < job.k.dim; ++i) rep << (i ? ", " : "") << format_value(job.k[i]);
      rep << ")\n";
      rep << "lambda = " << format_value(line.lambda) << "\n";
      emit_q(rep, "direction", line.direction);
      rep << "verified_gap = " << format_value(line.verified_gap) << "\n";
      break;
    }
    case Command::counterexamples: {
      CounterexampleReport cr = counterexample_suite(job.grid);
      rep << cr.to_text();
      break;
    }
    case Command::ising: {
      double h1 = job.q1.at("h_field");
      double h2 = job.q2.at("h_field");
      emit_q(rep, "q1", job.q1);
      emit_q(rep, "q2", job.q2);
      int n = job.grid.nx;
      std::vector<double> ks(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) ks[static_cast<std::size_t>(i)] = std::numbers::pi * i / (n - 1);
      grid.nx = n;
      grid.ny = 1;
      grid.lo = {0.0, 0.0};
      grid.hi = {std::numbers::pi, 0.0};
      grid.values.resize(ks.size());
      double total = 1.0;
      for (int i = 0; i < n; ++i) {
        double f = fidelity_ising_k(ks[static_cast<std::size_t>(i)], h1, h2);
        grid.values[static_cast<std::size_t>(i)] = f;
        total *= f;
      }
      grid_is_fidelity = true;
      rep << "k points: " << n << " on [0, pi]\n";
      rep << "F_total = " << format_value(total) << "\n";
      break;
    }
  }

  res.summary = rep.str();

  for (const auto& [kind, raw_path] : job.outputs) {
    std::string path = resolve_path(job, raw_path);
    switch (kind) {
      case OutputKind::csv:
        if (have_seg)
          write_segment_csv(seg, path);
        else
          write_grid_csv(grid, path);
        break;
      case OutputKind::pgm: {
        if (!grid_is_fidelity) {
          Grid2D scaled = grid;
          for (double& v : scaled.values) v /= pgm_scale;
          write_pgm(scaled, path);
        } else {
          write_pgm(grid, path);
        }
        break;
      }
      case OutputKind::report:
        write_text(res.summary, path);
        break;
    }
    res.artifacts.push_back(path);
  }
  return res;
}

}  // namespace kfid
