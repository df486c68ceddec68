#include "core/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace kfid {
namespace {

namespace fs = std::filesystem;

void atomic_write(const std::string& path, const std::string& bytes) {
  fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(Status::io, "cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(Status::io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) fail(Status::io, "rename to " + path + " failed: " + ec.message());
}

}  // namespace

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string grid_csv_text(const Grid2D& g) {
  std::string out = "kx,ky,value\n";
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      out += format_value(g.kx(ix));
      out += ',';
      out += format_value(g.ky(iy));
      out += ',';
      out += format_value(g.at(ix, iy));
      out += '\n';
    }
  return out;
}

void write_grid_csv(const Grid2D& grid, const std::string& path) {
  atomic_write(path, grid_csv_text(grid));
}

std::string pgm_text(const Grid2D& g) {
  std::ostringstream os;
  os << "P2\n" << g.nx << " " << g.ny << "\n255\n";
  for (int iy = g.ny - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      double v = g.at(ix, iy);
      int pix = 0;
      if (v != kSentinel) {
        if (v < 0.0 || v > 1.0)
          fail(Status::invalid_argument,
               "PGM values must lie in [0, 1] or be the sentinel; got " + format_value(v));
        pix = static_cast<int>(std::floor(255.0 * v + 0.5));  // round half up
      }
      os << pix << (ix + 1 < g.nx ? " " : "");
    }
    os << "\n";
  }
  return os.str();
}

void write_pgm(const Grid2D& grid, const std::string& path) { atomic_write(path, pgm_text(grid)); }

std::string segment_csv_text(const SegmentReport& report) {
  std::string out = "kx,ky,s,gap\n";
  for (const auto& ev : report.events) {
    out += format_value(ev.k[0]);
    out += ',';
    out += format_value(ev.k.dim > 1 ? ev.k[1] : 0.0);
    out += ',';
    out += format_value(ev.s);
    out += ',';
    out += format_value(ev.gap);
    out += '\n';
  }
  return out;
}

void write_segment_csv(const SegmentReport& report, const std::string& path) {
  atomic_write(path, segment_csv_text(report));
}

void write_text(const std::string& text, const std::string& path) { atomic_write(path, text); }

}  // namespace kfid
