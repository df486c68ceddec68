#include "core/grid.hpp"

#include <cmath>
#include <mutex>
#include <thread>

namespace kfid {

double Grid2D::periodic_distance(int ix, int iy, const Momentum& k0) const {
  double dx = kx(ix) - k0[0];
  double lx = hi[0] - lo[0];
  dx -= lx * std::round(dx / lx);
  double dy = 0.0;
  if (ny > 1) {
    dy = ky(iy) - k0[1];
    double ly = hi[1] - lo[1];
    dy -= ly * std::round(dy / ly);
  }
  return std::hypot(dx, dy);
}

Grid2D make_grid(const ModelDef& m, const GridSpec& spec) {
  if (m.dim_k > 2)
    fail(Status::unsupported, "grid scans support 1d and 2d models; " + m.id + " is " +
                                  std::to_string(m.dim_k) + "d");
  if (spec.nx < 2 || (m.dim_k == 2 && spec.ny < 2))
    fail(Status::invalid_argument, "grid needs at least 2 points per axis");
  Grid2D g;
  g.nx = spec.nx;
  g.ny = m.dim_k == 1 ? 1 : spec.ny;
  g.lo = {m.bz_lo[0], m.bz_lo[1]};
  g.hi = {m.bz_hi[0], m.bz_hi[1]};
  g.values.assign(static_cast<std::size_t>(g.nx) * g.ny, 0.0);
  return g;
}

std::pair<int, int> nearest_node(const Grid2D& g, const Momentum& k0) {
  int best_ix = 0, best_iy = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      double d = g.periodic_distance(ix, iy, k0);
      if (d < best) {
        best = d;
        best_ix = ix;
        best_iy = iy;
      }
    }
  return {best_ix, best_iy};
}

void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  if (workers <= 0) workers = 1;
  std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(workers), n ? n : 1);
  if (w <= 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(w);
  std::exception_ptr first_error;
  std::mutex mu;
  std::size_t chunk = (n + w - 1) / w;
  for (std::size_t t = 0; t < w; ++t) {
    std::size_t b = t * chunk;
    std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&, b, e] {
      try {
        fn(b, e);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace kfid
