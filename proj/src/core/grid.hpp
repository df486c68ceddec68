// Momentum grids over one reciprocal cell, plus the deterministic worker-pool
// helper used by every grid loop.

#pragma once

#include <functional>
#include <vector>

#include "core/models.hpp"
#include "core/types.hpp"

namespace kfid {

struct GridSpec {
  int nx = 201;
  int ny = 201;  // ignored for 1d models
};

// Row-major values over one reciprocal cell: index = iy*nx + ix, k_x
// fastest. Nodes sample both cell edges (lo and hi), so high-symmetry points
// sit on the default odd-sized grids; lo and hi are periodic images of each
// other.
struct Grid2D {
  int nx = 0;
  int ny = 1;
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{0.0, 0.0};
  std::vector<double> values;

  double kx(int ix) const { return lo[0] + (hi[0] - lo[0]) * ix / (nx - 1); }
  double ky(int iy) const { return ny == 1 ? 0.0 : lo[1] + (hi[1] - lo[1]) * iy / (ny - 1); }
  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * nx + ix]; }
  double step_x() const { return (hi[0] - lo[0]) / (nx - 1); }
  double step_y() const { return ny == 1 ? 0.0 : (hi[1] - lo[1]) / (ny - 1); }

  Momentum momentum(int ix, int iy, int dim_k) const {
    return dim_k == 1 ? Momentum::of(kx(ix)) : Momentum::of(kx(ix), ky(iy));
  }
  // Shortest displacement to a reference point under the cell periods.
  double periodic_distance(int ix, int iy, const Momentum& k0) const;
};

// Empty grid (values zeroed) covering the model's scan cell.
Grid2D make_grid(const ModelDef& m, const GridSpec& spec);

// Index of the grid node closest to k0 under periodic distance.
std::pair<int, int> nearest_node(const Grid2D& g, const Momentum& k0);

// Runs fn(begin, end) over [0, n) split into contiguous chunks, one per
// worker. Writers own disjoint index ranges, so results are identical for any
// worker count.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace kfid
