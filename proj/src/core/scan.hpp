// Brillouin-zone scans: gap maps, fidelity maps, gapless-point searches along
// straight parameter segments, and power-law fits around fidelity zeros.

#pragma once

#include <vector>

#include "core/fidelity.hpp"
#include "core/grid.hpp"
#include "core/models.hpp"

namespace kfid {

// Fidelity grids mark band touchings (where the zero-temperature state is
// undefined) with this sentinel instead of a value.
inline constexpr double kSentinel = -1.0;

// values[i] = 2|h(q, k_i)| for a single model; for a product system, the
// minimum over sectors (a touching in either sector closes the product gap).
Grid2D gap_map(const System& sys, const ParamPoint& q, const GridSpec& spec, int workers = 1);

// Pure-state (beta infinite) or Gibbs fidelity per k; product over sectors.
// At infinite beta, nodes where either state is gapless get the sentinel.
Grid2D fidelity_map(const System& sys, const ParamPoint& q1, const ParamPoint& q2, double beta,
                    const GridSpec& spec, int workers = 1);

struct SegmentEvent {
  int ix = 0;
  int iy = 0;
  Momentum k;
  double s = 0.0;    // location on q(s) = (1-s) q1 + s q2
  double gap = 0.0;  // refined minimum, <= tolerance
};

struct SegmentReport {
  ParamPoint q1, q2;
  double tolerance = 0.0;
  std::vector<SegmentEvent> events;  // sorted by (k row-major, s)
};

// Scans s over {0, 1/n_s, ..., 1} for every grid k, refines each bracketed
// local minimum of the gap to |ds| <= 1e-10, and reports minima with
// gap <= tol.
SegmentReport gapless_on_segment(const System& sys, const ParamPoint& q1, const ParamPoint& q2,
                                 const GridSpec& spec, int n_s, double tol, int workers = 1);

// Least-squares slope p of log F against log|k - k0| over the annulus
// [one grid step, radius], keeping points with 0 < F <= 0.5. k0 must sit on a
// fidelity zero (value at the nearest node below 1e-6).
double zero_exponent(const Grid2D& fidelity_grid, const Momentum& k0, double radius);

}  // namespace kfid
