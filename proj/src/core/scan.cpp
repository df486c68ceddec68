#include "core/scan.hpp"

#include <algorithm>
#include <cmath>

namespace kfid {
namespace {

struct FlatSystem {
  const System* sys;
  std::vector<std::vector<double>> q_flat;  // per sector

  FlatSystem(const System& s, const ParamPoint& q) : sys(&s) {
    for (const ModelDef* m : s.sectors) q_flat.push_back(flatten_params(*m, q));
  }

  double gap(const Momentum& k) const {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sys->sectors.size(); ++i)
      g = std::min(g, 2.0 * eval_h(*sys->sectors[i], q_flat[i], k).norm());
    return g;
  }
};

double segment_gap(const System& sys, const std::vector<std::vector<double>>& f1,
                   const std::vector<std::vector<double>>& f2, double s, const Momentum& k,
                   std::vector<double>& scratch) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < sys.sectors.size(); ++m) {
    scratch.resize(f1[m].size());
    for (std::size_t i = 0; i < scratch.size(); ++i)
      scratch[i] = (1.0 - s) * f1[m][i] + s * f2[m][i];
    g = std::min(g, 2.0 * eval_h(*sys.sectors[m], scratch, k).norm());
  }
  return g;
}

}  // namespace

Grid2D gap_map(const System& sys, const ParamPoint& q, const GridSpec& spec, int workers) {
  FlatSystem fs(sys, q);
  Grid2D g = make_grid(sys.front(), spec);
  int dim_k = sys.dim_k();
  parallel_for(g.values.size(), workers, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      int ix = static_cast<int>(i) % g.nx;
      int iy = static_cast<int>(i) / g.nx;
      g.values[i] = fs.gap(g.momentum(ix, iy, dim_k));
    }
  });
  return g;
}

Grid2D fidelity_map(const System& sys, const ParamPoint& q1, const ParamPoint& q2, double beta,
                    const GridSpec& spec, int workers) {
  if (!std::isinf(beta) && !(beta >= 0.0))
    fail(Status::invalid_argument, "beta must be non-negative or infinite");
  FlatSystem fs1(sys, q1), fs2(sys, q2);
  Grid2D g = make_grid(sys.front(), spec);
  int dim_k = sys.dim_k();
  bool pure = std::isinf(beta);
  GibbsContext ctx{pure ? 0.0 : beta};
  parallel_for(g.values.size(), workers, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      int ix = static_cast<int>(i) % g.nx;
      int iy = static_cast<int>(i) / g.nx;
      Momentum k = g.momentum(ix, iy, dim_k);
      double f = 1.0;
      for (std::size_t m = 0; m < sys.sectors.size(); ++m) {
        HVector h1 = eval_h(*sys.sectors[m], fs1.q_flat[m], k);
        HVector h2 = eval_h(*sys.sectors[m], fs2.q_flat[m], k);
        if (pure) {
          if (h1.gapless() || h2.gapless()) {
            f = kSentinel;
            break;
          }
          f *= fidelity_pure(h1, h2);
        } else {
          f *= fidelity_gibbs(h1, h2, ctx);
        }
      }
      g.values[i] = f;
    }
  });
  return g;
}

SegmentReport gapless_on_segment(const System& sys, const ParamPoint& q1, const ParamPoint& q2,
                                 const GridSpec& spec, int n_s, double tol, int workers) {
  if (n_s < 2) fail(Status::invalid_argument, "segment scan needs n_s >= 2");
  FlatSystem fs1(sys, q1), fs2(sys, q2);
  Grid2D g = make_grid(sys.front(), spec);
  int dim_k = sys.dim_k();

  SegmentReport rep;
  rep.q1 = q1;
  rep.q2 = q2;
  rep.tolerance = tol;

  std::vector<std::vector<SegmentEvent>> per_node(g.values.size());
  parallel_for(g.values.size(), workers, [&](std::size_t b, std::size_t e) {
    std::vector<double> gs(static_cast<std::size_t>(n_s) + 1);
    std::vector<double> scratch;
    for (std::size_t i = b; i < e; ++i) {
      int ix = static_cast<int>(i) % g.nx;
      int iy = static_cast<int>(i) / g.nx;
      Momentum k = g.momentum(ix, iy, dim_k);
      auto gap_at = [&](double s) { return segment_gap(sys, fs1.q_flat, fs2.q_flat, s, k, scratch); };
      for (int j = 0; j <= n_s; ++j) gs[static_cast<std::size_t>(j)] = gap_at(double(j) / n_s);

      for (int j = 0; j <= n_s; ++j) {
        double gl = j > 0 ? gs[static_cast<std::size_t>(j - 1)] : std::numeric_limits<double>::infinity();
        double gr = j < n_s ? gs[static_cast<std::size_t>(j + 1)] : std::numeric_limits<double>::infinity();
        double gj = gs[static_cast<std::size_t>(j)];
        if (gj > gl || gj > gr) continue;      // not a sampled local minimum
        if (j > 0 && gj == gl) continue;       // plateau: leftmost sample owns it
        double a = j > 0 ? double(j - 1) / n_s : 0.0;
        double bnd = j < n_s ? double(j + 1) / n_s : 1.0;
        double m = double(j) / n_s, gm = gj;
        // Bisection on the bracketed minimum: halve (a, m, b) around the
        // smaller midpoint until the bracket is 1e-10 wide.
        while (bnd - a > 1e-10) {
          double u = 0.5 * (a + m), v = 0.5 * (m + bnd);
          double gu = gap_at(u), gv = gap_at(v);
          if (gu <= gm && gu <= gv) {
            bnd = m;
            m = u;
            gm = gu;
          } else if (gv <= gm) {
            a = m;
            m = v;
            gm = gv;
          } else {
            a = u;
            bnd = v;
          }
        }
        if (gm <= tol) {
          SegmentEvent ev;
          ev.ix = ix;
          ev.iy = iy;
          ev.k = k;
          ev.s = m;
          ev.gap = gm;
          per_node[i].push_back(ev);
        }
      }
    }
  });

  for (auto& v : per_node)
    for (auto& ev : v) rep.events.push_back(ev);
  return rep;
}

double zero_exponent(const Grid2D& fidelity_grid, const Momentum& k0, double radius) {
  const Grid2D& g = fidelity_grid;
  double step = std::max(g.step_x(), g.step_y());
  if (radius < 4.0 * step - 1e-12)
    fail(Status::invalid_argument, "fit radius must span at least 4 grid steps");
  auto [cx, cy] = nearest_node(g, k0);
  double f0 = g.at(cx, cy);
  if (!(f0 >= 0.0) || f0 >= 1e-6)
    fail(Status::invalid_argument, "k0 is not a fidelity zero on this grid");

  Momentum center = g.momentum(cx, cy, g.ny == 1 ? 1 : 2);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      double r = g.periodic_distance(ix, iy, center);
      if (r < step * (1.0 - 1e-9) || r > radius * (1.0 + 1e-9)) continue;
      double f = g.at(ix, iy);
      if (f <= 0.0 || f > 0.5) continue;  // sentinel, exact zero, or out of the scaling regime
      double x = std::log(r), y = std::log(f);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
  if (n < 8) fail(Status::invalid_argument, "not enough annulus points for the exponent fit");
  double denom = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / denom;
}

}  // namespace kfid
