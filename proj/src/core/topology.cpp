#include "core/topology.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace kfid {
namespace {

using Cplx = std::complex<double>;

// Lower-band eigenvector of h.sigma, branch chosen away from the degenerate
// pole: (h_z - |h|, h_x + i h_y) for h_z <= 0, (-(h_x - i h_y), h_z + |h|)
// otherwise. Any per-node phase cancels in the plaquette product.
std::array<Cplx, 2> lower_band(const double h[3]) {
  double n = std::sqrt(h[0] * h[0] + h[1] * h[1] + h[2] * h[2]);
  std::array<Cplx, 2> u;
  if (h[2] <= 0.0) {
    u[0] = Cplx(h[2] - n, 0.0);
    u[1] = Cplx(h[0], h[1]);
  } else {
    u[0] = Cplx(-h[0], h[1]);
    u[1] = Cplx(h[2] + n, 0.0);
  }
  double norm = std::sqrt(std::norm(u[0]) + std::norm(u[1]));
  u[0] /= norm;
  u[1] /= norm;
  return u;
}

Cplx link(const std::array<Cplx, 2>& a, const std::array<Cplx, 2>& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

}  // namespace

int chern_number(const ModelDef& m, const ParamPoint& q, int n_grid) {
  if (m.dim_k != 2 || m.dim_h != 3)
    fail(Status::unsupported, "Chern numbers need a 2d model with dim_h = 3: " + m.id);
  if (n_grid < 8) fail(Status::invalid_argument, "n_grid too small");
  std::vector<double> flat = flatten_params(m, q);

  // Mesh k(i,j) = lo + (i/N) v1 + (j/N) v2 over the model's exact period
  // cell, closed into a torus by h(k + v) = h(k).
  const auto& v1 = m.periods[0];
  const auto& v2 = m.periods[1];
  const double kx0 = m.bz_lo[0], ky0 = m.bz_lo[1];
  const int N = n_grid;

  std::vector<std::array<Cplx, 2>> u(static_cast<std::size_t>(N) * N);
  double min_gap = std::numeric_limits<double>::infinity();
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      double k[2] = {kx0 + v1[0] * i / N + v2[0] * j / N, ky0 + v1[1] * i / N + v2[1] * j / N};
      double h[3], h0;
      m.eval(flat.data(), k, h, &h0);
      min_gap = std::min(min_gap, 2.0 * std::sqrt(h[0] * h[0] + h[1] * h[1] + h[2] * h[2]));
      u[static_cast<std::size_t>(j) * N + i] = lower_band(h);
    }
  if (min_gap <= 1e-9)
    fail(Status::gapless, "spectrum is gapless; the Chern number is undefined");

  auto at = [&](int i, int j) -> const std::array<Cplx, 2>& {
    return u[static_cast<std::size_t>((j + N) % N) * N + (i + N) % N];
  };

  double flux = 0.0;
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      Cplx w = link(at(i, j), at(i + 1, j)) * link(at(i + 1, j), at(i + 1, j + 1)) *
               link(at(i + 1, j + 1), at(i, j + 1)) * link(at(i, j + 1), at(i, j));
      flux += std::arg(w);
    }

  // The period cell covers `cell_copies` primitive reciprocal cells. The
  // overall sign is fixed so ti_toy1 carries C = 2 above its t2 = t1p - d/4
  // line (checked against a direct Berry-curvature quadrature).
  double c = -flux / (2.0 * std::numbers::pi * m.cell_copies);
  return static_cast<int>(std::lround(c));
}

const std::array<Momentum, 8>& tri_momenta() {
  static const double p = std::numbers::pi;
  static const std::array<Momentum, 8> pts = {
      Momentum::of(0, 0, 0), Momentum::of(p, 0, 0), Momentum::of(0, p, 0), Momentum::of(0, 0, p),
      Momentum::of(p, p, 0), Momentum::of(0, p, p), Momentum::of(p, 0, p), Momentum::of(p, p, p)};
  return pts;
}

double tri_mass(const ModelDef& m, const ParamPoint& q, const Momentum& k) {
  if (m.dim_h != 4 || m.dim_k != 3)
    fail(Status::unsupported, "TRI masses need the 3d Dirac model");
  std::vector<double> flat = flatten_params(m, q);
  // cos(k_i) with k_i in {0, pi} is exactly +-1; evaluate from rounded signs
  // so the mass is exact.
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) sum += k[i] > 1.0 ? -1.0 : 1.0;
  return flat[1] - flat[2] * sum;  // m - t * sum(cos k_i)
}

int z2_strong(const ModelDef& m, const ParamPoint& q) {
  int nu = 1;
  for (const Momentum& k : tri_momenta()) {
    double mass = tri_mass(m, q, k);
    if (std::abs(mass) <= kGaplessTol)
      fail(Status::gapless, "mass vanishes at a TRI momentum (critical point)");
    if (mass < 0.0) nu = -nu;
  }
  return nu;
}

std::vector<TriInner> tri_antipodality(const ModelDef& m, const ParamPoint& q1,
                                       const ParamPoint& q2) {
  std::vector<TriInner> out;
  out.reserve(8);
  for (const Momentum& k : tri_momenta()) {
    double m1 = tri_mass(m, q1, k);
    double m2 = tri_mass(m, q2, k);
    if (std::abs(m1) <= kGaplessTol || std::abs(m2) <= kGaplessTol)
      fail(Status::gapless, "mass vanishes at a TRI momentum (critical point)");
    out.push_back({k, (m1 < 0) == (m2 < 0) ? 1.0 : -1.0});
  }
  return out;
}

}  // namespace kfid
