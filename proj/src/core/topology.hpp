// Topological invariants: plaquette-summed Chern numbers for gapped 2d
// two-band models, the strong Z2 invariant of the 3d Dirac model, and inner
// products of unit h vectors at the time-reversal-invariant momenta.

#pragma once

#include <array>
#include <vector>

#include "core/models.hpp"

namespace kfid {

// Chern number of the lower band via gauge-invariant U(1) link variables on
// an n_grid x n_grid mesh spanning a period cell of the model. Requires a
// gapped spectrum (throws Status::gapless otherwise); dim_h = 3, dim_k = 2.
int chern_number(const ModelDef& m, const ParamPoint& q, int n_grid = 120);

// The eight 3d momenta with components in {0, pi}, in the conventional order.
const std::array<Momentum, 8>& tri_momenta();

// m(k) = h_4 at a TRI momentum; the sine terms vanish there exactly.
double tri_mass(const ModelDef& m, const ParamPoint& q, const Momentum& k);

// Product of sgn(m(k)) over the eight TRI momenta; +1 or -1. Throws
// Status::gapless if any mass vanishes (critical point).
int z2_strong(const ModelDef& m, const ParamPoint& q);

struct TriInner {
  Momentum k;
  double inner;  // exactly +1 or -1
};

// Unit-vector inner products at the TRI momenta, where h is mass-only.
std::vector<TriInner> tri_antipodality(const ModelDef& m, const ParamPoint& q1,
                                       const ParamPoint& q2);

}  // namespace kfid
