// Closed-form fidelity kernels: pure-state overlap for any Clifford dimension,
// the finite-temperature 2x2 Gibbs formula, sector products, the transverse
// Ising product formula, and a brute-force density-matrix oracle.

#pragma once

#include <span>

#include "core/types.hpp"

namespace kfid {

// Inverse temperature plus the fixed energy convention E_k = 2|h| (the band
// gap), so the per-level Gibbs weights are e^{-+ beta |h|}.
struct GibbsContext {
  double beta = 0.0;
};

// sqrt((1 + h1.h2/(|h1||h2|))/2); identical formula for dim 2, 3, 4.
// Throws Status::gapless when either vector is (numerically) zero.
double fidelity_pure(const HVector& h1, const HVector& h2);

// Finite-temperature fidelity of the 2x2 Bloch pair (dim 3 only, beta >= 0
// finite). Well defined for gapless inputs: the direction term carries a
// sinh(beta|h|) factor and drops out.
double fidelity_gibbs(const HVector& h1, const HVector& h2, const GibbsContext& ctx);

// Product over independent sectors; zero if any factor is zero.
double fidelity_product(std::span<const double> factors);

// |cos(theta_k - theta'_k)| from the Bogoliubov angles
//   cos 2theta = (cos k - h)/e_k,  sin 2theta = sin k / e_k,
//   e_k = sqrt(1 - 2 h cos k + h^2).
// Throws Status::gapless when either spectrum vanishes at k.
double fidelity_ising_k(double k, double h_field1, double h_field2);

// Product of per-k factors over a strictly increasing grid in [0, pi].
double fidelity_ising_total(std::span<const double> ks, double h_field1, double h_field2);

// Independent test oracle: builds explicit density matrices and evaluates
// Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)) by eigendecomposition.
//   beta finite   -> dim 3 only; 4x4 Gibbs state of the (k,-k) pair Fock space.
//   beta infinite -> dim 2/3 (2x2 band projector) or dim 4 (rank-2 Clifford
//                    projector, rho = P/2).
double fidelity_oracle(const HVector& h1, const HVector& h2, double beta);

}  // namespace kfid
