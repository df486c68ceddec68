// Machinery linking zero-fidelity pairs and gapless points: the antipodality
// ratio lambda, critical-line construction for models linear in their
// parameters, exhaustive pair scans, and the published counter-example suite.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/grid.hpp"
#include "core/models.hpp"

namespace kfid {

// lambda = |h2|/|h1| iff h2 = -lambda h1 within tol on the unit inner
// product; throws Status::not_antipodal otherwise, Status::gapless on zero
// input. The tolerance acts on hhat1.hhat2 (<= -1 + tol) because the fidelity
// has infinite angular slope at its zero.
double antipodal_lambda(const HVector& h1, const HVector& h2, double tol = 1e-8);

struct CriticalLine {
  ParamPoint direction;  // lambda q1 + q2 over the homogeneous parameters
  Momentum k;
  double lambda = 0.0;
  double verified_gap = 0.0;
};

// Builds the line of gapless points q_c(nu) = nu (lambda q1 + q2) through an
// antipodal witness at k. Every parameter on which q1 and q2 differ must be
// declared homogeneous-linear (Status::linearity otherwise); parameters
// outside that set are carried over unchanged. The gap at nu = 1 is verified
// against tol (Status::verification on failure, message carries the gap).
CriticalLine critical_line(const ModelDef& m, const ParamPoint& q1, const ParamPoint& q2,
                           const Momentum& k, double tol = 1e-8);

struct AntipodalWitness {
  int pair_a = 0;  // indices into the sample list
  int pair_b = 0;
  std::string sector;  // model id the witness lives in (product scans)
  Momentum k;
  double lambda = 0.0;
  double residual = 0.0;  // |h2 + lambda h1| at k
  double fidelity = 0.0;
};

// Exhaustively tests all sample pairs over the grid; returns every witness
// with fidelity <= tol (equivalently hhat1.hhat2 <= -1 + 2 tol^2) in
// deterministic (pair, sector, k) order. Gapless nodes are skipped.
std::vector<AntipodalWitness> zero_fidelity_pairs(const System& sys,
                                                  const std::vector<ParamPoint>& q_samples,
                                                  const GridSpec& spec, double tol = 1e-8);

struct CounterexampleCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CounterexampleReport {
  std::vector<CounterexampleCheck> checks;
  bool all_pass() const;
  std::string to_text() const;
};

// The four published absence/counter-example checks:
//   (a) flat-band rotor: zero-fidelity pairs exist yet the gap is 2 everywhere;
//   (b) restricted quadrant of the polar plane: a gapless point exists but no
//       zero-fidelity pair does;
//   (c) graphene theta interpolation: fidelity zero at every gapped k between
//       theta = 0 and pi, while the gap closes only at the Dirac points for
//       theta = n pi;
//   (d) triplet with the pairing off: the fidelity zero set becomes a finite
//       area fraction of the zone.
// Plus (e), a randomized check that perturbing a gapless parameter point in
// random directions produces an antipodal witness pair (heuristic sampling,
// at least one success required).
CounterexampleReport counterexample_suite(const GridSpec& spec = {201, 201});

}  // namespace kfid
