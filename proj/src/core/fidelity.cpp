#include "core/fidelity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace kfid {
namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

void require_gapped(const HVector& h, const char* which) {
  if (h.gapless())
    fail(Status::gapless, std::string("fidelity undefined at a band touching (|h| = 0 for ") +
                              which + " state)");
}

// Squared norms of hhat1 +- hhat2. Near-antipodal pairs are the interesting
// regime; |hhat1 + hhat2|^2 = 2 (1 + hhat1.hhat2) evaluated componentwise
// stays accurate there where the inner-product form cancels to noise.
void unit_sum_diff(const HVector& h1, const HVector& h2, double* sum2, double* diff2) {
  double n1 = h1.norm(), n2 = h2.norm();
  int d = std::max(h1.dim, h2.dim);
  double s = 0.0, df = 0.0;
  for (int i = 0; i < d; ++i) {
    double a = (i < h1.dim ? h1.h[static_cast<std::size_t>(i)] : 0.0) / n1;
    double b = (i < h2.dim ? h2.h[static_cast<std::size_t>(i)] : 0.0) / n2;
    s += (a + b) * (a + b);
    df += (a - b) * (a - b);
  }
  *sum2 = s;
  *diff2 = df;
}

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;

// Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)) equals the trace norm of
// sqrt(rho1) sqrt(rho2); summing singular values keeps the error at machine
// epsilon even for nearly pure states.
double uhlmann_trace_from_roots(const CMat& root1, const CMat& root2) {
  Eigen::JacobiSVD<CMat> svd(root1 * root2);
  return svd.singularValues().sum();
}

// Square root of the Gibbs state of the (k,-k) pair Fock space for a 2x2
// Bloch block h.sigma. In the occupation basis {|00>, |11>, |01>, |10>} the
// pair Hamiltonian is
//   [ -h_z        h_x + i h_y   0  0 ]
//   [ h_x - i h_y  h_z          0  0 ]
//   [ 0            0            0  0 ]
//   [ 0            0            0  0 ]
// with many-body levels {-|h|, +|h|, 0, 0} and Z = 2 + 2 cosh(beta |h|).
CMat sqrt_pair_gibbs(const HVector& h, double beta) {
  CMat H = CMat::Zero(4, 4);
  H(0, 0) = -h.h[2];
  H(1, 1) = h.h[2];
  H(0, 1) = Cplx(h.h[0], h.h[1]);
  H(1, 0) = Cplx(h.h[0], -h.h[1]);
  Eigen::SelfAdjointEigenSolver<CMat> es(H);
  double emin = es.eigenvalues().minCoeff();
  Eigen::ArrayXd w = (-beta * (es.eigenvalues().array() - emin)).exp();
  Eigen::VectorXd root = (w / w.sum()).sqrt().matrix();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

// Square root of the band projector state at beta = infinity. dim 2/3:
// rho = P = (I - hhat.sigma)/2 is pure, so sqrt(rho) = P. dim 4: rho = P/2
// with rank-2 P built from the gamma matrices
//   gamma_{1,2,3} = tau_z x sigma_{x,y,z},  gamma_4 = tau_x x I,
// and P idempotent gives sqrt(rho) = P/sqrt(2).
CMat sqrt_projector_state(const HVector& h) {
  require_gapped(h, "a");
  double n = h.norm();
  if (h.dim <= 3) {
    CMat H = CMat::Zero(2, 2);
    H(0, 0) = h.h[2] / n;
    H(1, 1) = -h.h[2] / n;
    H(0, 1) = Cplx(h.h[0], -h.h[1]) / n;
    H(1, 0) = Cplx(h.h[0], h.h[1]) / n;
    return 0.5 * (CMat::Identity(2, 2) - H);
  }
  const Cplx I(0, 1);
  CMat sx(2, 2), sy(2, 2), sz(2, 2), id = CMat::Identity(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, -I, I, 0;
  sz << 1, 0, 0, -1;
  auto kron = [](const CMat& a, const CMat& b) {
    CMat out(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
    return out;
  };
  CMat tz(2, 2), tx(2, 2);
  tz << 1, 0, 0, -1;
  tx << 0, 1, 1, 0;
  CMat H = (h.h[0] * kron(tz, sx) + h.h[1] * kron(tz, sy) + h.h[2] * kron(tz, sz) +
            h.h[3] * kron(tx, id)) /
           n;
  CMat P = 0.5 * (CMat::Identity(4, 4) - H);
  return P / std::sqrt(2.0);
}

}  // namespace

double fidelity_pure(const HVector& h1, const HVector& h2) {
  require_gapped(h1, "the first");
  require_gapped(h2, "the second");
  // sqrt((1 + hhat1.hhat2)/2) = |hhat1 + hhat2| / 2
  double sum2, diff2;
  unit_sum_diff(h1, h2, &sum2, &diff2);
  return clamp01(0.5 * std::sqrt(sum2));
}

double fidelity_gibbs(const HVector& h1, const HVector& h2, const GibbsContext& ctx) {
  if (h1.dim != 3 || h2.dim != 3)
    fail(Status::unsupported, "finite-temperature fidelity is defined for the 2x2 case (dim 3)");
  if (!(ctx.beta >= 0.0) || !std::isfinite(ctx.beta))
    fail(Status::invalid_argument, "beta must be finite and non-negative");

  // Closed form, written with non-positive exponents only so large beta|h|
  // cannot overflow:
  //   F = [2 e^{-(a1+a2)/2}
  //        + sqrt((1+c)/2 (1+e^{-2(a1+a2)}) + (1-c)/2 (e^{-2a1}+e^{-2a2})
  //               + 2 e^{-(a1+a2)})]
  //       / [(1+e^{-a1})(1+e^{-a2})],   a_i = beta E_i / 2 = beta |h_i|,
  // with (1 +- c)/2 = |hhat1 +- hhat2|^2 / 4.
  double a1 = ctx.beta * h1.norm();
  double a2 = ctx.beta * h2.norm();
  // The direction terms carry sinh factors that vanish with either gap, so a
  // gapless input is well defined; the half/half split is exact there.
  double cp = 0.5, cm = 0.5;
  if (!h1.gapless() && !h2.gapless()) {
    double sum2, diff2;
    unit_sum_diff(h1, h2, &sum2, &diff2);
    cp = 0.25 * sum2;
    cm = 0.25 * diff2;
  }
  double s = a1 + a2;
  double rad = cp * (1.0 + std::exp(-2.0 * s)) +
               cm * (std::exp(-2.0 * a1) + std::exp(-2.0 * a2)) + 2.0 * std::exp(-s);
  double num = 2.0 * std::exp(-0.5 * s) + std::sqrt(std::max(0.0, rad));
  double den = (1.0 + std::exp(-a1)) * (1.0 + std::exp(-a2));
  return clamp01(num / den);
}

double fidelity_product(std::span<const double> factors) {
  double f = 1.0;
  for (double x : factors) {
    if (x < 0.0 || x > 1.0) fail(Status::invalid_argument, "fidelity factor outside [0, 1]");
    f *= x;
  }
  return f;
}

double fidelity_ising_k(double k, double h_field1, double h_field2) {
  double theta[2];
  const double hs[2] = {h_field1, h_field2};
  for (int i = 0; i < 2; ++i) {
    double e2 = 1.0 - 2.0 * hs[i] * std::cos(k) + hs[i] * hs[i];
    if (e2 <= kGaplessTol * kGaplessTol)
      fail(Status::gapless, "transverse Ising spectrum vanishes at this momentum");
    double e = std::sqrt(e2);
    theta[i] = 0.5 * std::atan2(std::sin(k) / e, (std::cos(k) - hs[i]) / e);
  }
  return std::abs(std::cos(theta[0] - theta[1]));
}

double fidelity_ising_total(std::span<const double> ks, double h_field1, double h_field2) {
  if (ks.empty()) fail(Status::invalid_argument, "momentum grid is empty");
  double prev = -1.0;
  double f = 1.0;
  for (double k : ks) {
    if (k < 0.0 || k > std::acos(-1.0) || k <= prev)
      fail(Status::invalid_argument, "momentum grid must be strictly increasing in [0, pi]");
    prev = k;
    f *= fidelity_ising_k(k, h_field1, h_field2);
  }
  return f;
}

double fidelity_oracle(const HVector& h1, const HVector& h2, double beta) {
  if (h1.dim != h2.dim) fail(Status::invalid_argument, "mismatched h dimensions");
  if (std::isinf(beta)) {
    if (h1.dim < 2 || h1.dim > 4) fail(Status::unsupported, "oracle supports dim 2, 3, 4");
    return clamp01(uhlmann_trace_from_roots(sqrt_projector_state(h1), sqrt_projector_state(h2)));
  }
  if (h1.dim != 3) fail(Status::unsupported, "finite-temperature oracle is 2x2 only (dim 3)");
  if (!(beta >= 0.0)) fail(Status::invalid_argument, "beta must be non-negative");
  return clamp01(uhlmann_trace_from_roots(sqrt_pair_gibbs(h1, beta), sqrt_pair_gibbs(h2, beta)));
}

}  // namespace kfid
