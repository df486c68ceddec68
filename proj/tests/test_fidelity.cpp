#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "core/fidelity.hpp"
#include "core/models.hpp"
#include "doctest.h"

using namespace kfid;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

HVector hv3(double x, double y, double z) {
  HVector h;
  h.dim = 3;
  h.h = {x, y, z, 0.0};
  return h;
}

HVector hv4(double x, double y, double z, double w) {
  HVector h;
  h.dim = 4;
  h.h = {x, y, z, w};
  return h;
}

HVector random_unit(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  HVector h;
  h.dim = dim;
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (int i = 0; i < dim; ++i) {
      h.h[static_cast<std::size_t>(i)] = g(rng);
      n2 += h.h[static_cast<std::size_t>(i)] * h.h[static_cast<std::size_t>(i)];
    }
  } while (n2 < 1e-4);
  for (int i = 0; i < dim; ++i) h.h[static_cast<std::size_t>(i)] /= std::sqrt(n2);
  return h;
}

HVector scaled(const HVector& h, double c) {
  HVector out = h;
  for (int i = 0; i < out.dim; ++i) out.h[static_cast<std::size_t>(i)] *= c;
  return out;
}

}  // namespace

TEST_CASE("pure-state values") {
  HVector h = hv3(0.3, -1.2, 0.5);
  CHECK(fidelity_pure(h, h) == doctest::Approx(1.0));
  CHECK(fidelity_pure(hv3(0, 0, 1), hv3(0, 0, -1)) == 0.0);
  CHECK(fidelity_pure(hv3(1, 0, 0), hv3(0, 1, 0)) == doctest::Approx(std::sqrt(0.5)));

  // triplet product inputs at k = (pi, 0) with the two chemical potentials of
  // the reference map: the up sector is exactly antipodal there.
  const ModelDef& up = model_by_id("triplet_up");
  ParamPoint q1{{"t", 1.0}, {"mu", -3.0}, {"m_z", 0.5}, {"delta_t", 0.6}};
  ParamPoint q2{{"t", 1.0}, {"mu", -0.1}, {"m_z", 0.5}, {"delta_t", 0.6}};
  Momentum k = Momentum::of(kPi, 0.0);
  double f_up = fidelity_pure(eval_h(up, q1, k), eval_h(up, q2, k));
  CHECK(f_up <= 1e-12);
  const ModelDef& down = model_by_id("triplet_down");
  double f_down = fidelity_pure(eval_h(down, q1, k), eval_h(down, q2, k));
  double product = fidelity_product(std::vector<double>{f_up, f_down});
  CHECK(product <= 1e-12);
}

TEST_CASE("pure-state errors on gapless input") {
  HVector zero = hv3(0, 0, 0);
  CHECK_THROWS_AS(fidelity_pure(zero, hv3(1, 0, 0)), Error);
  try {
    fidelity_pure(hv3(1, 0, 0), zero);
    FAIL("expected gapless error");
  } catch (const Error& e) {
    CHECK(e.code() == Status::gapless);
  }
}

TEST_CASE("symmetry and scale invariance") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uc(1e-3, 1e3);
  for (int trial = 0; trial < 200; ++trial) {
    int dim = trial % 2 ? 3 : 4;
    HVector h1 = random_unit(dim, rng);
    HVector h2 = random_unit(dim, rng);
    double f12 = fidelity_pure(h1, h2);
    double f21 = fidelity_pure(h2, h1);
    CHECK(std::abs(f12 - f21) <= 1e-12);
    double fs = fidelity_pure(scaled(h1, uc(rng)), scaled(h2, uc(rng)));
    CHECK(std::abs(fs - f12) <= 1e-12);
  }
}

TEST_CASE("zero-padding a 2x2 vector into the Clifford form changes nothing") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    HVector h1 = random_unit(3, rng);
    HVector h2 = random_unit(3, rng);
    HVector p1 = hv4(h1.h[0], h1.h[1], h1.h[2], 0.0);
    HVector p2 = hv4(h2.h[0], h2.h[1], h2.h[2], 0.0);
    CHECK(std::abs(fidelity_pure(h1, h2) - fidelity_pure(p1, p2)) <= 1e-12);
  }
}

TEST_CASE("finite-temperature limits") {
  std::mt19937_64 rng(13);
  HVector h1 = scaled(random_unit(3, rng), 1.7);
  HVector h2 = scaled(random_unit(3, rng), 0.4);

  CHECK(fidelity_gibbs(h1, h2, {0.0}) == doctest::Approx(1.0));  // maximally mixed states
  for (double beta : {0.3, 2.0, 17.0}) CHECK(fidelity_gibbs(h1, h1, {beta}) == doctest::Approx(1.0));

  // large-beta limit reproduces the pure-state formula
  for (int trial = 0; trial < 50; ++trial) {
    HVector u1 = random_unit(3, rng);
    HVector u2 = random_unit(3, rng);
    CHECK(std::abs(fidelity_gibbs(u1, u2, {40.0}) - fidelity_pure(u1, u2)) <= 1e-6);
  }
}

TEST_CASE("finite-temperature edge cases") {
  HVector h = hv3(0.2, -0.4, 1.0);
  CHECK_THROWS_AS(fidelity_gibbs(h, h, {-1.0}), Error);
  HVector h4 = hv4(1, 0, 0, 0);
  CHECK_THROWS_AS(fidelity_gibbs(h4, h4, {1.0}), Error);

  // a gapless input is a well-defined maximally mixed pair state
  HVector zero = hv3(0, 0, 0);
  double f = fidelity_gibbs(zero, h, {2.0});
  CHECK(f > 0.0);
  CHECK(f <= 1.0);
  CHECK(f == doctest::Approx(fidelity_oracle(zero, h, 2.0)));

  // huge beta * |h| must not overflow
  CHECK(std::isfinite(fidelity_gibbs(scaled(h, 1e3), h, {1e4})));
}

TEST_CASE("antipodal smoothing is strictly positive and monotone in beta") {
  for (double ratio : {1.0, 2.5}) {
    HVector h1 = hv3(0, 0, 1.0);
    HVector h2 = hv3(0, 0, -ratio);
    double prev = 1.0;
    for (double beta = 0.5; beta <= 100.0; beta *= 2.0) {
      double f = fidelity_gibbs(h1, h2, {beta});
      CHECK(f > 0.0);
      CHECK(f < prev);
      prev = f;
    }
    CHECK(prev < 1e-3);  // heading to zero
  }
}

TEST_CASE("product over sectors") {
  CHECK(fidelity_product(std::vector<double>{1.0, 1.0}) == 1.0);
  CHECK(fidelity_product(std::vector<double>{0.0, 0.9}) == 0.0);
  CHECK(fidelity_product(std::vector<double>{0.8, 0.5}) == doctest::Approx(0.4));
  CHECK_THROWS_AS(fidelity_product(std::vector<double>{1.2}), Error);
}

TEST_CASE("Ising momentum-zero sign rule") {
  CHECK(fidelity_ising_k(0.0, 0.2, 0.8) == doctest::Approx(1.0));
  CHECK(fidelity_ising_k(0.0, 0.5, 1.5) == doctest::Approx(0.0));
  for (double k : {0.0, 0.3, 1.1, 2.9}) CHECK(fidelity_ising_k(k, 0.4, 0.4) == doctest::Approx(1.0));
  CHECK_THROWS_AS(fidelity_ising_k(0.0, 1.0, 0.5), Error);  // gapless spectrum at h = 1
}

TEST_CASE("Ising total equals the product of embedded planar fidelities") {
  const ModelDef& ising = model_by_id("ising_tf");
  const int n = 64;
  std::vector<double> ks(n);
  for (int i = 0; i < n; ++i) ks[static_cast<std::size_t>(i)] = kPi * (i + 0.3) / n;
  double h1 = 0.2, h2 = 0.8;
  double total = fidelity_ising_total(ks, h1, h2);
  double product = 1.0;
  for (double k : ks) {
    HVector a = eval_h(ising, ParamPoint{{"h_field", h1}}, Momentum::of(k));
    HVector b = eval_h(ising, ParamPoint{{"h_field", h2}}, Momentum::of(k));
    product *= fidelity_pure(a, b);
  }
  CHECK(std::abs(total - product) <= 1e-12);

  CHECK(fidelity_ising_total(std::vector<double>{0.0, 0.5}, 0.5, 1.5) == doctest::Approx(0.0));
  CHECK(fidelity_ising_total(std::vector<double>{0.1, 1.0, 2.0}, 0.4, 0.4) == doctest::Approx(1.0));
  CHECK_THROWS_AS(fidelity_ising_total(std::vector<double>{0.5, 0.2}, 0.1, 0.2), Error);
  CHECK_THROWS_AS(fidelity_ising_total(std::vector<double>{}, 0.1, 0.2), Error);
}

TEST_CASE("closed forms agree with the density-matrix oracle") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> unorm(0.1, 3.0);

  // identical states first
  HVector h = scaled(random_unit(3, rng), 1.3);
  CHECK(fidelity_oracle(h, h, 5.0) == doctest::Approx(1.0));
  CHECK(fidelity_oracle(h, h, kInf) == doctest::Approx(1.0));

  for (double beta : {0.5, 5.0, 50.0}) {
    double worst = 0.0;
    for (int trial = 0; trial < 300; ++trial) {
      HVector h1 = scaled(random_unit(3, rng), unorm(rng));
      HVector h2 = scaled(random_unit(3, rng), unorm(rng));
      double closed = fidelity_gibbs(h1, h2, {beta});
      double oracle = fidelity_oracle(h1, h2, beta);
      worst = std::max(worst, std::abs(closed - oracle));
    }
    CHECK(worst <= 1e-10);
  }

  for (int dim : {3, 4}) {
    double worst = 0.0;
    for (int trial = 0; trial < 300; ++trial) {
      HVector h1 = scaled(random_unit(dim, rng), unorm(rng));
      HVector h2 = scaled(random_unit(dim, rng), unorm(rng));
      worst = std::max(worst, std::abs(fidelity_pure(h1, h2) - fidelity_oracle(h1, h2, kInf)));
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("oracle rejects what it cannot represent") {
  HVector h4 = hv4(0.3, 0.1, -0.2, 0.9);
  CHECK_THROWS_AS(fidelity_oracle(h4, h4, 2.0), Error);  // finite beta needs dim 3
  HVector h3 = hv3(1, 0, 0);
  CHECK_THROWS_AS(fidelity_oracle(h3, hv4(1, 0, 0, 0), kInf), Error);
}
