#include <cmath>
#include <numbers>
#include <random>

#include "core/models.hpp"
#include "doctest.h"

using namespace kfid;

namespace {

constexpr double kPi = std::numbers::pi;

ParamPoint random_point(const ModelDef& m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  ParamPoint q;
  for (const auto& name : m.schema) q[name] = u(rng);
  return q;
}

Momentum random_k(const ModelDef& m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-kPi, kPi);
  Momentum k;
  k.dim = m.dim_k;
  for (int i = 0; i < m.dim_k; ++i) k.k[static_cast<std::size_t>(i)] = u(rng);
  return k;
}

}  // namespace

TEST_CASE("catalog is stable and self-describing") {
  const auto& cat = catalog();
  CHECK(cat.size() == 14);
  const ModelDef& kit = model_by_id("kitaev1d");
  CHECK(kit.dim_k == 1);
  CHECK(kit.dim_h == 3);
  const ModelDef& dirac = model_by_id("dirac3d_ti");
  CHECK(dirac.dim_h == 4);
  CHECK(dirac.dim_k == 3);
  // repeated calls hand back the same ordering
  for (std::size_t i = 0; i < cat.size(); ++i) CHECK(cat[i].id == catalog()[i].id);
  CHECK_THROWS_AS(model_by_id("no_such_model"), Error);
}

TEST_CASE("closed-form values") {
  ParamPoint q_triplet{{"t", 1.0}, {"mu", -4.0}, {"m_z", 0.0}, {"delta_t", 0.6}};
  HVector h = eval_h(model_by_id("triplet_up"), q_triplet, Momentum::of(0.0, 0.0));
  CHECK(h.h[0] == 0.0);
  CHECK(h.h[1] == 0.0);
  CHECK(h.h[2] == 0.0);

  ParamPoint q_kit{{"t", 1.0}, {"mu", 0.0}, {"delta", 1.0}};
  h = eval_h(model_by_id("kitaev1d"), q_kit, Momentum::of(kPi / 2));
  CHECK(h.h[0] == 0.0);
  CHECK(h.h[1] == doctest::Approx(2.0));
  CHECK(std::abs(h.h[2]) < 1e-12);

  ParamPoint q_dirac{{"v", 1.0}, {"m", 1.0}, {"t", 1.5}};
  h = eval_h(model_by_id("dirac3d_ti"), q_dirac, Momentum::of(0.0, 0.0, kPi));
  CHECK(std::abs(h.h[0]) < 1e-12);
  CHECK(std::abs(h.h[1]) < 1e-12);
  CHECK(std::abs(h.h[2]) < 1e-12);
  CHECK(h.h[3] == doctest::Approx(-0.5));
}

TEST_CASE("band energies") {
  auto [lo, hi] = band_energies(model_by_id("rot_flat"), {{"phi", 0.3}}, Momentum::of(0.7, -1.1));
  CHECK(lo == doctest::Approx(-1.0));
  CHECK(hi == doctest::Approx(1.0));

  auto [lo2, hi2] = band_energies(
      model_by_id("triplet_up"), {{"t", 1.0}, {"mu", -4.0}, {"m_z", 0.0}, {"delta_t", 0.6}},
      Momentum::of(0.0, 0.0));
  CHECK(lo2 == 0.0);
  CHECK(hi2 == 0.0);

  auto [lo3, hi3] = band_energies(model_by_id("kitaev1d"), {{"t", 1.0}, {"mu", 0.0}, {"delta", 1.0}},
                                  Momentum::of(kPi / 2));
  CHECK(lo3 == doctest::Approx(-2.0));
  CHECK(hi3 == doctest::Approx(2.0));
}

TEST_CASE("error paths") {
  const ModelDef& m = model_by_id("kitaev1d");
  CHECK_THROWS_WITH_AS(eval_h(m, ParamPoint{{"t", 1.0}}, Momentum::of(0.1)),
                       doctest::Contains("expects"), Error);
  ParamPoint bad{{"t", 1.0}, {"mu", 0.0}, {"delta_typo", 1.0}};
  CHECK_THROWS_AS(eval_h(m, bad, Momentum::of(0.1)), Error);
  ParamPoint ok{{"t", 1.0}, {"mu", 0.0}, {"delta", 1.0}};
  CHECK_THROWS_AS(eval_h(m, ok, Momentum::of(0.1, 0.2)), Error);  // k dimension
}

TEST_CASE("h is finite with ordered bands everywhere") {
  std::mt19937_64 rng(1);
  for (const ModelDef& m : catalog()) {
    for (int trial = 0; trial < 50; ++trial) {
      ParamPoint q = random_point(m, rng);
      Momentum k = random_k(m, rng);
      HVector h = eval_h(m, q, k);
      for (int i = 0; i < h.dim; ++i) CHECK(std::isfinite(h.h[static_cast<std::size_t>(i)]));
      auto [lo, hi] = band_energies(m, q, k);
      CHECK(hi >= lo);
      CHECK(std::abs((hi - lo) - 2.0 * h.norm()) <= 1e-12);
    }
  }
}

TEST_CASE("joint homogeneous linearity on the declared parameters") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> uab(-2.0, 2.0);
  for (const ModelDef& m : catalog()) {
    bool any_linear = false;
    for (bool b : m.linear) any_linear |= b;
    if (!any_linear) continue;
    for (int trial = 0; trial < 5; ++trial) {
      ParamPoint base = random_point(m, rng);
      ParamPoint q1 = base, q2 = base;
      for (std::size_t i = 0; i < m.schema.size(); ++i)
        if (m.linear[i]) {
          q1[m.schema[i]] = uab(rng);
          q2[m.schema[i]] = uab(rng);
        }
      double a = uab(rng), b = uab(rng);
      ParamPoint qc = base;
      for (std::size_t i = 0; i < m.schema.size(); ++i)
        if (m.linear[i]) qc[m.schema[i]] = a * q1[m.schema[i]] + b * q2[m.schema[i]];
      double worst = 0.0;
      for (int t = 0; t < 100; ++t) {
        Momentum k = random_k(m, rng);
        HVector hc = eval_h(m, qc, k);
        HVector h1 = eval_h(m, q1, k);
        HVector h2 = eval_h(m, q2, k);
        double err = 0.0;
        for (int i = 0; i < hc.dim; ++i) {
          double d = hc.h[static_cast<std::size_t>(i)] - a * h1.h[static_cast<std::size_t>(i)] -
                     b * h2.h[static_cast<std::size_t>(i)];
          err += d * d;
        }
        worst = std::max(worst, std::sqrt(err));
      }
      CHECK(worst <= 1e-12);
    }
  }
}

TEST_CASE("periodicity under the declared reciprocal vectors") {
  std::mt19937_64 rng(3);
  for (const ModelDef& m : catalog()) {
    for (int trial = 0; trial < 20; ++trial) {
      ParamPoint q = random_point(m, rng);
      Momentum k = random_k(m, rng);
      HVector h = eval_h(m, q, k);
      for (int p = 0; p < m.dim_k; ++p) {
        Momentum ks = k;
        for (int i = 0; i < m.dim_k; ++i)
          ks.k[static_cast<std::size_t>(i)] += m.periods[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)];
        HVector hs = eval_h(m, q, ks);
        for (int i = 0; i < h.dim; ++i)
          CHECK(std::abs(hs.h[static_cast<std::size_t>(i)] - h.h[static_cast<std::size_t>(i)]) <=
                1e-12);
        CHECK(std::abs(hs.h0 - h.h0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("triplet sectors mirror under m_z -> -m_z with h_x negated") {
  std::mt19937_64 rng(4);
  const ModelDef& up = model_by_id("triplet_up");
  const ModelDef& down = model_by_id("triplet_down");
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    ParamPoint q{{"t", u(rng)}, {"mu", u(rng)}, {"m_z", u(rng)}, {"delta_t", u(rng)}};
    ParamPoint qm = q;
    qm["m_z"] = -q["m_z"];
    Momentum k = random_k(up, rng);
    HVector hd = eval_h(down, q, k);
    HVector hu = eval_h(up, qm, k);
    CHECK(std::abs(hd.h[0] + hu.h[0]) <= 1e-12);
    CHECK(std::abs(hd.h[1] - hu.h[1]) <= 1e-12);
    CHECK(std::abs(hd.h[2] - hu.h[2]) <= 1e-12);
  }
}

TEST_CASE("resolve_system handles the product target") {
  System s = resolve_system("triplet_product");
  CHECK(s.is_product());
  CHECK(s.sectors.size() == 2);
  CHECK(s.dim_k() == 2);
  System single = resolve_system("haldane");
  CHECK(!single.is_product());
  CHECK_THROWS_AS(resolve_system("nope"), Error);
}
