#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "core/scan.hpp"
#include "doctest.h"

using namespace kfid;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

const ParamPoint kFig2Q1{{"t", 1.0}, {"mu", -3.0}, {"m_z", 0.5}, {"delta_t", 0.6}};
const ParamPoint kFig2Q2{{"t", 1.0}, {"mu", -0.1}, {"m_z", 0.5}, {"delta_t", 0.6}};

}  // namespace

TEST_CASE("gap map values") {
  System triplet = resolve_system("triplet_up");
  ParamPoint q{{"t", 1.0}, {"mu", -0.5}, {"m_z", 0.5}, {"delta_t", 0.6}};
  Grid2D g = gap_map(triplet, q, {200, 200});
  auto [ix, iy] = nearest_node(g, Momentum::of(kPi, 0.0));
  CHECK(g.at(ix, iy) <= 1e-12);

  System rot = resolve_system("rot_flat");
  Grid2D flat = gap_map(rot, {{"phi", 1.0}}, {21, 21});
  for (double v : flat.values) CHECK(std::abs(v - 2.0) <= 1e-12);

  // massless graphene closes exactly at the Dirac points
  const ModelDef& graphene = model_by_id("graphene_mass_uniform");
  Momentum K = Momentum::of(2 * kPi / 3, 2 * kPi / (3 * std::sqrt(3.0)));
  Momentum Kp = Momentum::of(2 * kPi / 3, -2 * kPi / (3 * std::sqrt(3.0)));
  CHECK(2.0 * eval_h(graphene, ParamPoint{{"m", 0.0}}, K).norm() <= 1e-12);
  CHECK(2.0 * eval_h(graphene, ParamPoint{{"m", 0.0}}, Kp).norm() <= 1e-12);
  Grid2D gg = gap_map(resolve_system("graphene_mass_uniform"), {{"m", 0.0}}, {201, 201});
  CHECK(*std::min_element(gg.values.begin(), gg.values.end()) < 0.1);
}

TEST_CASE("gap map is identical for any worker count") {
  System sys = resolve_system("triplet_product");
  Grid2D a = gap_map(sys, kFig2Q1, {101, 101}, 1);
  Grid2D b = gap_map(sys, kFig2Q1, {101, 101}, 7);
  CHECK(a.values == b.values);
}

TEST_CASE("segment scan: triplet product chemical-potential sweep") {
  System sys = resolve_system("triplet_product");
  ParamPoint q1{{"t", 1.0}, {"mu", -6.0}, {"m_z", 0.5}, {"delta_t", 0.6}};
  ParamPoint q2{{"t", 1.0}, {"mu", 6.0}, {"m_z", 0.5}, {"delta_t", 0.6}};
  SegmentReport rep = gapless_on_segment(sys, q1, q2, {201, 201}, 400, 1e-8, 4);

  Grid2D ref;  // geometry helper for periodic distances
  ref.nx = 201;
  ref.ny = 201;
  ref.lo = {-kPi, -kPi};
  ref.hi = {kPi, kPi};

  auto mu_of = [](double s) { return -6.0 + 12.0 * s; };
  // the grid samples both cell edges, so each pi component doubles its nodes
  auto expect = [&](double kx, double ky, std::vector<double> mus, int copies) {
    Momentum k0 = Momentum::of(kx, ky);
    std::vector<double> found;
    for (const auto& ev : rep.events)
      if (ref.periodic_distance(ev.ix, ev.iy, k0) < 1e-9) found.push_back(mu_of(ev.s));
    std::sort(found.begin(), found.end());
    REQUIRE(found.size() == mus.size() * static_cast<std::size_t>(copies));
    for (std::size_t i = 0; i < found.size(); ++i)
      CHECK(found[i] == doctest::Approx(mus[i / static_cast<std::size_t>(copies)]).epsilon(1e-6));
  };
  expect(0.0, 0.0, {-4.5, -3.5}, 1);
  expect(kPi, 0.0, {-0.5, 0.5}, 2);
  expect(0.0, kPi, {-0.5, 0.5}, 2);
  expect(kPi, kPi, {3.5, 4.5}, 4);

  for (const auto& ev : rep.events) CHECK(ev.gap <= rep.tolerance);
}

TEST_CASE("segment scan: kitaev pairing flip has a single midpoint event") {
  System sys = resolve_system("kitaev1d");
  ParamPoint q1{{"t", 1.0}, {"mu", 0.0}, {"delta", 1.0}};
  ParamPoint q2{{"t", 1.0}, {"mu", 0.0}, {"delta", -1.0}};
  SegmentReport rep = gapless_on_segment(sys, q1, q2, {201, 1}, 100, 1e-8);
  // the transition momentum and its mirror image
  REQUIRE(rep.events.size() == 2);
  CHECK(rep.events[0].k[0] == doctest::Approx(-kPi / 2).epsilon(1e-12));
  CHECK(rep.events[1].k[0] == doctest::Approx(kPi / 2).epsilon(1e-12));
  for (const auto& ev : rep.events) CHECK(ev.s == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("segment scan: flat rotor never closes") {
  System sys = resolve_system("rot_flat");
  SegmentReport rep = gapless_on_segment(sys, {{"phi", 0.0}}, {{"phi", kPi}}, {15, 15}, 50, 1e-8);
  CHECK(rep.events.empty());
}

TEST_CASE("zero exponent on synthetic power laws") {
  Grid2D g;
  g.nx = 201;
  g.ny = 201;
  g.lo = {-kPi, -kPi};
  g.hi = {kPi, kPi};
  g.values.resize(201 * 201);
  Momentum k0 = Momentum::of(0.0, 0.0);  // on-grid node
  for (int p : {1, 2}) {
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) {
        double r = g.periodic_distance(ix, iy, k0);
        g.values[static_cast<std::size_t>(iy) * g.nx + ix] = std::min(1.0, std::pow(r, p));
      }
    double fit = zero_exponent(g, k0, 8.0 * g.step_x());
    CHECK(std::abs(fit - p) <= 0.02);
  }
}

TEST_CASE("zero exponent rejects bad inputs") {
  Grid2D g;
  g.nx = 41;
  g.ny = 41;
  g.lo = {-kPi, -kPi};
  g.hi = {kPi, kPi};
  g.values.assign(41 * 41, 0.9);
  CHECK_THROWS_AS(zero_exponent(g, Momentum::of(0, 0), 8.0 * g.step_x()), Error);  // no zero there
  g.values.assign(41 * 41, 0.0);
  CHECK_THROWS_AS(zero_exponent(g, Momentum::of(0, 0), 2.0 * g.step_x()), Error);  // radius too small
}

TEST_CASE("exponents at the reference-map zeros") {
  System sys = resolve_system("triplet_product");

  // single sector crossing: linear
  Grid2D fig2 = fidelity_map(sys, kFig2Q1, kFig2Q2, kInf, {201, 201}, 4);
  double p = zero_exponent(fig2, Momentum::of(kPi, 0.0), 8.0 * fig2.step_x());
  CHECK(std::abs(p - 1.0) <= 0.15);

  // both sectors crossing: quadratic
  ParamPoint left1{{"t", 1.0}, {"mu", -6.0}, {"m_z", 0.5}, {"delta_t", 0.6}};
  ParamPoint left2{{"t", 1.0}, {"mu", 6.0}, {"m_z", 0.5}, {"delta_t", 0.6}};
  Grid2D fig3 = fidelity_map(sys, left1, left2, kInf, {201, 201}, 4);
  for (auto k0 : {Momentum::of(0, 0), Momentum::of(kPi, 0.0), Momentum::of(kPi, kPi)}) {
    double q = zero_exponent(fig3, k0, 8.0 * fig3.step_x());
    CHECK(std::abs(q - 2.0) <= 0.15);
  }
}

TEST_CASE("fidelity map sentinels mark band touchings at infinite beta") {
  // theta = 0 makes the first state gapless exactly at the Dirac points.
  System sys = resolve_system("graphene_theta");
  ParamPoint qa{{"t0", 1.0}, {"theta", 0.0}};
  ParamPoint qb{{"t0", 1.0}, {"theta", 0.7}};
  // a 49x49 mesh passes through the Dirac points exactly; the scan rectangle
  // holds four primitive cells, hence eight Dirac nodes
  Grid2D f = fidelity_map(sys, qa, qb, kInf, {49, 49});
  int sentinels = 0;
  for (double v : f.values)
    if (v == kSentinel) ++sentinels;
  CHECK(sentinels == 8);
  // at finite beta the same nodes are well defined
  Grid2D ft = fidelity_map(sys, qa, qb, 2.0, {49, 49});
  for (double v : ft.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}
