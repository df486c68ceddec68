#include "core/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "core/fidelity.hpp"
#include "core/scan.hpp"

namespace kfid {
namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

double antipodal_lambda(const HVector& h1, const HVector& h2, double tol) {
  double n1 = h1.norm(), n2 = h2.norm();
  if (n1 <= kGaplessTol || n2 <= kGaplessTol)
    fail(Status::gapless, "antipodality is undefined for a zero vector");
  double c = dot(h1, h2) / (n1 * n2);
  if (c > -1.0 + tol)
    fail(Status::not_antipodal,
         "vectors are not antipodal (unit inner product " + fmt(c) + ")");
  return n2 / n1;
}

CriticalLine critical_line(const ModelDef& m, const ParamPoint& q1, const ParamPoint& q2,
                           const Momentum& k, double tol) {
  HVector h1 = eval_h(m, q1, k);
  HVector h2 = eval_h(m, q2, k);
  double lambda = antipodal_lambda(h1, h2, tol);

  std::vector<double> f1 = flatten_params(m, q1);
  std::vector<double> f2 = flatten_params(m, q2);

  CriticalLine line;
  line.lambda = lambda;
  line.k = k;
  for (std::size_t i = 0; i < m.schema.size(); ++i) {
    const std::string& name = m.schema[i];
    double a = f1[i], b = f2[i];
    if (m.linear[i]) {
      line.direction[name] = lambda * a + b;
    } else {
      if (a != b)
        fail(Status::linearity, "model " + m.id + " is not declared homogeneous-linear in \"" +
                                    name + "\", which differs between q1 and q2");
      line.direction[name] = a;
    }
  }

  line.verified_gap = 2.0 * eval_h(m, line.direction, k).norm();
  if (line.verified_gap > tol) {
    std::ostringstream os;
    os << "critical-line verification failed: gap " << line.verified_gap << " exceeds tol " << tol;
    fail(Status::verification, os.str());
  }
  return line;
}

std::vector<AntipodalWitness> zero_fidelity_pairs(const System& sys,
                                                  const std::vector<ParamPoint>& q_samples,
                                                  const GridSpec& spec, double tol) {
  if (q_samples.size() < 2) fail(Status::invalid_argument, "need at least 2 parameter samples");
  std::vector<std::vector<std::vector<double>>> flat(q_samples.size());
  for (std::size_t i = 0; i < q_samples.size(); ++i)
    for (const ModelDef* m : sys.sectors) flat[i].push_back(flatten_params(*m, q_samples[i]));

  Grid2D g = make_grid(sys.front(), spec);
  int dim_k = sys.dim_k();

  std::vector<AntipodalWitness> out;
  for (std::size_t a = 0; a < q_samples.size(); ++a)
    for (std::size_t b = a + 1; b < q_samples.size(); ++b)
      for (std::size_t s = 0; s < sys.sectors.size(); ++s) {
        const ModelDef& model = *sys.sectors[s];
        for (int iy = 0; iy < g.ny; ++iy)
          for (int ix = 0; ix < g.nx; ++ix) {
            Momentum k = g.momentum(ix, iy, dim_k);
            HVector h1 = eval_h(model, flat[a][s], k);
            HVector h2 = eval_h(model, flat[b][s], k);
            double n1 = h1.norm(), n2 = h2.norm();
            if (n1 <= kGaplessTol || n2 <= kGaplessTol) continue;  // masked node
            // fidelity <= tol iff hhat1.hhat2 <= -1 + 2 tol^2
            double f = fidelity_pure(h1, h2);
            if (f > tol) continue;
            AntipodalWitness w;
            w.pair_a = static_cast<int>(a);
            w.pair_b = static_cast<int>(b);
            w.sector = model.id;
            w.k = k;
            w.lambda = n2 / n1;
            double r2 = 0.0;
            for (int i = 0; i < h1.dim; ++i) {
              double d = h2.h[static_cast<std::size_t>(i)] + w.lambda * h1.h[static_cast<std::size_t>(i)];
              r2 += d * d;
            }
            w.residual = std::sqrt(r2);
            w.fidelity = f;
            out.push_back(w);
          }
      }
  return out;
}

bool CounterexampleReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

std::string CounterexampleReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks)
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.name << ": " << c.detail << "\n";
  os << (all_pass() ? "all checks passed\n" : "some checks FAILED\n");
  return os.str();
}

CounterexampleReport counterexample_suite(const GridSpec& spec) {
  CounterexampleReport rep;

  // (a) flat-band rotor: antipodal pairs exist while no gap ever closes.
  {
    System sys = resolve_system("rot_flat");
    std::vector<ParamPoint> samples;
    for (int i = 0; i < 8; ++i) samples.push_back({{"phi", i * kPi / 4}});
    GridSpec small{9, 9};
    auto witnesses = zero_fidelity_pairs(sys, samples, small);
    double min_gap = std::numeric_limits<double>::infinity();
    for (const auto& q : samples) {
      Grid2D g = gap_map(sys, q, small);
      min_gap = std::min(min_gap, *std::min_element(g.values.begin(), g.values.end()));
    }
    bool pass = !witnesses.empty() && std::abs(min_gap - 2.0) <= 1e-12;
    rep.checks.push_back({"flat rotor: zero-fidelity pairs without gapless points", pass,
                          std::to_string(witnesses.size()) + " witnesses, min gap " + fmt(min_gap)});
  }

  // (b) restricted polar quadrant: gapless at rho = 0, fidelity never zero.
  {
    System sys = resolve_system("polar_plane");
    double gap0 = 2.0 * eval_h(sys.front(), ParamPoint{{"rho", 0.0}, {"phi", 0.3}},
                               Momentum::of(0.1, -0.2))
                            .norm();
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> urho(0.0, 1.0), uphi(0.0, kPi / 2);
    std::vector<ParamPoint> samples;
    for (int i = 0; i < 50; ++i) samples.push_back({{"rho", urho(rng)}, {"phi", uphi(rng)}});
    auto witnesses = zero_fidelity_pairs(sys, samples, GridSpec{5, 5});
    bool pass = gap0 <= kGaplessTol && witnesses.empty();
    rep.checks.push_back({"restricted polar quadrant: gapless point without zero-fidelity pairs",
                          pass,
                          "gap at rho=0 is " + fmt(gap0) + ", " + std::to_string(witnesses.size()) +
                              " witnesses among 50 samples"});
  }

  // (c) graphene theta interpolation: fidelity zero at every gapped k between
  // theta = 0 and pi; the spectrum closes only at the Dirac points, only for
  // theta = n pi.
  {
    const ModelDef& m = model_by_id("graphene_theta");
    System sys = resolve_system("graphene_theta");
    ParamPoint qa{{"t0", 1.0}, {"theta", 0.0}};
    ParamPoint qb{{"t0", 1.0}, {"theta", kPi}};
    Grid2D f = fidelity_map(sys, qa, qb, std::numeric_limits<double>::infinity(), spec);
    double max_f = -1.0;
    int masked = 0;
    for (double v : f.values) {
      if (v == kSentinel)
        ++masked;
      else
        max_f = std::max(max_f, v);
    }
    const Momentum K = Momentum::of(2 * kPi / 3, 2 * kPi / (3 * std::sqrt(3.0)));
    const Momentum Kp = Momentum::of(2 * kPi / 3, -2 * kPi / (3 * std::sqrt(3.0)));
    double gap_K = 2.0 * eval_h(m, qa, K).norm();
    double gap_Kp = 2.0 * eval_h(m, qa, Kp).norm();
    bool gapped_away = true;
    for (double theta : {0.4, 1.2, kPi / 2, 2.5}) {
      ParamPoint q{{"t0", 1.0}, {"theta", theta}};
      Grid2D g = gap_map(sys, q, GridSpec{41, 41});
      double mn = *std::min_element(g.values.begin(), g.values.end());
      if (mn < 2.0 * std::abs(std::sin(theta)) * (1.0 - 1e-9)) gapped_away = false;
    }
    bool pass = max_f <= 1e-12 && gap_K <= kGaplessTol && gap_Kp <= kGaplessTol && gapped_away;
    rep.checks.push_back(
        {"graphene theta sweep: global fidelity zero, gap closes only at the Dirac points", pass,
         "max unmasked fidelity " + fmt(max_f) + ", masked nodes " + std::to_string(masked) +
             ", gap at K " + fmt(gap_K)});
  }

  // (d) triplet with the pairing off: the zero set grows from isolated points
  // to a finite area fraction of the zone.
  {
    System sys = resolve_system("triplet_product");
    ParamPoint q1{{"t", 1.0}, {"mu", -3.0}, {"m_z", 0.5}, {"delta_t", 0.0}};
    ParamPoint q2{{"t", 1.0}, {"mu", -0.1}, {"m_z", 0.5}, {"delta_t", 0.0}};
    Grid2D f = fidelity_map(sys, q1, q2, std::numeric_limits<double>::infinity(), spec);
    std::size_t zero = 0, live = 0;
    for (double v : f.values) {
      if (v == kSentinel) continue;
      ++live;
      if (v <= 1e-8) ++zero;
    }
    double fraction = live ? double(zero) / double(live) : 0.0;
    bool pass = fraction > 0.01;
    rep.checks.push_back({"unpaired triplet: fidelity vanishes on an extended zone", pass,
                          "zero-fidelity area fraction " + fmt(fraction)});
  }

  // (e) heuristic converse: random +-delta perturbations of a gapless
  // parameter point yield an antipodal witness pair at that momentum for at
  // least one direction (sampled, not exhaustive).
  {
    const ModelDef& m = model_by_id("triplet_up");
    ParamPoint qc{{"t", 1.0}, {"mu", -0.5}, {"m_z", 0.5}, {"delta_t", 0.6}};
    Momentum k = Momentum::of(kPi, 0.0);
    double gap_c = 2.0 * eval_h(m, qc, k).norm();
    std::mt19937_64 rng(77);
    std::normal_distribution<double> gauss;
    int successes = 0;
    const int kTrials = 8;
    for (int trial = 0; trial < kTrials; ++trial) {
      ParamPoint qa = qc, qb = qc;
      for (const auto& name : m.schema) {
        double d = 0.1 * gauss(rng);
        qa[name] += d;
        qb[name] -= d;
      }
      try {
        antipodal_lambda(eval_h(m, qa, k), eval_h(m, qb, k), 1e-8);
        ++successes;
      } catch (const Error&) {
      }
    }
    bool pass = gap_c <= 1e-12 && successes >= 1;
    rep.checks.push_back({"gapless point admits zero-fidelity pairs (sampled directions)", pass,
                          std::to_string(successes) + "/" + std::to_string(kTrials) +
                              " sampled direction pairs antipodal, gap at the point " +
                              fmt(gap_c)});
  }

  return rep;
}

}  // namespace kfid
