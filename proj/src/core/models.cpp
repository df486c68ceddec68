#include "core/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace kfid {
namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

// Honeycomb nearest-neighbour vectors a_i and next-neighbour vectors
// b_i = a_{i+1} - a_{i+2} (lattice constant 1).
constexpr double kHalfSqrt3 = 0.8660254037844386467637231707529361834714;
constexpr double kA[3][2] = {{1.0, 0.0}, {-0.5, kHalfSqrt3}, {-0.5, -kHalfSqrt3}};

double dot2(const double a[2], const double* k) { return a[0] * k[0] + a[1] * k[1]; }

// --- closed-form h maps, schema-ordered parameters -------------------------

// q = (t, mu, m_z, delta_t)
void eval_triplet_up(const double* q, const double* k, double* h, double* h0) {
  double eps = -2.0 * q[0] * (std::cos(k[0]) + std::cos(k[1])) - q[1];
  h[0] = -q[3] * std::sin(k[1]);
  h[1] = q[3] * std::sin(k[0]);
  h[2] = eps - q[2];
  *h0 = 0.0;
}

void eval_triplet_down(const double* q, const double* k, double* h, double* h0) {
  double eps = -2.0 * q[0] * (std::cos(k[0]) + std::cos(k[1])) - q[1];
  h[0] = q[3] * std::sin(k[1]);
  h[1] = q[3] * std::sin(k[0]);
  h[2] = eps + q[2];
  *h0 = 0.0;
}

// q = (tx1, ty1, t2, t1p, delta)
void eval_ti_toy1(const double* q, const double* k, double* h, double* h0) {
  double cx = std::cos(k[0]), cy = std::cos(k[1]);
  double sx = std::sin(k[0]), sy = std::sin(k[1]);
  h[0] = std::numbers::sqrt2 * q[0] * (cx + cy);
  h[1] = std::numbers::sqrt2 * q[1] * (cx - cy);
  h[2] = 4.0 * q[2] * sx * sy + 2.0 * q[3] * (sx + sy) + q[4];
  *h0 = 0.0;
}

// q = (t2)
void eval_ti_toy2(const double* q, const double* k, double* h, double* h0) {
  double cx = std::cos(k[0]), cy = std::cos(k[1]);
  h[0] = cx + cy;
  h[1] = cx - cy;
  h[2] = q[0] * std::sin(k[0]) * std::sin(k[1]);
  *h0 = 0.0;
}

// q = (t, mu, delta)
void eval_kitaev1d(const double* q, const double* k, double* h, double* h0) {
  h[0] = 0.0;
  h[1] = 2.0 * q[2] * std::sin(k[0]);
  h[2] = -2.0 * q[0] * std::cos(k[0]) - q[1];
  *h0 = 0.0;
}

// q = (t1, t2, m, phi)
void eval_haldane(const double* q, const double* k, double* h, double* h0) {
  double ka[3], kb[3];
  for (int i = 0; i < 3; ++i) ka[i] = dot2(kA[i], k);
  kb[0] = ka[1] - ka[2];
  kb[1] = ka[2] - ka[0];
  kb[2] = ka[0] - ka[1];
  double ca = 0, sa = 0, cb = 0, sb = 0;
  for (int i = 0; i < 3; ++i) {
    ca += std::cos(ka[i]);
    sa += std::sin(ka[i]);
    cb += std::cos(kb[i]);
    sb += std::sin(kb[i]);
  }
  h[0] = q[0] * ca;
  h[1] = q[0] * sa;
  h[2] = q[2] - 2.0 * q[1] * std::sin(q[3]) * sb;
  *h0 = 2.0 * q[1] * std::cos(q[3]) * cb;
}

// q = (t, mu, delta)
void eval_bcs2d(const double* q, const double* k, double* h, double* h0) {
  h[0] = q[2];
  h[1] = 0.0;
  h[2] = -2.0 * q[0] * (std::cos(k[0]) + std::cos(k[1])) - q[1];
  *h0 = 0.0;
}

// q = (h_field); planar Bogoliubov-angle vector embedded with h_y = 0
void eval_ising_tf(const double* q, const double* k, double* h, double* h0) {
  h[0] = std::sin(k[0]);
  h[1] = 0.0;
  h[2] = std::cos(k[0]) - q[0];
  *h0 = 0.0;
}

void graphene_xy(const double* k, double* hx, double* hy) {
  double u = 0.5 * kSqrt3 * k[1];  // (sqrt(3)/2) k_y
  double v = 1.5 * k[0];           // (3/2) k_x
  *hx = 1.0 + std::cos(2.0 * u) + std::cos(u) * std::cos(v) - std::sin(u) * std::sin(v);
  *hy = std::sin(2.0 * u) + std::sin(u) * std::cos(v) + std::cos(u) * std::sin(v);
}

// q = (m)
void eval_graphene_mass_uniform(const double* q, const double* k, double* h, double* h0) {
  graphene_xy(k, &h[0], &h[1]);
  h[2] = q[0];
  *h0 = 0.0;
}

// q = (m); mass with opposite signs on the two Dirac cones
void eval_graphene_mass_haldane(const double* q, const double* k, double* h, double* h0) {
  graphene_xy(k, &h[0], &h[1]);
  double u = 0.5 * kSqrt3 * k[1];
  h[2] = 4.0 * q[0] * std::sin(u) * (std::cos(1.5 * k[0]) - std::cos(u));
  *h0 = 0.0;
}

// q = (t0, theta); A(k) = sum_i exp(i k.a_i)
void eval_graphene_theta(const double* q, const double* k, double* h, double* h0) {
  double re = 0, im = 0;
  for (int i = 0; i < 3; ++i) {
    double ka = dot2(kA[i], k);
    re += std::cos(ka);
    im += std::sin(ka);
  }
  h[0] = q[0] * std::cos(q[1]) * re;
  h[1] = -q[0] * std::cos(q[1]) * im;
  h[2] = q[0] * std::sin(q[1]);
  *h0 = 0.0;
}

// q = (v, m, t)
void eval_dirac3d_ti(const double* q, const double* k, double* h, double* h0) {
  h[0] = q[0] * std::sin(k[0]);
  h[1] = q[0] * std::sin(k[1]);
  h[2] = q[0] * std::sin(k[2]);
  h[3] = q[1] - q[2] * (std::cos(k[0]) + std::cos(k[1]) + std::cos(k[2]));
  *h0 = 0.0;
}

// q = (phi); flat bands, no k dependence
void eval_rot_flat(const double* q, const double*, double* h, double* h0) {
  h[0] = std::cos(q[0]);
  h[1] = std::sin(q[0]);
  h[2] = 0.0;
  *h0 = 0.0;
}

// q = (rho, phi)
void eval_polar_plane(const double* q, const double*, double* h, double* h0) {
  h[0] = q[0] * std::cos(q[1]);
  h[1] = q[0] * std::sin(q[1]);
  h[2] = 0.0;
  *h0 = 0.0;
}

// --- catalog ----------------------------------------------------------------

ModelDef square2d(std::string id, std::vector<std::string> schema, std::vector<bool> linear,
                  void (*eval)(const double*, const double*, double*, double*), int dim_h = 3) {
  ModelDef m;
  m.id = std::move(id);
  m.dim_k = 2;
  m.dim_h = dim_h;
  m.schema = std::move(schema);
  m.linear = std::move(linear);
  m.bz_lo = {-kPi, -kPi, 0};
  m.bz_hi = {kPi, kPi, 0};
  m.periods[0] = {2 * kPi, 0, 0};
  m.periods[1] = {0, 2 * kPi, 0};
  m.cell_copies = 1;
  m.eval = eval;
  return m;
}

// Bounding rectangle of the hexagonal zone; Dirac points K, K' sit inside.
void honeycomb_cell(ModelDef& m) {
  m.bz_lo = {-4 * kPi / 3, -2 * kPi / kSqrt3, 0};
  m.bz_hi = {4 * kPi / 3, 2 * kPi / kSqrt3, 0};
}

std::vector<ModelDef> build_catalog() {
  std::vector<ModelDef> cat;

  cat.push_back(square2d("triplet_up", {"t", "mu", "m_z", "delta_t"}, {true, true, true, true},
                         &eval_triplet_up));
  cat.push_back(square2d("triplet_down", {"t", "mu", "m_z", "delta_t"}, {true, true, true, true},
                         &eval_triplet_down));
  cat.push_back(square2d("ti_toy1", {"tx1", "ty1", "t2", "t1p", "delta"},
                         {true, true, true, true, true}, &eval_ti_toy1));
  cat.push_back(square2d("ti_toy2", {"t2"}, {false}, &eval_ti_toy2));

  {
    ModelDef m;
    m.id = "kitaev1d";
    m.dim_k = 1;
    m.dim_h = 3;
    m.schema = {"t", "mu", "delta"};
    m.linear = {true, true, true};
    m.bz_lo = {-kPi, 0, 0};
    m.bz_hi = {kPi, 0, 0};
    m.periods[0] = {2 * kPi, 0, 0};
    m.eval = &eval_kitaev1d;
    cat.push_back(m);
  }

  {
    ModelDef m;
    m.id = "haldane";
    m.dim_k = 2;
    m.dim_h = 3;
    m.schema = {"t1", "t2", "m", "phi"};
    m.linear = {true, true, true, false};
    honeycomb_cell(m);
    // Periods of the a_i-gauge map; their parallelogram covers three
    // primitive reciprocal cells.
    m.periods[0] = {2 * kPi, 2 * kPi / kSqrt3, 0};
    m.periods[1] = {0, 4 * kPi / kSqrt3, 0};
    m.cell_copies = 3;
    m.eval = &eval_haldane;
    cat.push_back(m);
  }

  cat.push_back(square2d("bcs2d", {"t", "mu", "delta"}, {true, true, true}, &eval_bcs2d));

  {
    ModelDef m;
    m.id = "ising_tf";
    m.dim_k = 1;
    m.dim_h = 3;
    m.schema = {"h_field"};
    m.linear = {false};
    m.bz_lo = {-kPi, 0, 0};
    m.bz_hi = {kPi, 0, 0};
    m.periods[0] = {2 * kPi, 0, 0};
    m.eval = &eval_ising_tf;
    cat.push_back(m);
  }

  for (auto [id, eval] : {std::pair{"graphene_mass_uniform", &eval_graphene_mass_uniform},
                          std::pair{"graphene_mass_haldane", &eval_graphene_mass_haldane}}) {
    ModelDef m;
    m.id = id;
    m.dim_k = 2;
    m.dim_h = 3;
    m.schema = {"m"};
    m.linear = {false};
    honeycomb_cell(m);
    m.periods[0] = {4 * kPi / 3, 0, 0};
    m.periods[1] = {0, 4 * kPi / kSqrt3, 0};
    m.cell_copies = 2;
    m.eval = eval;
    cat.push_back(m);
  }

  {
    ModelDef m;
    m.id = "graphene_theta";
    m.dim_k = 2;
    m.dim_h = 3;
    m.schema = {"t0", "theta"};
    m.linear = {true, false};
    honeycomb_cell(m);
    m.periods[0] = {2 * kPi, 2 * kPi / kSqrt3, 0};
    m.periods[1] = {0, 4 * kPi / kSqrt3, 0};
    m.cell_copies = 3;
    m.eval = &eval_graphene_theta;
    cat.push_back(m);
  }

  {
    ModelDef m;
    m.id = "dirac3d_ti";
    m.dim_k = 3;
    m.dim_h = 4;
    m.schema = {"v", "m", "t"};
    m.linear = {true, true, true};
    m.bz_lo = {-kPi, -kPi, -kPi};
    m.bz_hi = {kPi, kPi, kPi};
    m.periods[0] = {2 * kPi, 0, 0};
    m.periods[1] = {0, 2 * kPi, 0};
    m.periods[2] = {0, 0, 2 * kPi};
    m.eval = &eval_dirac3d_ti;
    cat.push_back(m);
  }

  cat.push_back(square2d("rot_flat", {"phi"}, {false}, &eval_rot_flat));
  cat.push_back(square2d("polar_plane", {"rho", "phi"}, {true, false}, &eval_polar_plane));

  return cat;
}

}  // namespace

int ModelDef::param_index(const std::string& name) const {
  auto it = std::find(schema.begin(), schema.end(), name);
  return it == schema.end() ? -1 : static_cast<int>(it - schema.begin());
}

const std::vector<ModelDef>& catalog() {
  static const std::vector<ModelDef> cat = build_catalog();
  return cat;
}

const ModelDef* find_model(const std::string& id) {
  for (const auto& m : catalog())
    if (m.id == id) return &m;
  return nullptr;
}

const ModelDef& model_by_id(const std::string& id) {
  const ModelDef* m = find_model(id);
  if (!m) fail(Status::unknown_model, "unknown model id \"" + id + "\"");
  return *m;
}

std::vector<double> flatten_params(const ModelDef& m, const ParamPoint& q) {
  if (q.size() != m.schema.size()) {
    std::ostringstream os;
    os << "model " << m.id << " expects " << m.schema.size() << " parameters, got " << q.size();
    fail(Status::schema_mismatch, os.str());
  }
  std::vector<double> out(m.schema.size());
  for (std::size_t i = 0; i < m.schema.size(); ++i) {
    auto it = q.find(m.schema[i]);
    if (it == q.end())
      fail(Status::schema_mismatch, "model " + m.id + " is missing parameter \"" + m.schema[i] + "\"");
    out[i] = it->second;
  }
  return out;
}

HVector eval_h(const ModelDef& m, std::span<const double> q, const Momentum& k) {
  if (static_cast<int>(q.size()) != static_cast<int>(m.schema.size()))
    fail(Status::schema_mismatch, "model " + m.id + ": wrong parameter count");
  if (k.dim != m.dim_k)
    fail(Status::invalid_argument,
         "model " + m.id + " expects dim_k=" + std::to_string(m.dim_k) + ", got k of dimension " +
             std::to_string(k.dim));
  HVector h;
  h.dim = m.dim_h;
  m.eval(q.data(), k.k.data(), h.h.data(), &h.h0);
  return h;
}

HVector eval_h(const ModelDef& m, const ParamPoint& q, const Momentum& k) {
  std::vector<double> flat = flatten_params(m, q);
  return eval_h(m, std::span<const double>(flat), k);
}

std::pair<double, double> band_energies(const ModelDef& m, const ParamPoint& q, const Momentum& k) {
  HVector h = eval_h(m, q, k);
  double n = h.norm();
  return {h.h0 - n, h.h0 + n};
}

System resolve_system(const std::string& id) {
  System s;
  s.id = id;
  if (id == "triplet_product") {
    s.sectors = {&model_by_id("triplet_up"), &model_by_id("triplet_down")};
    return s;
  }
  s.sectors = {&model_by_id(id)};
  return s;
}

}  // namespace kfid
