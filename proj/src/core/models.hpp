// Model zoo: every Hamiltonian family is a pure map (parameters, momentum) ->
// HVector with a declared dimension, Brillouin-zone cell and parameter schema.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace kfid {

struct ModelDef {
  std::string id;
  int dim_k = 2;
  int dim_h = 3;
  std::vector<std::string> schema;    // ordered parameter names
  std::vector<bool> linear;           // schema-aligned: member of linear_in?
  // Scan cell, one full reciprocal cell: per-axis [lo, hi).
  std::array<double, 3> bz_lo{0, 0, 0};
  std::array<double, 3> bz_hi{0, 0, 0};
  // Exact periods of the h map (dim_k of them). For 2d models these span the
  // cell used by the plaquette Chern sum; `cell_copies` is how many primitive
  // reciprocal cells that parallelogram covers.
  std::array<std::array<double, 3>, 3> periods{};
  int cell_copies = 1;

  // h written into out (schema-ordered params, length checked by callers).
  void (*eval)(const double* q, const double* k, double* h, double* h0) = nullptr;

  int param_index(const std::string& name) const;  // -1 if absent
};

// Stable, deterministically ordered catalog.
const std::vector<ModelDef>& catalog();
const ModelDef& model_by_id(const std::string& id);  // throws unknown_model
const ModelDef* find_model(const std::string& id);   // nullptr if absent

// Validates q against the schema and flattens to schema order.
std::vector<double> flatten_params(const ModelDef& m, const ParamPoint& q);

// eval with full validation of q and k.
HVector eval_h(const ModelDef& m, const ParamPoint& q, const Momentum& k);
HVector eval_h(const ModelDef& m, std::span<const double> q, const Momentum& k);

// (E_minus, E_plus) = (h0 - |h|, h0 + |h|); gap = 2|h|.
std::pair<double, double> band_energies(const ModelDef& m, const ParamPoint& q, const Momentum& k);

// A scan target: a single catalog model, or a product of sector models over a
// shared schema (the triplet superconductor's F = F_up * F_down).
struct System {
  std::string id;                         // "triplet_product" or a model id
  std::vector<const ModelDef*> sectors;   // size 1 or 2
  const ModelDef& front() const { return *sectors.front(); }
  int dim_k() const { return front().dim_k; }
  bool is_product() const { return sectors.size() > 1; }
};

// Accepts every catalog id plus "triplet_product".
System resolve_system(const std::string& id);

}  // namespace kfid
