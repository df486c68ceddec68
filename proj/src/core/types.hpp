// Core value types shared by every module: momenta, coefficient vectors of
// Pauli/Clifford-expanded Bloch Hamiltonians, parameter points, and the
// library error taxonomy.

#pragma once

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace kfid {

// Error codes mirrored one-to-one by the C API status enum.
enum class Status : int {
  ok = 0,
  invalid_argument = 1,
  unknown_model = 2,
  schema_mismatch = 3,
  gapless = 4,
  not_antipodal = 5,
  linearity = 6,
  parse = 7,
  io = 8,
  unsupported = 9,
  verification = 10,
};

const char* status_name(Status s);

class Error : public std::runtime_error {
 public:
  Error(Status code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Status code() const { return code_; }

 private:
  Status code_;
};

[[noreturn]] inline void fail(Status code, const std::string& what) { throw Error(code, what); }

// |h| below this is treated as a band touching. Energies in this problem
// domain are O(1), so an absolute cutoff is appropriate.
inline constexpr double kGaplessTol = 1e-12;

// Momentum in units of the inverse lattice constant. Components are plain
// reals; every model in the zoo is periodic under its reciprocal lattice, so
// no range is enforced here.
struct Momentum {
  std::array<double, 3> k{0.0, 0.0, 0.0};
  int dim = 0;

  static Momentum of(double kx) { return {{kx, 0.0, 0.0}, 1}; }
  static Momentum of(double kx, double ky) { return {{kx, ky, 0.0}, 2}; }
  static Momentum of(double kx, double ky, double kz) { return {{kx, ky, kz}, 3}; }

  double operator[](int i) const { return k[static_cast<std::size_t>(i)]; }
};

// Coefficient vector of H = h0*I + sum_i h_i * gamma_i. Bands are h0 +- |h|.
struct HVector {
  std::array<double, 4> h{0.0, 0.0, 0.0, 0.0};
  int dim = 0;     // 2, 3 or 4
  double h0 = 0.0; // identity coefficient; cancels in Gibbs states

  double norm2() const {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += h[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i)];
    return s;
  }
  double norm() const { return std::sqrt(norm2()); }
  bool gapless() const { return norm() <= kGaplessTol; }
};

inline double dot(const HVector& a, const HVector& b) {
  int d = std::max(a.dim, b.dim);
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    double ai = i < a.dim ? a.h[static_cast<std::size_t>(i)] : 0.0;
    double bi = i < b.dim ? b.h[static_cast<std::size_t>(i)] : 0.0;
    s += ai * bi;
  }
  return s;
}

// A point in a model's parameter space, keyed by schema names.
using ParamPoint = std::map<std::string, double>;

}  // namespace kfid
