// extern "C" boundary: opaque handles, status codes, thread-local error text.

#include "kfid.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <span>
#include <sstream>
#include <string>

#include "core/config.hpp"
#include "core/fidelity.hpp"
#include "core/job.hpp"
#include "core/models.hpp"
#include "core/topology.hpp"

namespace {

thread_local std::string g_last_error;

kfid_status set_error(kfid::Status code, const std::string& msg) {
  g_last_error = msg;
  return static_cast<kfid_status>(static_cast<int>(code));
}

template <typename Fn>
kfid_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return KFID_OK;
  } catch (const kfid::Error& e) {
    return set_error(e.code(), e.what());
  } catch (const std::exception& e) {
    return set_error(kfid::Status::invalid_argument, e.what());
  }
}

kfid::HVector make_h(const double* h, int dim) {
  if (!h || dim < 2 || dim > 4) kfid::fail(kfid::Status::invalid_argument, "h must carry 2 to 4 components");
  kfid::HVector out;
  out.dim = dim;
  for (int i = 0; i < dim; ++i) out.h[static_cast<std::size_t>(i)] = h[i];
  return out;
}

const kfid::ModelDef* model_at(int index) {
  const auto& cat = kfid::catalog();
  if (index < 0 || index >= static_cast<int>(cat.size())) return nullptr;
  return &cat[static_cast<std::size_t>(index)];
}

kfid::Momentum make_k(const double* k, int dim_k) {
  if (!k || dim_k < 1 || dim_k > 3)
    kfid::fail(kfid::Status::invalid_argument, "k must carry 1 to 3 components");
  kfid::Momentum out;
  out.dim = dim_k;
  for (int i = 0; i < dim_k; ++i) out.k[static_cast<std::size_t>(i)] = k[i];
  return out;
}

kfid::ParamPoint named_params(const kfid::ModelDef& m, const double* q, int n_q) {
  if (!q || n_q != static_cast<int>(m.schema.size()))
    kfid::fail(kfid::Status::schema_mismatch,
               "model " + m.id + " expects " + std::to_string(m.schema.size()) + " parameters");
  kfid::ParamPoint p;
  for (int i = 0; i < n_q; ++i) p[m.schema[static_cast<std::size_t>(i)]] = q[i];
  return p;
}

}  // namespace

struct kfid_job {
  kfid::ScanJob job;
  kfid::JobResult result;
  bool ran = false;
};

extern "C" {

const char* kfid_status_name(kfid_status s) {
  return kfid::status_name(static_cast<kfid::Status>(static_cast<int>(s)));
}

const char* kfid_last_error(void) { return g_last_error.c_str(); }

int kfid_model_count(void) { return static_cast<int>(kfid::catalog().size()); }

int kfid_model_index(const char* id) {
  if (!id) return -1;
  const auto& cat = kfid::catalog();
  for (std::size_t i = 0; i < cat.size(); ++i)
    if (cat[i].id == id) return static_cast<int>(i);
  return -1;
}

const char* kfid_model_id(int index) {
  const kfid::ModelDef* m = model_at(index);
  return m ? m->id.c_str() : nullptr;
}

int kfid_model_dim_k(int index) {
  const kfid::ModelDef* m = model_at(index);
  return m ? m->dim_k : -1;
}

int kfid_model_dim_h(int index) {
  const kfid::ModelDef* m = model_at(index);
  return m ? m->dim_h : -1;
}

int kfid_model_param_count(int index) {
  const kfid::ModelDef* m = model_at(index);
  return m ? static_cast<int>(m->schema.size()) : -1;
}

const char* kfid_model_param_name(int index, int p) {
  const kfid::ModelDef* m = model_at(index);
  if (!m || p < 0 || p >= static_cast<int>(m->schema.size())) return nullptr;
  return m->schema[static_cast<std::size_t>(p)].c_str();
}

int kfid_model_param_linear(int index, int p) {
  const kfid::ModelDef* m = model_at(index);
  if (!m || p < 0 || p >= static_cast<int>(m->schema.size())) return -1;
  return m->linear[static_cast<std::size_t>(p)] ? 1 : 0;
}

kfid_status kfid_eval_h(const char* model, const double* q, int n_q, const double* k, int dim_k,
                        double h_out[4], int* dim_h, double* h0) {
  return guarded([&] {
    if (!model || !h_out) kfid::fail(kfid::Status::invalid_argument, "null argument");
    const kfid::ModelDef& m = kfid::model_by_id(model);
    if (!q || n_q != static_cast<int>(m.schema.size()))
      kfid::fail(kfid::Status::schema_mismatch,
                 "model " + m.id + " expects " + std::to_string(m.schema.size()) + " parameters");
    kfid::HVector h = kfid::eval_h(m, std::span<const double>(q, static_cast<std::size_t>(n_q)),
                                   make_k(k, dim_k));
    for (int i = 0; i < 4; ++i) h_out[i] = i < h.dim ? h.h[static_cast<std::size_t>(i)] : 0.0;
    if (dim_h) *dim_h = h.dim;
    if (h0) *h0 = h.h0;
  });
}

kfid_status kfid_band_energies(const char* model, const double* q, int n_q, const double* k,
                               int dim_k, double* e_minus, double* e_plus) {
  return guarded([&] {
    if (!model || !e_minus || !e_plus) kfid::fail(kfid::Status::invalid_argument, "null argument");
    const kfid::ModelDef& m = kfid::model_by_id(model);
    auto [lo, hi] = kfid::band_energies(m, named_params(m, q, n_q), make_k(k, dim_k));
    *e_minus = lo;
    *e_plus = hi;
  });
}

kfid_status kfid_fidelity_pure(const double* h1, const double* h2, int dim, double* out) {
  return guarded([&] {
    if (!out) kfid::fail(kfid::Status::invalid_argument, "null output");
    *out = kfid::fidelity_pure(make_h(h1, dim), make_h(h2, dim));
  });
}

kfid_status kfid_fidelity_gibbs(const double* h1, const double* h2, int dim, double beta,
                                double* out) {
  return guarded([&] {
    if (!out) kfid::fail(kfid::Status::invalid_argument, "null output");
    *out = kfid::fidelity_gibbs(make_h(h1, dim), make_h(h2, dim), kfid::GibbsContext{beta});
  });
}

kfid_status kfid_fidelity_product(const double* factors, int n, double* out) {
  return guarded([&] {
    if (!out || (!factors && n > 0)) kfid::fail(kfid::Status::invalid_argument, "null argument");
    *out = kfid::fidelity_product(std::span<const double>(factors, static_cast<std::size_t>(n)));
  });
}

kfid_status kfid_fidelity_ising_k(double k, double h_field1, double h_field2, double* out) {
  return guarded([&] {
    if (!out) kfid::fail(kfid::Status::invalid_argument, "null output");
    *out = kfid::fidelity_ising_k(k, h_field1, h_field2);
  });
}

kfid_status kfid_fidelity_ising_total(const double* ks, int n, double h_field1, double h_field2,
                                      double* out) {
  return guarded([&] {
    if (!out || !ks) kfid::fail(kfid::Status::invalid_argument, "null argument");
    *out = kfid::fidelity_ising_total(std::span<const double>(ks, static_cast<std::size_t>(n)),
                                      h_field1, h_field2);
  });
}

kfid_status kfid_fidelity_oracle(const double* h1, const double* h2, int dim, double beta,
                                 double* out) {
  return guarded([&] {
    if (!out) kfid::fail(kfid::Status::invalid_argument, "null output");
    *out = kfid::fidelity_oracle(make_h(h1, dim), make_h(h2, dim), beta);
  });
}

kfid_status kfid_chern_number(const char* model, const double* q, int n_q, int n_grid, int* out) {
  return guarded([&] {
    if (!model || !out) kfid::fail(kfid::Status::invalid_argument, "null argument");
    const kfid::ModelDef& m = kfid::model_by_id(model);
    *out = kfid::chern_number(m, named_params(m, q, n_q), n_grid);
  });
}

kfid_status kfid_z2_strong(const double* q, int n_q, int* out) {
  return guarded([&] {
    if (!out) kfid::fail(kfid::Status::invalid_argument, "null argument");
    const kfid::ModelDef& m = kfid::model_by_id("dirac3d_ti");
    *out = kfid::z2_strong(m, named_params(m, q, n_q));
  });
}

kfid_status kfid_job_parse(const char* config_text, kfid_job** out) {
  return guarded([&] {
    if (!config_text || !out) kfid::fail(kfid::Status::invalid_argument, "null argument");
    auto job = std::make_unique<kfid_job>();
    job->job = kfid::parse_config(config_text);
    *out = job.release();
  });
}

kfid_status kfid_job_parse_file(const char* path, kfid_job** out) {
  return guarded([&] {
    if (!path || !out) kfid::fail(kfid::Status::invalid_argument, "null argument");
    std::ifstream in(path, std::ios::binary);
    if (!in) kfid::fail(kfid::Status::io, std::string("cannot open config file ") + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    auto job = std::make_unique<kfid_job>();
    job->job = kfid::parse_config(ss.str());
    *out = job.release();
  });
}

kfid_status kfid_job_set(kfid_job* job, const char* key_equals_value) {
  return guarded([&] {
    if (!job || !key_equals_value) kfid::fail(kfid::Status::invalid_argument, "null argument");
    // Re-parse the effective config with the override appended so the result
    // is validated as a whole.
    kfid::ScanJob next =
        kfid::parse_config(kfid::format_config(job->job), {key_equals_value});
    next.workers = job->job.workers;
    next.out_dir = job->job.out_dir;
    job->job = next;
    job->ran = false;
  });
}

kfid_status kfid_job_set_out_dir(kfid_job* job, const char* dir) {
  return guarded([&] {
    if (!job || !dir) kfid::fail(kfid::Status::invalid_argument, "null argument");
    job->job.out_dir = dir;
  });
}

kfid_status kfid_job_set_workers(kfid_job* job, int workers) {
  return guarded([&] {
    if (!job || workers < 1) kfid::fail(kfid::Status::invalid_argument, "workers must be >= 1");
    job->job.workers = workers;
  });
}

const char* kfid_job_command(const kfid_job* job) {
  return job ? kfid::command_name(job->job.command) : nullptr;
}

kfid_status kfid_job_format(const kfid_job* job, char** out) {
  return guarded([&] {
    if (!job || !out) kfid::fail(kfid::Status::invalid_argument, "null argument");
    std::string text = kfid::format_config(job->job);
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

kfid_status kfid_job_run(kfid_job* job) {
  return guarded([&] {
    if (!job) kfid::fail(kfid::Status::invalid_argument, "null job");
    job->result = kfid::run_job(job->job);
    job->ran = true;
  });
}

int kfid_job_artifact_count(const kfid_job* job) {
  return job && job->ran ? static_cast<int>(job->result.artifacts.size()) : 0;
}

const char* kfid_job_artifact_path(const kfid_job* job, int i) {
  if (!job || !job->ran || i < 0 || i >= static_cast<int>(job->result.artifacts.size()))
    return nullptr;
  return job->result.artifacts[static_cast<std::size_t>(i)].c_str();
}

const char* kfid_job_summary(const kfid_job* job) {
  return job && job->ran ? job->result.summary.c_str() : nullptr;
}

void kfid_job_free(kfid_job* job) { delete job; }

void kfid_string_free(char* s) { delete[] s; }

}  // extern "C"
