/* kfid: momentum-resolved fidelity for two-band and Dirac-like lattice models.
 *
 * C interface to the shared library. All functions return kfid_status;
 * results come back through out parameters. A human-readable message for the
 * most recent failure on the calling thread is available from
 * kfid_last_error(). Opaque handles must be released with their free
 * function.
 */

#ifndef KFID_H
#define KFID_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kfid_status {
  KFID_OK = 0,
  KFID_ERR_INVALID_ARGUMENT = 1,
  KFID_ERR_UNKNOWN_MODEL = 2,
  KFID_ERR_SCHEMA_MISMATCH = 3,
  KFID_ERR_GAPLESS = 4,
  KFID_ERR_NOT_ANTIPODAL = 5,
  KFID_ERR_LINEARITY = 6,
  KFID_ERR_PARSE = 7,
  KFID_ERR_IO = 8,
  KFID_ERR_UNSUPPORTED = 9,
  KFID_ERR_VERIFICATION = 10
} kfid_status;

const char* kfid_status_name(kfid_status s);

/* Message for the last failure on this thread; empty string if none. */
const char* kfid_last_error(void);

/* ---- model catalog ----------------------------------------------------- */

int kfid_model_count(void);
/* Index of a model id, or -1 if unknown. */
int kfid_model_index(const char* id);
const char* kfid_model_id(int index);
int kfid_model_dim_k(int index);
int kfid_model_dim_h(int index);
int kfid_model_param_count(int index);
const char* kfid_model_param_name(int index, int p);
/* 1 if h is jointly homogeneous-linear in this parameter, else 0. */
int kfid_model_param_linear(int index, int p);

/* ---- direct evaluation -------------------------------------------------
 * Parameters are passed in schema order (see the catalog functions above).
 */

/* h_out must hold 4 doubles; *dim_h reports how many are meaningful. */
kfid_status kfid_eval_h(const char* model, const double* q, int n_q, const double* k, int dim_k,
                        double h_out[4], int* dim_h, double* h0);
kfid_status kfid_band_energies(const char* model, const double* q, int n_q, const double* k,
                               int dim_k, double* e_minus, double* e_plus);

/* ---- fidelity kernels ---------------------------------------------------
 * h vectors carry dim entries (2, 3 or 4). Pass beta = INFINITY for the
 * zero-temperature kernels where accepted.
 */

kfid_status kfid_fidelity_pure(const double* h1, const double* h2, int dim, double* out);
kfid_status kfid_fidelity_gibbs(const double* h1, const double* h2, int dim, double beta,
                                double* out);
kfid_status kfid_fidelity_product(const double* factors, int n, double* out);
kfid_status kfid_fidelity_ising_k(double k, double h_field1, double h_field2, double* out);
kfid_status kfid_fidelity_ising_total(const double* ks, int n, double h_field1, double h_field2,
                                      double* out);
/* Brute-force density-matrix oracle (dim 3 any beta; dim 2/4 at infinite beta). */
kfid_status kfid_fidelity_oracle(const double* h1, const double* h2, int dim, double beta,
                                 double* out);

/* ---- invariants --------------------------------------------------------- */

kfid_status kfid_chern_number(const char* model, const double* q, int n_q, int n_grid, int* out);
kfid_status kfid_z2_strong(const double* q, int n_q, int* out); /* dirac3d_ti schema (v, m, t) */

/* ---- scan jobs -----------------------------------------------------------
 * A job is parsed from the config grammar, optionally adjusted, then run.
 * Running writes the requested artifacts and builds a text summary.
 */

typedef struct kfid_job kfid_job;

kfid_status kfid_job_parse(const char* config_text, kfid_job** out);
kfid_status kfid_job_parse_file(const char* path, kfid_job** out);
/* "key=value" override, as the CLI's --set flag. Re-validates the job. */
kfid_status kfid_job_set(kfid_job* job, const char* key_equals_value);
/* Directory prefixed to relative artifact paths. */
kfid_status kfid_job_set_out_dir(kfid_job* job, const char* dir);
/* Worker count for grid evaluation; results are identical for any value. */
kfid_status kfid_job_set_workers(kfid_job* job, int workers);

/* Command name of a parsed job ("fidelity-map", "z2", ...). */
const char* kfid_job_command(const kfid_job* job);

/* Canonical echo of the effective config; free with kfid_string_free. */
kfid_status kfid_job_format(const kfid_job* job, char** out);

kfid_status kfid_job_run(kfid_job* job);

/* Valid after a successful run. */
int kfid_job_artifact_count(const kfid_job* job);
const char* kfid_job_artifact_path(const kfid_job* job, int i);
const char* kfid_job_summary(const kfid_job* job);

void kfid_job_free(kfid_job* job);
void kfid_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* KFID_H */
