/* C interface to the kdsky library. All handles are opaque; every fallible
 * call returns a kds_status and leaves a message for kds_last_error().
 * Strings returned through char** are owned by the caller and released with
 * kds_string_free(). */
#ifndef KDSKY_KDSKY_H
#define KDSKY_KDSKY_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(KDS_BUILDING_LIBRARY)
#define KDS_API __attribute__((visibility("default")))
#else
#define KDS_API
#endif

typedef enum kds_status {
  KDS_OK = 0,
  KDS_ERR_INVALID_ARGUMENT = 1,
  KDS_ERR_DIMENSION_MISMATCH = 2,
  KDS_ERR_OUT_OF_RANGE = 3,
  KDS_ERR_WORK_LIMIT = 4,
  KDS_ERR_PARSE = 5,
  KDS_ERR_IO = 6,
  KDS_ERR_UNKNOWN_ID = 7,
  KDS_ERR_UNSUPPORTED = 8,
  KDS_ERR_INTERNAL = 99
} kds_status;

typedef enum kds_model {
  KDS_MODEL_HYPERCUBE = 0,
  KDS_MODEL_SIMPLEX = 1,
  KDS_MODEL_CATEGORICAL = 2,
  KDS_MODEL_LINE_A = 3
} kds_model;

typedef enum kds_algorithm { KDS_ALG_THREE_PHASE = 0, KDS_ALG_EXHAUSTIVE = 1 } kds_algorithm;

typedef enum kds_statistic {
  KDS_STAT_SKYLINE_COUNT = 0,
  KDS_STAT_K_DOMINANT_COUNT = 1,
  KDS_STAT_CLOUD_CELL = 2,
  KDS_STAT_CUMULATIVE_CLOUD = 3,
  KDS_STAT_CYCLE_COUNT = 4
} kds_statistic;

typedef struct kds_dataset kds_dataset;
typedef struct kds_indices kds_indices;
typedef struct kds_exact kds_exact;

/* Message of the last failure on the calling thread; never NULL. */
KDS_API const char* kds_last_error(void);
KDS_API const char* kds_version(void);
KDS_API void kds_string_free(char* s);

/* ---- datasets ---------------------------------------------------------- */

/* coords holds n*dim values row-major; categorical != 0 requires integer levels >= 1. */
KDS_API kds_status kds_dataset_create(size_t dim, const double* coords, size_t n, int categorical,
                                      kds_dataset** out);
KDS_API kds_status kds_dataset_read_csv(const char* path, int categorical, kds_dataset** out);
KDS_API kds_status kds_dataset_write_csv(const kds_dataset* data, const char* path);
KDS_API size_t kds_dataset_size(const kds_dataset* data);
KDS_API size_t kds_dataset_dim(const kds_dataset* data);
/* Borrowed pointer to n*dim coordinates, valid until the dataset is freed. */
KDS_API const double* kds_dataset_coords(const kds_dataset* data);
KDS_API void kds_dataset_free(kds_dataset* data);

/* ---- samplers ---------------------------------------------------------- */

typedef struct kds_sampler_config {
  int model;              /* kds_model */
  size_t n;
  size_t d;               /* ignored for line-A */
  uint64_t seed;
  uint64_t stream;
  const int* levels;      /* categorical: u_1..u_d */
  size_t n_levels;
  const int* support;     /* optional weighted support, support_size*support_dim levels */
  const double* weights;  /* support_size weights summing to 1 */
  size_t support_size;
  size_t support_dim;
} kds_sampler_config;

KDS_API kds_status kds_parse_model(const char* name, int* out);
KDS_API kds_status kds_sample(const kds_sampler_config* config, kds_dataset** out);

/* ---- dominance --------------------------------------------------------- */

KDS_API kds_status kds_k_dominates(const double* p, const double* q, size_t dim, int k, int* out);
/* k = 0 selects full dominance (k = d). */
KDS_API kds_status kds_skyline(const kds_dataset* data, int k, int algorithm, kds_indices** out);
KDS_API size_t kds_indices_size(const kds_indices* idx);
KDS_API const size_t* kds_indices_data(const kds_indices* idx);
KDS_API void kds_indices_free(kds_indices* idx);
/* counts must hold kds_dataset_size(data) entries. */
KDS_API kds_status kds_dominator_counts(const kds_dataset* data, int k, size_t* counts);
/* work_limit = 0 selects the default of 1e9 edge checks. */
KDS_API kds_status kds_count_cycles(const kds_dataset* data, int length, int k, uint64_t work_limit,
                                    uint64_t* out);

/* ---- exact values ------------------------------------------------------ */

KDS_API kds_status kds_exact_harmonic(uint64_t n, int a, kds_exact** out);
KDS_API kds_status kds_exact_skyline_mean(uint64_t n, int d, kds_exact** out);
KDS_API kds_status kds_exact_layer_mean_full(uint64_t n, int d, uint64_t j, kds_exact** out);
KDS_API kds_status kds_exact_categorical_mean(uint64_t n, int k, const int* levels, size_t n_levels,
                                              uint64_t grid_cap, kds_exact** out);
KDS_API kds_status kds_exact_categorical_limit(const int* levels, size_t n_levels, kds_exact** out);
KDS_API kds_status kds_exact_cycle_mean(uint64_t n, int d, kds_exact** out);
KDS_API kds_status kds_exact_beta(int d, int k, kds_exact** out);
KDS_API kds_status kds_exact_sigma_m(int m, int l, kds_exact** out);
KDS_API kds_status kds_exact_to_decimal(const kds_exact* v, int significant, char** out);
KDS_API kds_status kds_exact_to_rational(const kds_exact* v, char** out);
KDS_API double kds_exact_to_double(const kds_exact* v);
KDS_API void kds_exact_free(kds_exact* v);

/* ---- real-valued formulas ---------------------------------------------- */

KDS_API kds_status kds_skyline_mean(uint64_t n, int d, double* out);
/* one_sided != 0 evaluates E[L_{d,1}(n,j)] instead of E[L_{d,d}(n,j)]. */
KDS_API kds_status kds_layer_mean(uint64_t n, int d, uint64_t j, int one_sided, double* out);
KDS_API kds_status kds_categorical_volume(const int* x, int k, const int* levels, size_t dim,
                                          uint64_t* out);
KDS_API kds_status kds_categorical_limit_weighted(const int* support, const double* weights,
                                                  size_t support_size, size_t dim, int k, double* out);
KDS_API kds_status kds_in_integral(uint64_t n, double x, double* out);
KDS_API kds_status kds_lower_bound(uint64_t n, int d, int k, double* out);
KDS_API kds_status kds_lambert_w(double x, double* out);
KDS_API kds_status kds_f_d_numeric(double n, int d, double* out);
KDS_API kds_status kds_phi_operator_power_gd(int m, double n, int d, double* out);

/* JSON report {formula_id, params, value, validity_note, ...}. */
KDS_API kds_status kds_predict(const char* formula_id, double n, int d, int k, int j, int m,
                               char** out_json);
/* exact_id: harmonic | skyline_mean | layer_mean_full | cycle_mean | beta |
 * categorical_mean | sigma_m. JSON {formula_id, params, value_decimal, value_rational}. */
KDS_API kds_status kds_predict_exact(const char* exact_id, uint64_t n, int d, int k, uint64_t j,
                                     int a, int m, const int* levels, size_t n_levels, int precision,
                                     char** out_json);

/* ---- thresholds -------------------------------------------------------- */

/* kind "d0" or "d1"; n is a decimal integer of any size. */
KDS_API kds_status kds_threshold(const char* kind, const char* n_decimal, char** out_json);
KDS_API kds_status kds_threshold_table(const char* kind, int imax, char** out_json);

/* ---- Monte Carlo ------------------------------------------------------- */

typedef struct kds_estimate_request {
  int statistic;         /* kds_statistic */
  kds_sampler_config sampler;
  int k;                 /* 0 selects d */
  size_t j;
  size_t m;
  int cycle_length;      /* 0 selects d */
  size_t trials;
  uint64_t seed;
  unsigned workers;
  int force;
  double work_ceiling;   /* 0 selects 1e11 */
  int algorithm;         /* kds_algorithm */
} kds_estimate_request;

typedef struct kds_estimate_result {
  double mean;
  double stderr_;
  double ci_lo;
  double ci_hi;
  size_t trials;
  uint64_t seed;
} kds_estimate_result;

KDS_API kds_status kds_parse_statistic(const char* name, int* out);
KDS_API kds_status kds_estimate(const kds_estimate_request* req, kds_estimate_result* out);
/* means/stderrs hold n_grid entries. */
KDS_API kds_status kds_cumulative_cloud(const kds_sampler_config* sampler, int k, const size_t* m_grid,
                                        size_t n_grid, size_t trials, uint64_t seed, unsigned workers,
                                        int force, double* means, double* stderrs);
/* JSON {trials, mean, variance, frequency: [[value, probability], ...]}. */
KDS_API kds_status kds_distribution(const kds_estimate_request* req, char** out_json);

/* ---- tables ------------------------------------------------------------ */

typedef struct kds_table_options {
  int with_mc;
  size_t trials;
  uint64_t seed;
  unsigned workers;
  int force;
  int imax;
  size_t n;
} kds_table_options;

KDS_API kds_status kds_table_csv(const char* table_id, const kds_table_options* options, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* KDSKY_KDSKY_H */
