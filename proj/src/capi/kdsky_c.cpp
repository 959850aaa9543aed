#include "kdsky/kdsky.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "kdsky/asymptotics.hpp"
#include "kdsky/csv.hpp"
#include "kdsky/dominance.hpp"
#include "kdsky/error.hpp"
#include "kdsky/exact.hpp"
#include "kdsky/montecarlo.hpp"
#include "kdsky/samplers.hpp"
#include "kdsky/special.hpp"
#include "kdsky/tables.hpp"
#include "kdsky/thresholds.hpp"

struct kds_dataset {
  kdsky::Dataset data;
};

struct kds_indices {
  kdsky::IndexSet idx;
};

struct kds_exact {
  kdsky::ExactValue value;
};

namespace {

using json = nlohmann::json;

thread_local std::string g_last_error;

kds_status map_code(kdsky::ErrorCode code) {
  switch (code) {
    case kdsky::ErrorCode::InvalidArgument: return KDS_ERR_INVALID_ARGUMENT;
    case kdsky::ErrorCode::DimensionMismatch: return KDS_ERR_DIMENSION_MISMATCH;
    case kdsky::ErrorCode::OutOfRange: return KDS_ERR_OUT_OF_RANGE;
    case kdsky::ErrorCode::WorkLimitExceeded: return KDS_ERR_WORK_LIMIT;
    case kdsky::ErrorCode::ParseError: return KDS_ERR_PARSE;
    case kdsky::ErrorCode::IoError: return KDS_ERR_IO;
    case kdsky::ErrorCode::UnknownId: return KDS_ERR_UNKNOWN_ID;
    case kdsky::ErrorCode::Unsupported: return KDS_ERR_UNSUPPORTED;
  }
  return KDS_ERR_INTERNAL;
}

template <class Fn>
kds_status guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return KDS_OK;
  } catch (const kdsky::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return KDS_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
  if (p == nullptr) kdsky::fail(kdsky::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

kdsky::Model to_model(int m) {
  if (m < KDS_MODEL_HYPERCUBE || m > KDS_MODEL_LINE_A) {
    kdsky::fail(kdsky::ErrorCode::InvalidArgument, "unknown model code " + std::to_string(m));
  }
  return static_cast<kdsky::Model>(m);
}

kdsky::SamplerConfig to_config(const kds_sampler_config& c) {
  kdsky::SamplerConfig cfg;
  cfg.model = to_model(c.model);
  cfg.n = c.n;
  cfg.d = c.d;
  cfg.seed = c.seed;
  cfg.stream = c.stream;
  if (c.n_levels > 0) {
    require(c.levels, "levels");
    cfg.categorical.levels.assign(c.levels, c.levels + c.n_levels);
  }
  if (c.support_size > 0) {
    require(c.support, "support");
    require(c.weights, "weights");
    kdsky::WeightedSupport ws;
    for (std::size_t i = 0; i < c.support_size; ++i) {
      ws.points.emplace_back(c.support + i * c.support_dim, c.support + (i + 1) * c.support_dim);
    }
    ws.weights.assign(c.weights, c.weights + c.support_size);
    cfg.categorical.support = std::move(ws);
  }
  return cfg;
}

kdsky::EstimateRequest to_request(const kds_estimate_request& r) {
  if (r.statistic < KDS_STAT_SKYLINE_COUNT || r.statistic > KDS_STAT_CYCLE_COUNT) {
    kdsky::fail(kdsky::ErrorCode::InvalidArgument, "unknown statistic code");
  }
  kdsky::EstimateRequest req;
  req.statistic = static_cast<kdsky::Statistic>(r.statistic);
  req.sampler = to_config(r.sampler);
  req.k = r.k;
  req.j = r.j;
  req.m = r.m;
  req.cycle_length = r.cycle_length;
  req.trials = r.trials;
  req.seed = r.seed;
  req.workers = r.workers == 0 ? 1 : r.workers;
  req.force = r.force != 0;
  if (r.work_ceiling > 0.0) req.work_ceiling = r.work_ceiling;
  req.algorithm = r.algorithm == KDS_ALG_EXHAUSTIVE ? kdsky::SkylineAlgorithm::Exhaustive
                                                    : kdsky::SkylineAlgorithm::ThreePhase;
  return req;
}

json threshold_json(const kdsky::ThresholdResult& r) {
  json j;
  j["kind"] = r.kind == kdsky::ThresholdKind::D0 ? "d0" : "d1";
  j["n"] = r.n.get_str();
  j["value"] = r.value;
  j["x"] = r.x;
  j["fractional"] = r.fractional;
  if (r.phi0) j["phi0"] = *r.phi0;
  if (r.phi1) j["phi1"] = *r.phi1;
  json b = json::array();
  for (const auto& a : r.boundaries) b.push_back(a.get_str());
  j["boundaries"] = b;
  return j;
}

template <class Make>
kds_status make_exact(kds_exact** out, Make make) {
  return guard([&] {
    require(out, "out");
    *out = new kds_exact{make()};
  });
}

}  // namespace

extern "C" {

const char* kds_last_error(void) { return g_last_error.c_str(); }

const char* kds_version(void) { return KDSKY_VERSION; }

void kds_string_free(char* s) { std::free(s); }

kds_status kds_dataset_create(size_t dim, const double* coords, size_t n, int categorical,
                              kds_dataset** out) {
  return guard([&] {
    require(out, "out");
    if (n > 0) require(coords, "coords");
    std::vector<double> v(coords, coords + n * dim);
    *out = new kds_dataset{kdsky::Dataset(
        dim, std::move(v),
        categorical ? kdsky::CoordinateMode::Categorical : kdsky::CoordinateMode::Continuous)};
  });
}

kds_status kds_dataset_read_csv(const char* path, int categorical, kds_dataset** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new kds_dataset{kdsky::read_dataset_csv(
        std::string(path),
        categorical ? kdsky::CoordinateMode::Categorical : kdsky::CoordinateMode::Continuous)};
  });
}

kds_status kds_dataset_write_csv(const kds_dataset* data, const char* path) {
  return guard([&] {
    require(data, "data");
    require(path, "path");
    kdsky::write_dataset_csv(std::string(path), data->data);
  });
}

size_t kds_dataset_size(const kds_dataset* data) { return data ? data->data.size() : 0; }

size_t kds_dataset_dim(const kds_dataset* data) { return data ? data->data.dim() : 0; }

const double* kds_dataset_coords(const kds_dataset* data) {
  return data ? data->data.coords().data() : nullptr;
}

void kds_dataset_free(kds_dataset* data) { delete data; }

kds_status kds_parse_model(const char* name, int* out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    *out = static_cast<int>(kdsky::parse_model(name));
  });
}

kds_status kds_sample(const kds_sampler_config* config, kds_dataset** out) {
  return guard([&] {
    require(config, "config");
    require(out, "out");
    *out = new kds_dataset{kdsky::sample(to_config(*config))};
  });
}

kds_status kds_k_dominates(const double* p, const double* q, size_t dim, int k, int* out) {
  return guard([&] {
    require(p, "p");
    require(q, "q");
    require(out, "out");
    *out = kdsky::k_dominates({p, dim}, {q, dim}, k) ? 1 : 0;
  });
}

kds_status kds_skyline(const kds_dataset* data, int k, int algorithm, kds_indices** out) {
  return guard([&] {
    require(data, "data");
    require(out, "out");
    const int kk = k == 0 ? static_cast<int>(data->data.dim()) : k;
    const auto alg = algorithm == KDS_ALG_EXHAUSTIVE ? kdsky::SkylineAlgorithm::Exhaustive
                                                     : kdsky::SkylineAlgorithm::ThreePhase;
    *out = new kds_indices{kdsky::k_dominant_skyline(data->data, kk, alg)};
  });
}

size_t kds_indices_size(const kds_indices* idx) { return idx ? idx->idx.size() : 0; }

const size_t* kds_indices_data(const kds_indices* idx) { return idx ? idx->idx.data() : nullptr; }

void kds_indices_free(kds_indices* idx) { delete idx; }

kds_status kds_dominator_counts(const kds_dataset* data, int k, size_t* counts) {
  return guard([&] {
    require(data, "data");
    const auto hist = kdsky::dominator_histogram(data->data, k);
    if (!hist.counts().empty()) require(counts, "counts");
    std::copy(hist.counts().begin(), hist.counts().end(), counts);
  });
}

kds_status kds_count_cycles(const kds_dataset* data, int length, int k, uint64_t work_limit,
                            uint64_t* out) {
  return guard([&] {
    require(data, "data");
    require(out, "out");
    *out = kdsky::count_dominant_cycles(data->data, length, k,
                                        work_limit == 0 ? kdsky::kDefaultCycleWorkLimit : work_limit);
  });
}

kds_status kds_exact_harmonic(uint64_t n, int a, kds_exact** out) {
  return make_exact(out, [&] { return kdsky::harmonic(n, a); });
}

kds_status kds_exact_skyline_mean(uint64_t n, int d, kds_exact** out) {
  return make_exact(out, [&] { return kdsky::skyline_mean_exact(n, d); });
}

kds_status kds_exact_layer_mean_full(uint64_t n, int d, uint64_t j, kds_exact** out) {
  return make_exact(out, [&] { return kdsky::layer_mean_full_exact(n, d, j); });
}

kds_status kds_exact_categorical_mean(uint64_t n, int k, const int* levels, size_t n_levels,
                                      uint64_t grid_cap, kds_exact** out) {
  return make_exact(out, [&] {
    require(levels, "levels");
    return kdsky::categorical_mean(n, k, {levels, n_levels},
                                   grid_cap == 0 ? kdsky::kDefaultGridCap : grid_cap);
  });
}

kds_status kds_exact_categorical_limit(const int* levels, size_t n_levels, kds_exact** out) {
  return make_exact(out, [&] {
    require(levels, "levels");
    return kdsky::categorical_limit_uniform({levels, n_levels});
  });
}

kds_status kds_exact_cycle_mean(uint64_t n, int d, kds_exact** out) {
  return make_exact(out, [&] { return kdsky::cycle_mean(n, d); });
}

kds_status kds_exact_beta(int d, int k, kds_exact** out) {
  return make_exact(out, [&] { return kdsky::beta(d, k); });
}

kds_status kds_exact_sigma_m(int m, int l, kds_exact** out) {
  return make_exact(out, [&] { return kdsky::ExactValue(mpq_class(kdsky::sigma_m(m, l))); });
}

kds_status kds_exact_to_decimal(const kds_exact* v, int significant, char** out) {
  return guard([&] {
    require(v, "value");
    require(out, "out");
    *out = dup_string(v->value.to_decimal(significant));
  });
}

kds_status kds_exact_to_rational(const kds_exact* v, char** out) {
  return guard([&] {
    require(v, "value");
    require(out, "out");
    *out = dup_string(v->value.to_rational_string());
  });
}

double kds_exact_to_double(const kds_exact* v) { return v ? v->value.to_double() : 0.0; }

void kds_exact_free(kds_exact* v) { delete v; }

kds_status kds_skyline_mean(uint64_t n, int d, double* out) {
  return guard([&] {
    require(out, "out");
    *out = kdsky::skyline_mean(n, d);
  });
}

kds_status kds_layer_mean(uint64_t n, int d, uint64_t j, int one_sided, double* out) {
  return guard([&] {
    require(out, "out");
    *out = one_sided ? kdsky::layer_mean_one(n, d, j).value : kdsky::layer_mean_full(n, d, j).value;
  });
}

kds_status kds_categorical_volume(const int* x, int k, const int* levels, size_t dim, uint64_t* out) {
  return guard([&] {
    require(x, "x");
    require(levels, "levels");
    require(out, "out");
    *out = kdsky::categorical_volume({x, dim}, k, {levels, dim});
  });
}

kds_status kds_categorical_limit_weighted(const int* support, const double* weights, size_t support_size,
                                          size_t dim, int k, double* out) {
  return guard([&] {
    require(support, "support");
    require(weights, "weights");
    require(out, "out");
    kdsky::WeightedSupport ws;
    for (std::size_t i = 0; i < support_size; ++i) {
      ws.points.emplace_back(support + i * dim, support + (i + 1) * dim);
    }
    ws.weights.assign(weights, weights + support_size);
    *out = kdsky::categorical_limit(ws, k);
  });
}

kds_status kds_in_integral(uint64_t n, double x, double* out) {
  return guard([&] {
    require(out, "out");
    *out = kdsky::in_integral(n, x);
  });
}

kds_status kds_lower_bound(uint64_t n, int d, int k, double* out) {
  return guard([&] {
    require(out, "out");
    *out = kdsky::lower_bound(n, d, k);
  });
}

kds_status kds_lambert_w(double x, double* out) {
  return guard([&] {
    require(out, "out");
    *out = kdsky::lambert_w(x);
  });
}

kds_status kds_f_d_numeric(double n, int d, double* out) {
  return guard([&] {
    require(out, "out");
    *out = kdsky::f_d_numeric(n, d);
  });
}

kds_status kds_phi_operator_power_gd(int m, double n, int d, double* out) {
  return guard([&] {
    require(out, "out");
    *out = kdsky::phi_operator_power_gd(m, n, d);
  });
}

kds_status kds_predict(const char* formula_id, double n, int d, int k, int j, int m, char** out_json) {
  return guard([&] {
    require(formula_id, "formula_id");
    require(out_json, "out_json");
    kdsky::PredictionParams p{n, d, k, j, m};
    const auto r = kdsky::predict(kdsky::parse_formula(formula_id), p);
    json o;
    o["formula_id"] = std::string(kdsky::formula_name(r.id));
    o["params"] = {{"n", n}, {"d", d}, {"k", k}, {"j", j}, {"m", m}};
    o["value"] = r.value;
    o["validity_note"] = r.validity_note;
    o["is_bound"] = r.is_bound;
    o["ranges"] = {{"moderate", r.ranges.moderate},
                   {"moderate_margin", r.ranges.moderate_margin},
                   {"critical", r.ranges.critical},
                   {"critical_lower", r.ranges.critical_lower},
                   {"critical_upper", r.ranges.critical_upper}};
    if (r.rho) o["rho"] = *r.rho;
    if (r.leading) o["leading"] = *r.leading;
    *out_json = dup_string(o.dump());
  });
}

kds_status kds_predict_exact(const char* exact_id, uint64_t n, int d, int k, uint64_t j, int a, int m,
                             const int* levels, size_t n_levels, int precision, char** out_json) {
  return guard([&] {
    require(exact_id, "exact_id");
    require(out_json, "out_json");
    const std::string id(exact_id);
    json params;
    kdsky::ExactValue v;
    if (id == "harmonic") {
      v = kdsky::harmonic(n, a);
      params = {{"n", n}, {"a", a}};
    } else if (id == "skyline_mean") {
      v = kdsky::skyline_mean_exact(n, d);
      params = {{"n", n}, {"d", d}};
    } else if (id == "layer_mean_full") {
      v = kdsky::layer_mean_full_exact(n, d, j);
      params = {{"n", n}, {"d", d}, {"j", j}};
    } else if (id == "cycle_mean") {
      v = kdsky::cycle_mean(n, d);
      params = {{"n", n}, {"d", d}};
    } else if (id == "beta") {
      v = kdsky::beta(d, k);
      params = {{"d", d}, {"k", k}};
    } else if (id == "categorical_mean") {
      require(levels, "levels");
      v = kdsky::categorical_mean(n, k, {levels, n_levels});
      params = {{"n", n}, {"k", k}, {"levels", std::vector<int>(levels, levels + n_levels)}};
    } else if (id == "sigma_m") {
      v = kdsky::ExactValue(mpq_class(kdsky::sigma_m(m, a)));
      params = {{"m", m}, {"l", a}};
    } else {
      kdsky::fail(kdsky::ErrorCode::UnknownId, "unknown exact formula id '" + id + "'");
    }
    json o;
    o["formula_id"] = id;
    o["params"] = params;
    o["value_decimal"] = v.to_decimal(precision > 0 ? precision : 15);
    o["value_rational"] = v.to_rational_string();
    *out_json = dup_string(o.dump());
  });
}

kds_status kds_threshold(const char* kind, const char* n_decimal, char** out_json) {
  return guard([&] {
    require(kind, "kind");
    require(n_decimal, "n");
    require(out_json, "out_json");
    const mpz_class n = kdsky::parse_big_integer(n_decimal);
    const std::string k(kind);
    kdsky::ThresholdResult r;
    if (k == "d0") r = kdsky::threshold_d0(n);
    else if (k == "d1") r = kdsky::threshold_d1(n);
    else kdsky::fail(kdsky::ErrorCode::UnknownId, "threshold kind must be d0 or d1");
    *out_json = dup_string(threshold_json(r).dump());
  });
}

kds_status kds_threshold_table(const char* kind, int imax, char** out_json) {
  return guard([&] {
    require(kind, "kind");
    require(out_json, "out_json");
    const std::string k(kind);
    std::vector<mpz_class> b;
    if (k == "d0") b = kdsky::d0_boundaries(imax);
    else if (k == "d1") b = kdsky::d1_boundaries(imax);
    else kdsky::fail(kdsky::ErrorCode::UnknownId, "threshold kind must be d0 or d1");
    json rows = json::array();
    for (std::size_t i = 0; i < b.size(); ++i) rows.push_back({{"i", i + 1}, {"a", b[i].get_str()}});
    json o;
    o["kind"] = k;
    o["imax"] = imax;
    o["boundaries"] = rows;
    *out_json = dup_string(o.dump());
  });
}

kds_status kds_parse_statistic(const char* name, int* out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    *out = static_cast<int>(kdsky::parse_statistic(name));
  });
}

kds_status kds_estimate(const kds_estimate_request* req, kds_estimate_result* out) {
  return guard([&] {
    require(req, "request");
    require(out, "out");
    const auto r = kdsky::estimate(to_request(*req));
    *out = kds_estimate_result{r.mean, r.stderr_, r.ci_lo, r.ci_hi, r.trials, r.seed};
  });
}

kds_status kds_cumulative_cloud(const kds_sampler_config* sampler, int k, const size_t* m_grid, size_t n_grid,
                                size_t trials, uint64_t seed, unsigned workers, int force, double* means,
                                double* stderrs) {
  return guard([&] {
    require(sampler, "sampler");
    if (n_grid > 0) {
      require(m_grid, "m_grid");
      require(means, "means");
      require(stderrs, "stderrs");
    }
    const auto c = kdsky::cumulative_cloud_curve(to_config(*sampler), k,
                                                 std::vector<std::size_t>(m_grid, m_grid + n_grid), trials,
                                                 seed, workers == 0 ? 1 : workers, force != 0);
    std::copy(c.mean.begin(), c.mean.end(), means);
    std::copy(c.stderr_.begin(), c.stderr_.end(), stderrs);
  });
}

kds_status kds_distribution(const kds_estimate_request* req, char** out_json) {
  return guard([&] {
    require(req, "request");
    require(out_json, "out_json");
    const auto dist = kdsky::distribution_histogram(to_request(*req));
    json freq = json::array();
    for (const auto& [value, mass] : dist.frequency) freq.push_back({value, mass});
    json o;
    o["trials"] = dist.trials;
    o["mean"] = dist.mean;
    o["variance"] = dist.variance;
    o["frequency"] = freq;
    *out_json = dup_string(o.dump());
  });
}

kds_status kds_table_csv(const char* table_id, const kds_table_options* options, char** out_csv) {
  return guard([&] {
    require(table_id, "table_id");
    require(out_csv, "out_csv");
    kdsky::TableOptions opt;
    if (options) {
      opt.with_mc = options->with_mc != 0;
      if (options->trials > 0) opt.trials = options->trials;
      opt.seed = options->seed;
      opt.workers = options->workers == 0 ? 1 : options->workers;
      opt.force = options->force != 0;
      opt.imax = options->imax;
      opt.n = options->n;
    }
    std::ostringstream os;
    kdsky::write_table_csv(os, kdsky::make_table(table_id, opt));
    *out_csv = dup_string(os.str());
  });
}

}  // extern "C"
