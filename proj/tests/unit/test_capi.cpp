// Exercises the shared library through the C header only.
#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include "kdsky/kdsky.h"

namespace {

std::string take(char* s) {
  std::string out(s ? s : "");
  kds_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("dataset handles and the six-point example") {
  const double coords[] = {1, 2, 2, 3, 3, 3, 1, 2, 2, 3, 3, 3, 1, 2, 2,
                           2, 3, 3, 1, 2, 2, 2, 3, 3, 1, 2, 3, 1, 1, 3};
  kds_dataset* data = nullptr;
  REQUIRE(kds_dataset_create(5, coords, 6, 1, &data) == KDS_OK);
  CHECK(kds_dataset_size(data) == 6);
  CHECK(kds_dataset_dim(data) == 5);

  kds_indices* idx = nullptr;
  REQUIRE(kds_skyline(data, 4, KDS_ALG_THREE_PHASE, &idx) == KDS_OK);
  CHECK(kds_indices_size(idx) == 0);
  kds_indices_free(idx);

  REQUIRE(kds_skyline(data, 0, KDS_ALG_EXHAUSTIVE, &idx) == KDS_OK);
  CHECK(kds_indices_size(idx) == 6);
  kds_indices_free(idx);

  std::vector<size_t> counts(6);
  REQUIRE(kds_dominator_counts(data, 5, counts.data()) == KDS_OK);
  CHECK(counts[5] == 0);
  REQUIRE(kds_dominator_counts(data, 4, counts.data()) == KDS_OK);
  CHECK(counts[5] == 1);

  CHECK(kds_skyline(data, 6, KDS_ALG_THREE_PHASE, &idx) == KDS_ERR_OUT_OF_RANGE);
  CHECK(std::strlen(kds_last_error()) > 0);
  kds_dataset_free(data);
}

TEST_CASE("argument errors map to status codes") {
  kds_dataset* data = nullptr;
  const double bad[] = {0.5, 2.0};
  CHECK(kds_dataset_create(2, bad, 1, 1, &data) == KDS_ERR_INVALID_ARGUMENT);
  CHECK(data == nullptr);
  CHECK(kds_dataset_create(2, nullptr, 1, 0, &data) == KDS_ERR_INVALID_ARGUMENT);
  CHECK(kds_dataset_read_csv("/nonexistent/x.csv", 0, &data) == KDS_ERR_IO);
  int model = -1;
  CHECK(kds_parse_model("torus", &model) == KDS_ERR_UNKNOWN_ID);
  CHECK(kds_parse_model("line-A", &model) == KDS_OK);
  CHECK(model == KDS_MODEL_LINE_A);
  char* out = nullptr;
  CHECK(kds_predict("nope", 1e4, 5, 0, 0, 0, &out) == KDS_ERR_UNKNOWN_ID);
  CHECK(kds_threshold("d0", "12x", &out) == KDS_ERR_PARSE);
  double v = 0;
  CHECK(kds_f_d_numeric(1e4, 9, &v) == KDS_ERR_UNSUPPORTED);
  CHECK(kds_lambert_w(-5.0, &v) != KDS_OK);
}

TEST_CASE("last error is per thread") {
  int model = 0;
  REQUIRE(kds_parse_model("torus", &model) != KDS_OK);
  const std::string mine = kds_last_error();
  std::thread t([] {
    int m = 0;
    kds_parse_model("hypercube", &m);
    double v = 0;
    kds_lambert_w(-5.0, &v);
  });
  t.join();
  CHECK(std::string(kds_last_error()) == mine);
}

TEST_CASE("sampling and csv round trip") {
  kds_sampler_config cfg{};
  cfg.model = KDS_MODEL_HYPERCUBE;
  cfg.n = 25;
  cfg.d = 3;
  cfg.seed = 17;
  kds_dataset* a = nullptr;
  REQUIRE(kds_sample(&cfg, &a) == KDS_OK);
  const std::string path = (std::filesystem::temp_directory_path() / "kdsky_capi_roundtrip.csv").string();
  REQUIRE(kds_dataset_write_csv(a, path.c_str()) == KDS_OK);
  kds_dataset* b = nullptr;
  REQUIRE(kds_dataset_read_csv(path.c_str(), 0, &b) == KDS_OK);
  CHECK(std::memcmp(kds_dataset_coords(a), kds_dataset_coords(b), 75 * sizeof(double)) == 0);
  std::remove(path.c_str());
  kds_dataset_free(a);
  kds_dataset_free(b);

  const int levels[] = {2, 2};
  cfg.model = KDS_MODEL_CATEGORICAL;
  cfg.levels = levels;
  cfg.n_levels = 2;
  REQUIRE(kds_sample(&cfg, &a) == KDS_OK);
  CHECK(kds_dataset_dim(a) == 2);
  kds_dataset_free(a);
}

TEST_CASE("exact values") {
  kds_exact* v = nullptr;
  const int levels[] = {2, 2};
  REQUIRE(kds_exact_categorical_mean(2, 1, levels, 2, 0, &v) == KDS_OK);
  char* s = nullptr;
  REQUIRE(kds_exact_to_rational(v, &s) == KDS_OK);
  CHECK(take(s) == "9/8");
  CHECK(kds_exact_to_double(v) == doctest::Approx(1.125));
  kds_exact_free(v);

  REQUIRE(kds_exact_harmonic(10, 1, &v) == KDS_OK);
  REQUIRE(kds_exact_to_decimal(v, 10, &s) == KDS_OK);
  CHECK(take(s) == "2.928968254");
  kds_exact_free(v);

  REQUIRE(kds_exact_sigma_m(2, 5, &v) == KDS_OK);
  CHECK(kds_exact_to_double(v) > 0);
  kds_exact_free(v);

  char* json = nullptr;
  REQUIRE(kds_predict_exact("cycle_mean", 50, 2, 0, 0, 0, 0, nullptr, 0, 15, &json) == KDS_OK);
  CHECK(take(json).find("\"value_rational\":\"1225/2\"") != std::string::npos);
}

TEST_CASE("real-valued formulas") {
  double v = 0;
  REQUIRE(kds_skyline_mean(10000, 5, &v) == KDS_OK);
  CHECK(v == doctest::Approx(426.302725033));
  REQUIRE(kds_layer_mean(50, 2, 0, 1, &v) == KDS_OK);
  CHECK(v == doctest::Approx(0.02));
  const int x[] = {2, 2}, lv[] = {2, 2};
  uint64_t vol = 0;
  REQUIRE(kds_categorical_volume(x, 1, lv, 2, &vol) == KDS_OK);
  CHECK(vol == 3);
  REQUIRE(kds_in_integral(2, 0.5, &v) == KDS_OK);
  REQUIRE(kds_lower_bound(1000, 100, 70, &v) == KDS_OK);
  CHECK(v == doctest::Approx(855.641854192));
  REQUIRE(kds_phi_operator_power_gd(0, 1e4, 5, &v) == KDS_OK);
  char* json = nullptr;
  REQUIRE(kds_predict("phi_minus_g", 1e4, 6, 0, 0, 0, &json) == KDS_OK);
  CHECK(take(json).find("\"formula_id\":\"phi_minus_g\"") != std::string::npos);
}

TEST_CASE("thresholds") {
  char* json = nullptr;
  REQUIRE(kds_threshold("d0", "19683", &json) == KDS_OK);
  CHECK(take(json).find("\"value\":4") != std::string::npos);
  REQUIRE(kds_threshold("d1", "2022", &json) == KDS_OK);
  CHECK(take(json).find("\"value\":8") != std::string::npos);
  REQUIRE(kds_threshold_table("d1", 12, &json) == KDS_OK);
  CHECK(take(json).find("\"15982276\"") != std::string::npos);
  CHECK(kds_threshold("d2", "10", &json) == KDS_ERR_UNKNOWN_ID);
}

TEST_CASE("monte carlo through the C API") {
  kds_estimate_request req{};
  REQUIRE(kds_parse_statistic("cycle-count", &req.statistic) == KDS_OK);
  req.sampler.model = KDS_MODEL_HYPERCUBE;
  req.sampler.n = 30;
  req.sampler.d = 2;
  req.k = 1;
  req.cycle_length = 2;
  req.trials = 200;
  req.seed = 3;
  req.workers = 2;
  kds_estimate_result r{};
  REQUIRE(kds_estimate(&req, &r) == KDS_OK);
  CHECK(std::abs(r.mean - 30 * 29 / 4.0) < 4 * r.stderr_);
  CHECK(r.trials == 200);

  req.sampler.n = 100000;
  req.sampler.d = 8;
  req.statistic = KDS_STAT_SKYLINE_COUNT;
  CHECK(kds_estimate(&req, &r) == KDS_ERR_WORK_LIMIT);

  const size_t grid[] = {0, 5, 29};
  double means[3], ses[3];
  kds_sampler_config s{};
  s.n = 30;
  s.d = 3;
  REQUIRE(kds_cumulative_cloud(&s, 2, grid, 3, 10, 1, 1, 0, means, ses) == KDS_OK);
  CHECK(means[2] == 30.0);

  req.sampler.n = 20;
  req.sampler.d = 2;
  char* json = nullptr;
  REQUIRE(kds_distribution(&req, &json) == KDS_OK);
  CHECK(take(json).find("\"frequency\"") != std::string::npos);
}

TEST_CASE("tables") {
  kds_table_options opt{};
  char* csv = nullptr;
  REQUIRE(kds_table_csv("d0-boundaries", &opt, &csv) == KDS_OK);
  CHECK(take(csv).find("4294967296") != std::string::npos);
  CHECK(kds_table_csv("nope", &opt, &csv) == KDS_ERR_UNKNOWN_ID);
  CHECK(std::string(kds_version()).size() > 0);
}
