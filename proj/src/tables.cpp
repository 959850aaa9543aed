#include "kdsky/tables.hpp"

#include <cmath>
#include <ostream>

#include "kdsky/asymptotics.hpp"
#include "kdsky/csv.hpp"
#include "kdsky/error.hpp"
#include "kdsky/exact.hpp"
#include "kdsky/montecarlo.hpp"
#include "kdsky/thresholds.hpp"

namespace kdsky {
namespace {

struct Golden {
  double n;
  double predictor[5];
  double mc[5];
};

// d = 4..8.
constexpr double kMu10e4[5] = {164.7, 426.3, 902.7, 1633.1, 2603};
constexpr double kMu10e5[5] = {304.9, 955.8, 2432.1, 5239.4, 9845};
constexpr Golden kApprox10e4 = {1e4, {0.61, 5.06, 24.85, 88.90, 243.96}, {0.57, 4.82, 23.98, 83.89, 226.65}};
constexpr Golden kApprox10e5 = {1e5, {0.31, 3.69, 24.94, 115.31, 404.7}, {0.29, 3.61, 24.38, 111.79, 386.08}};
// i = 4..12.
constexpr long kD1Boundaries[9] = {3, 10, 49, 290, 2022, 16165, 145405, 1453435, 15982276};

std::string fixed(double v, int decimals = 4) { return format_fixed(v, decimals); }

Table mu_table(const std::string& id, std::uint64_t n, const double (&ref)[5]) {
  Table t{id, {"n", "d", "reference_value", "computed_value", "abs_diff"}, {}};
  for (int d = 4; d <= 8; ++d) {
    const double v = skyline_mean(n, d);
    const double r = ref[d - 4];
    t.rows.push_back({std::to_string(n), std::to_string(d), format_number(r), fixed(v), fixed(std::abs(v - r))});
  }
  return t;
}

Table approx_table(const std::string& id, const Golden& g, const TableOptions& opt) {
  Table t{id, {"n", "d", "reference_value", "reference_mc", "computed_value", "abs_diff"}, {}};
  if (opt.with_mc) {
    for (const char* c : {"mc_mean", "mc_stderr", "mc_trials"}) t.columns.emplace_back(c);
  }
  const auto n = static_cast<std::size_t>(g.n);
  for (int d = 4; d <= 8; ++d) {
    const double v = phi_minus_g(g.n, d);
    const double r = g.predictor[d - 4];
    std::vector<std::string> row = {std::to_string(n), std::to_string(d), format_number(r),
                                    format_number(g.mc[d - 4]), fixed(v), fixed(std::abs(v - r))};
    if (opt.with_mc) {
      EstimateRequest req;
      req.statistic = Statistic::KDominantCount;
      req.sampler.model = Model::Hypercube;
      req.sampler.n = n;
      req.sampler.d = static_cast<std::size_t>(d);
      req.k = d - 1;
      req.trials = opt.trials;
      req.seed = opt.seed;
      req.workers = opt.workers;
      req.force = opt.force;
      const EstimateResult e = estimate(req);
      row.push_back(fixed(e.mean));
      row.push_back(fixed(e.stderr_));
      row.push_back(std::to_string(e.trials));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table d0_table(const TableOptions& opt) {
  const int imax = opt.imax > 0 ? opt.imax : 4;
  if (imax < 2) fail(ErrorCode::OutOfRange, "imax must be >= 2");
  Table t{"d0-boundaries", {"i", "n", "reference_value", "computed_value", "abs_diff"}, {}};
  const auto bounds = d0_boundaries(imax);
  for (int i = 2; i <= imax; ++i) {
    const mpz_class& a = bounds[i - 1];
    for (const mpz_class& n : {mpz_class(a - 1), a}) {
      const int v = threshold_d0(n).value;
      std::string ref, diff;
      if (i <= 4) {
        const int r = n == a ? i + 1 : i;
        ref = std::to_string(r);
        diff = std::to_string(std::abs(v - r));
      }
      t.rows.push_back({std::to_string(i), n.get_str(), ref, std::to_string(v), diff});
    }
  }
  return t;
}

Table d1_table(const TableOptions& opt) {
  const int imax = opt.imax > 0 ? opt.imax : 12;
  if (imax < 4) fail(ErrorCode::OutOfRange, "imax must be >= 4");
  Table t{"d1-boundaries", {"i", "reference_value", "computed_value", "abs_diff"}, {}};
  const auto bounds = d1_boundaries(imax);
  for (int i = 4; i <= imax; ++i) {
    const mpz_class& a = bounds[i - 1];
    std::string ref, diff;
    if (i <= 12) {
      const mpz_class r(kD1Boundaries[i - 4]);
      ref = r.get_str();
      mpz_class dlt = a - r;
      diff = mpz_class(abs(dlt)).get_str();
    }
    t.rows.push_back({std::to_string(i), ref, a.get_str(), diff});
  }
  return t;
}

Table cloud_table(const TableOptions& opt) {
  const std::size_t n = opt.n > 0 ? opt.n : 100;
  const int d = 4;
  Table t{"fig2-clouds", {"n", "d", "k", "m", "mean", "stderr", "trials"}, {}};
  std::vector<std::size_t> grid;
  const std::size_t points = std::min<std::size_t>(n, 51);
  for (std::size_t i = 0; i < points; ++i) {
    const std::size_t m = points == 1 ? 0 : (i * (n - 1) + (points - 1) / 2) / (points - 1);
    if (grid.empty() || grid.back() != m) grid.push_back(m);
  }
  SamplerConfig cfg;
  cfg.model = Model::Hypercube;
  cfg.n = n;
  cfg.d = d;
  for (int k = 1; k < d; ++k) {
    const CloudCurve c = cumulative_cloud_curve(cfg, k, grid, opt.trials, opt.seed, opt.workers, opt.force);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      t.rows.push_back({std::to_string(n), std::to_string(d), std::to_string(k), std::to_string(grid[i]),
                        fixed(c.mean[i]), fixed(c.stderr_[i]), std::to_string(opt.trials)});
    }
  }
  return t;
}

Table lower_bound_table(const TableOptions& opt) {
  const std::size_t n = opt.n > 0 ? opt.n : 1000;
  const int d = 100;
  Table t{"fig4-lowerbound", {"n", "d", "k", "beta", "lower_bound"}, {}};
  if (opt.with_mc) {
    for (const char* c : {"mc_mean", "mc_stderr", "mc_trials"}) t.columns.emplace_back(c);
  }
  for (int k = 50; k < d; k += 5) {
    const double b = beta(d, k).to_double();
    std::vector<std::string> row = {std::to_string(n), std::to_string(d), std::to_string(k), format_number(b),
                                    fixed(lower_bound(n, d, k))};
    if (opt.with_mc) {
      EstimateRequest req;
      req.statistic = Statistic::KDominantCount;
      req.sampler.model = Model::Hypercube;
      req.sampler.n = n;
      req.sampler.d = d;
      req.k = k;
      req.trials = opt.trials;
      req.seed = opt.seed;
      req.workers = opt.workers;
      req.force = opt.force;
      const EstimateResult e = estimate(req);
      row.push_back(fixed(e.mean));
      row.push_back(fixed(e.stderr_));
      row.push_back(std::to_string(e.trials));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

const std::vector<std::string>& table_ids() {
  static const std::vector<std::string> ids = {"mu-10e4",       "mu-10e5",       "approx-10e4",
                                               "approx-10e5",   "d0-boundaries", "d1-boundaries",
                                               "fig2-clouds",   "fig4-lowerbound"};
  return ids;
}

Table make_table(std::string_view id, const TableOptions& opt) {
  if (id == "mu-10e4") return mu_table("mu-10e4", 10000, kMu10e4);
  if (id == "mu-10e5") return mu_table("mu-10e5", 100000, kMu10e5);
  if (id == "approx-10e4") return approx_table("approx-10e4", kApprox10e4, opt);
  if (id == "approx-10e5") return approx_table("approx-10e5", kApprox10e5, opt);
  if (id == "d0-boundaries") return d0_table(opt);
  if (id == "d1-boundaries") return d1_table(opt);
  if (id == "fig2-clouds") return cloud_table(opt);
  if (id == "fig4-lowerbound") return lower_bound_table(opt);
  fail(ErrorCode::UnknownId, "unknown table id '" + std::string(id) + "'");
}

void write_table_csv(std::ostream& out, const Table& table) {
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  line(table.columns);
  for (const auto& row : table.rows) line(row);
}

}  // namespace kdsky
