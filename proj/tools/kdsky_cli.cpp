// kdsky command-line front end. Talks to the library only through kdsky.h.

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kdsky/kdsky.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;
constexpr int kExitWorkLimit = 3;

struct CliFailure {
  int exit_code;
  std::string message;
};

void check(kds_status s) {
  if (s == KDS_OK) return;
  const int code = s == KDS_ERR_WORK_LIMIT ? kExitWorkLimit
                   : s == KDS_ERR_INTERNAL ? kExitInternal
                                           : kExitValidation;
  throw CliFailure{code, kds_last_error()};
}

[[noreturn]] void invalid(const std::string& msg) { throw CliFailure{kExitValidation, msg}; }

// Owns a char* handed out by the library.
std::string take(char* s) {
  std::string out(s ? s : "");
  kds_string_free(s);
  return out;
}

std::string num(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    T v{};
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || end != item.data() + item.size()) {
      invalid(std::string("bad ") + what + " entry '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) invalid(std::string(what) + " list is empty");
  return out;
}

struct Globals {
  std::optional<std::uint64_t> seed;
  int precision = 15;
  std::string out_dir = ".";
  bool force = false;
  unsigned workers = 1;
};

struct RunContext {
  std::string subcommand;
  std::vector<std::string> argv;
  std::uint64_t seed = 0;
  std::string seed_source;
  std::optional<std::string> seed_env;
  std::vector<std::string> outputs;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

std::uint64_t resolve_seed(const Globals& g, RunContext& ctx) {
  if (const char* env = std::getenv("KDSKY_SEED")) ctx.seed_env = env;
  if (g.seed) {
    ctx.seed_source = "flag";
    return ctx.seed = *g.seed;
  }
  if (ctx.seed_env) {
    std::uint64_t v = 0;
    const std::string& s = *ctx.seed_env;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) invalid("KDSKY_SEED is not an unsigned integer: '" + s + "'");
    ctx.seed_source = "env";
    return ctx.seed = v;
  }
  ctx.seed_source = "default";
  return ctx.seed = 0;
}

fs::path output_path(const Globals& g, const std::string& out) {
  fs::path p(out);
  if (p.is_relative()) p = fs::path(g.out_dir) / p;
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p;
}

void write_manifest(const RunContext& ctx, const fs::path& data_path) {
  json m;
  m["subcommand"] = ctx.subcommand;
  m["argv"] = ctx.argv;
  m["seed"] = ctx.seed;
  m["seed_source"] = ctx.seed_source;
  m["env"] = {{"KDSKY_SEED", ctx.seed_env ? json(*ctx.seed_env) : json(nullptr)}};
  m["tool_version"] = kds_version();
  m["outputs"] = ctx.outputs;
  m["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count();
  std::ofstream os(data_path.string() + ".manifest.json", std::ios::binary);
  os << m.dump(2) << '\n';
}

// Writes text either to stdout or to --out (plus its manifest).
void emit(const Globals& g, RunContext& ctx, const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  const fs::path p = output_path(g, out);
  {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw CliFailure{kExitValidation, "cannot write " + p.string()};
    os << text;
  }
  ctx.outputs.push_back(p.string());
  write_manifest(ctx, p);
}

struct SamplerFlags {
  std::string model = "hypercube";
  std::size_t n = 0;
  std::size_t d = 2;
  std::string levels;
};

void add_sampler_flags(CLI::App* sub, SamplerFlags& f) {
  sub->add_option("--model", f.model, "hypercube | simplex | categorical | line-A");
  sub->add_option("--n", f.n, "points per dataset")->required();
  sub->add_option("--d", f.d, "dimension");
  sub->add_option("--levels", f.levels, "categorical levels u_1,...,u_d");
}

struct SamplerHolder {
  kds_sampler_config cfg{};
  std::vector<int> levels;
};

SamplerHolder make_sampler(const SamplerFlags& f, std::uint64_t seed) {
  SamplerHolder h;
  int model = 0;
  check(kds_parse_model(f.model.c_str(), &model));
  h.cfg.model = model;
  h.cfg.n = f.n;
  h.cfg.d = f.d;
  h.cfg.seed = seed;
  if (model == KDS_MODEL_CATEGORICAL) {
    if (f.levels.empty()) invalid("--levels is required for the categorical model");
    h.levels = parse_list<int>(f.levels, "--levels");
    h.cfg.levels = h.levels.data();
    h.cfg.n_levels = h.levels.size();
    h.cfg.d = h.levels.size();
  }
  return h;
}

std::string dataset_csv(const kds_dataset* data) {
  const std::size_t n = kds_dataset_size(data), d = kds_dataset_dim(data);
  const double* c = kds_dataset_coords(data);
  std::string out;
  for (std::size_t j = 0; j < d; ++j) out += (j ? ",x" : "x") + std::to_string(j + 1);
  out += '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (j) out += ',';
      out += num(c[i * d + j]);
    }
    out += '\n';
  }
  return out;
}

int run(int argc, char** argv);

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }

namespace {

int run(int argc, char** argv) {
  CLI::App app{"k-dominant skylines: algorithms, exact and asymptotic expectations, simulation"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "master seed (default: $KDSKY_SEED, else 0)");
  app.add_option("--precision", g.precision, "significant digits for exact values")->check(CLI::Range(1, 1000));
  app.add_option("--out-dir", g.out_dir, "directory for relative --out paths");
  app.add_flag("--force", g.force, "run even above the work ceiling");
  app.add_option("--workers", g.workers, "Monte Carlo worker threads")->check(CLI::Range(1u, 1024u));

  RunContext ctx;
  for (int i = 1; i < argc; ++i) ctx.argv.emplace_back(argv[i]);

  // sample
  auto* sample = app.add_subcommand("sample", "draw a dataset and write it as CSV");
  SamplerFlags sample_flags;
  std::string sample_out;
  add_sampler_flags(sample, sample_flags);
  sample->add_option("--out", sample_out, "CSV path (stdout if omitted)");

  // skyline
  auto* skyline = app.add_subcommand("skyline", "k-dominant skylines of a CSV dataset");
  std::string sky_in, sky_k, sky_out, sky_alg = "three-phase";
  bool sky_categorical = false;
  skyline->add_option("--in", sky_in, "CSV with header x1,...,xd")->required();
  skyline->add_option("--k", sky_k, "comma list of k values (default: d)");
  skyline->add_option("--algorithm", sky_alg, "three-phase | exhaustive");
  skyline->add_flag("--categorical", sky_categorical, "integer levels >= 1");
  skyline->add_option("--out", sky_out, "JSON path (stdout if omitted)");

  // estimate
  auto* est = app.add_subcommand("estimate", "Monte Carlo estimate of a statistic");
  SamplerFlags est_flags;
  std::string est_stat = "skyline-count", est_mgrid, est_out, est_alg = "three-phase";
  int est_k = 0, est_len = 0;
  std::size_t est_j = 0, est_trials = 100;
  add_sampler_flags(est, est_flags);
  est->add_option("--stat", est_stat,
                  "skyline-count | k-dominant-count | cloud-cell | cumulative-cloud | cycle-count");
  est->add_option("--k", est_k, "dominance parameter (default: d)");
  est->add_option("--j", est_j, "cloud cell index");
  est->add_option("--m-grid", est_mgrid, "comma list of m for cumulative-cloud");
  est->add_option("--length", est_len, "cycle length (default: d)");
  est->add_option("--trials", est_trials, "number of trials")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  est->add_option("--algorithm", est_alg, "three-phase | exhaustive");
  est->add_option("--out", est_out, "CSV path (stdout if omitted)");

  // predict
  auto* pred = app.add_subcommand("predict", "evaluate an asymptotic or exact formula");
  std::string pred_formula, pred_levels, pred_out;
  double pred_n = 0;
  int pred_d = 0, pred_k = 0, pred_m = 0, pred_a = 1;
  std::uint64_t pred_j = 0;
  bool pred_exact = false;
  pred->add_option("--formula", pred_formula, "formula id")->required();
  pred->add_option("--n", pred_n, "n");
  pred->add_option("--d", pred_d, "d");
  pred->add_option("--k", pred_k, "k");
  pred->add_option("--j", pred_j, "j");
  pred->add_option("--m", pred_m, "m");
  pred->add_option("--a", pred_a, "harmonic order a, or l for sigma_m");
  pred->add_option("--levels", pred_levels, "categorical levels");
  pred->add_flag("--exact", pred_exact, "exact rational formulas");
  pred->add_option("--out", pred_out, "JSON path (stdout if omitted)");

  // threshold
  auto* thr = app.add_subcommand("threshold", "dimension thresholds d0 and d1");
  std::string thr_kind = "d0", thr_n, thr_out;
  bool thr_table = false;
  int thr_imax = 12;
  thr->add_option("--kind", thr_kind, "d0 | d1");
  thr->add_option("--n", thr_n, "decimal integer n");
  thr->add_flag("--table", thr_table, "dump the boundary sequence");
  thr->add_option("--imax", thr_imax, "last boundary index")->check(CLI::Range(1, 100000));
  thr->add_option("--out", thr_out, "JSON path (stdout if omitted)");

  // table
  auto* tab = app.add_subcommand("table", "regenerate a reference table as CSV");
  std::string tab_id, tab_out;
  bool tab_mc = false;
  std::size_t tab_trials = 100, tab_n = 0;
  int tab_imax = 0;
  tab->add_option("--id", tab_id,
                  "mu-10e4 | mu-10e5 | approx-10e4 | approx-10e5 | d0-boundaries | d1-boundaries | "
                  "fig2-clouds | fig4-lowerbound")
      ->required();
  tab->add_flag("--with-mc", tab_mc, "add Monte Carlo columns");
  tab->add_option("--trials", tab_trials, "Monte Carlo trials");
  tab->add_option("--imax", tab_imax, "last boundary index");
  tab->add_option("--n", tab_n, "sample size for the simulation tables");
  tab->add_option("--out", tab_out, "CSV path (stdout if omitted)");

  // replay
  auto* rep = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  std::string rep_manifest;
  rep->add_option("--manifest", rep_manifest, "path to <output>.manifest.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (rep->parsed()) {
      std::ifstream is(rep_manifest);
      if (!is) invalid("cannot read manifest " + rep_manifest);
      json m;
      try {
        is >> m;
      } catch (const json::exception& e) {
        invalid(std::string("malformed manifest: ") + e.what());
      }
      if (!m.contains("argv") || !m["argv"].is_array()) invalid("manifest has no argv array");
      std::vector<std::string> args = {argv[0]};
      for (const auto& a : m["argv"]) args.push_back(a.get<std::string>());
      // Pin the seed that was in effect, whatever its source was.
      if (m.contains("seed") && m["seed_source"] != "flag") {
        args.push_back("--seed");
        args.push_back(std::to_string(m["seed"].get<std::uint64_t>()));
      }
      std::vector<char*> ptrs;
      for (auto& a : args) ptrs.push_back(a.data());
      return run(static_cast<int>(ptrs.size()), ptrs.data());
    }

    const std::uint64_t seed = resolve_seed(g, ctx);

    if (sample->parsed()) {
      ctx.subcommand = "sample";
      SamplerHolder h = make_sampler(sample_flags, seed);
      kds_dataset* data = nullptr;
      check(kds_sample(&h.cfg, &data));
      const std::string csv = dataset_csv(data);
      kds_dataset_free(data);
      emit(g, ctx, sample_out, csv);
      return kExitOk;
    }

    if (skyline->parsed()) {
      ctx.subcommand = "skyline";
      kds_dataset* data = nullptr;
      check(kds_dataset_read_csv(sky_in.c_str(), sky_categorical ? 1 : 0, &data));
      const int d = static_cast<int>(kds_dataset_dim(data));
      std::vector<int> ks = sky_k.empty() ? std::vector<int>{d} : parse_list<int>(sky_k, "--k");
      int alg = KDS_ALG_THREE_PHASE;
      if (sky_alg == "exhaustive") alg = KDS_ALG_EXHAUSTIVE;
      else if (sky_alg != "three-phase") invalid("--algorithm must be three-phase or exhaustive");
      json result;
      result["n"] = kds_dataset_size(data);
      result["d"] = d;
      result["skylines"] = json::array();
      for (int k : ks) {
        kds_indices* idx = nullptr;
        const kds_status s = kds_skyline(data, k, alg, &idx);
        if (s != KDS_OK) kds_dataset_free(data);
        check(s);
        std::vector<std::size_t> v(kds_indices_data(idx), kds_indices_data(idx) + kds_indices_size(idx));
        kds_indices_free(idx);
        result["skylines"].push_back({{"k", k}, {"indices", v}});
      }
      kds_dataset_free(data);
      emit(g, ctx, sky_out, result.dump() + "\n");
      return kExitOk;
    }

    if (est->parsed()) {
      ctx.subcommand = "estimate";
      SamplerHolder h = make_sampler(est_flags, seed);
      kds_estimate_request req{};
      check(kds_parse_statistic(est_stat.c_str(), &req.statistic));
      req.sampler = h.cfg;
      req.k = est_k;
      req.j = est_j;
      req.cycle_length = est_len;
      req.trials = est_trials;
      req.seed = seed;
      req.workers = g.workers;
      req.force = g.force ? 1 : 0;
      if (est_alg == "exhaustive") req.algorithm = KDS_ALG_EXHAUSTIVE;
      else if (est_alg != "three-phase") invalid("--algorithm must be three-phase or exhaustive");

      std::vector<std::size_t> grid = {0};
      if (req.statistic == KDS_STAT_CUMULATIVE_CLOUD) {
        if (est_mgrid.empty()) invalid("--m-grid is required for cumulative-cloud");
        grid = parse_list<std::size_t>(est_mgrid, "--m-grid");
      }
      std::string csv = "statistic,model,n,d,k,j,m,length,trials,mean,stderr,ci_lo,ci_hi,seed\n";
      for (std::size_t m : grid) {
        req.m = m;
        kds_estimate_result r{};
        check(kds_estimate(&req, &r));
        const std::size_t d = est_flags.model == "line-A" || est_flags.model == "line-a" ? 4 : h.cfg.d;
        csv += est_stat + "," + est_flags.model + "," + std::to_string(est_flags.n) + "," + std::to_string(d) +
               "," + std::to_string(est_k == 0 ? static_cast<int>(d) : est_k) + "," + std::to_string(est_j) +
               "," + std::to_string(m) + "," +
               std::to_string(req.statistic == KDS_STAT_CYCLE_COUNT ? (est_len == 0 ? static_cast<int>(d) : est_len)
                                                                     : 0) +
               "," + std::to_string(r.trials) + "," + num(r.mean) + "," + num(r.stderr_) + "," + num(r.ci_lo) +
               "," + num(r.ci_hi) + "," + std::to_string(r.seed) + "\n";
      }
      emit(g, ctx, est_out, csv);
      return kExitOk;
    }

    if (pred->parsed()) {
      ctx.subcommand = "predict";
      char* out = nullptr;
      if (pred_exact) {
        std::vector<int> levels;
        if (!pred_levels.empty()) levels = parse_list<int>(pred_levels, "--levels");
        if (pred_n < 0) invalid("--n must be >= 0");
        check(kds_predict_exact(pred_formula.c_str(), static_cast<std::uint64_t>(pred_n), pred_d, pred_k, pred_j,
                                pred_a, pred_m, levels.empty() ? nullptr : levels.data(), levels.size(),
                                g.precision, &out));
      } else {
        check(kds_predict(pred_formula.c_str(), pred_n, pred_d, pred_k, static_cast<int>(pred_j), pred_m, &out));
      }
      json report = json::parse(take(out));
      emit(g, ctx, pred_out, report.dump() + "\n");
      return kExitOk;
    }

    if (thr->parsed()) {
      ctx.subcommand = "threshold";
      char* out = nullptr;
      if (thr_table) {
        check(kds_threshold_table(thr_kind.c_str(), thr_imax, &out));
      } else {
        if (thr_n.empty()) invalid("--n is required unless --table is given");
        check(kds_threshold(thr_kind.c_str(), thr_n.c_str(), &out));
      }
      emit(g, ctx, thr_out, take(out) + "\n");
      return kExitOk;
    }

    if (tab->parsed()) {
      ctx.subcommand = "table";
      kds_table_options opt{};
      opt.with_mc = tab_mc ? 1 : 0;
      opt.trials = tab_trials;
      opt.seed = seed;
      opt.workers = g.workers;
      opt.force = g.force ? 1 : 0;
      opt.imax = tab_imax;
      opt.n = tab_n;
      char* out = nullptr;
      check(kds_table_csv(tab_id.c_str(), &opt, &out));
      emit(g, ctx, tab_out, take(out));
      return kExitOk;
    }
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitValidation;
}

}  // namespace
