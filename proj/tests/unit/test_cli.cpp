// Runs the kdsky executable end to end.
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path kTmp = KDSKY_TEST_TMP;

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args, const std::string& env = "") {
  fs::create_directories(kTmp);
  const fs::path out = kTmp / "stdout.txt";
  const std::string cmd = env + " " + std::string(KDSKY_CLI_PATH) + " " + args + " > " + out.string() + " 2>" +
                          (kTmp / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  std::ifstream is(out);
  std::stringstream ss;
  ss << is.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("predict and threshold examples") {
  Run r = cli("predict --formula phi_minus_g --n 10000 --d 6");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(23.9862058491));
  CHECK(j.contains("validity_note"));

  r = cli("threshold --kind d0 --n 19683");
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["value"] == 4);

  r = cli("predict --formula categorical_mean --exact --n 2 --k 1 --levels 2,2");
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["value_rational"] == "9/8");
}

TEST_CASE("sample, skyline and the manifest") {
  const fs::path dir = kTmp / "run1";
  fs::remove_all(dir);
  Run r = cli("--seed 9 --out-dir " + dir.string() + " sample --model hypercube --n 50 --d 3 --out pts.csv");
  REQUIRE(r.code == 0);
  REQUIRE(fs::exists(dir / "pts.csv"));
  const auto m = nlohmann::json::parse(slurp(dir / "pts.csv.manifest.json"));
  CHECK(m["seed"] == 9);
  CHECK(m["seed_source"] == "flag");
  CHECK(m["subcommand"] == "sample");

  r = cli("skyline --in " + (dir / "pts.csv").string() + " --k 2,3");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["n"] == 50);
  CHECK(j["skylines"].size() == 2);
  CHECK(j["skylines"][0]["indices"].size() <= j["skylines"][1]["indices"].size());
}

TEST_CASE("seed comes from the environment when no flag is given") {
  const fs::path dir = kTmp / "run2";
  fs::remove_all(dir);
  Run r = cli("sample --n 5 --d 2 --out " + (dir / "a.csv").string(), "KDSKY_SEED=123");
  REQUIRE(r.code == 0);
  const auto m = nlohmann::json::parse(slurp(dir / "a.csv.manifest.json"));
  CHECK(m["seed"] == 123);
  CHECK(m["seed_source"] == "env");
  CHECK(m["env"]["KDSKY_SEED"] == "123");
  CHECK(cli("sample --n 5 --d 2", "KDSKY_SEED=abc").code == 2);
}

TEST_CASE("replay reproduces data files byte for byte") {
  const fs::path dir = kTmp / "run3";
  fs::remove_all(dir);
  const fs::path est = dir / "est.csv";
  Run r = cli("estimate --stat cumulative-cloud --n 40 --d 3 --k 2 --m-grid 0,3,39 --trials 20 --workers 3 --out " +
                  est.string(),
              "KDSKY_SEED=77");
  REQUIRE(r.code == 0);
  const std::string first = slurp(est);
  CHECK(first.rfind("statistic,model,n,d,k,j,m,length,trials,mean,stderr,ci_lo,ci_hi,seed\n", 0) == 0);
  CHECK(first.find(",39,0,20,40,0,40,40,77\n") != std::string::npos);
  fs::rename(est, dir / "first.csv");
  // environment changed; the manifest pins the original seed
  r = cli("replay --manifest " + (dir / "est.csv.manifest.json").string(), "KDSKY_SEED=5");
  REQUIRE(r.code == 0);
  CHECK(slurp(est) == first);

  const fs::path tab = dir / "d1.csv";
  REQUIRE(cli("table --id d1-boundaries --imax 12 --out " + tab.string()).code == 0);
  const std::string t1 = slurp(tab);
  CHECK(t1.find("16165") != std::string::npos);
  REQUIRE(cli("replay --manifest " + tab.string() + ".manifest.json").code == 0);
  CHECK(slurp(tab) == t1);
}

TEST_CASE("exit codes") {
  CHECK(cli("predict --formula bogus --n 10 --d 3").code == 2);
  CHECK(cli("threshold --kind d0 --n -4").code == 2);
  CHECK(cli("estimate --n 100000 --d 8 --trials 100").code == 3);
  CHECK(cli("sample --model torus --n 3").code == 2);
  CHECK(cli("nosuchcommand").code == 2);
  CHECK(cli("skyline --in /nonexistent.csv").code == 2);
  CHECK(cli("--help").code == 0);
}
