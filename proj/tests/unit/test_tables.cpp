#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "kdsky/error.hpp"
#include "kdsky/tables.hpp"

using namespace kdsky;

namespace {

std::size_t column(const Table& t, const std::string& name) {
  const auto it = std::find(t.columns.begin(), t.columns.end(), name);
  REQUIRE(it != t.columns.end());
  return static_cast<std::size_t>(it - t.columns.begin());
}

}  // namespace

TEST_CASE("every table id renders") {
  TableOptions opt;
  opt.n = 30;  // keeps the simulation tables quick
  for (const std::string& id : table_ids()) {
    const Table t = make_table(id, opt);
    CHECK(t.id == id);
    CHECK_FALSE(t.rows.empty());
    for (const auto& row : t.rows) CHECK(row.size() == t.columns.size());
  }
  CHECK_THROWS_AS(make_table("mu-10e9", opt), Error);
}

TEST_CASE("mu table carries reference and computed columns") {
  const Table t = make_table("mu-10e4", {});
  const std::size_t computed = column(t, "computed_value"), ref = column(t, "reference_value");
  CHECK(t.rows.size() == 5);
  CHECK(t.rows[1][ref] == "426.3");
  CHECK(std::stod(t.rows[1][computed]) == doctest::Approx(426.3027).epsilon(1e-6));
}

TEST_CASE("boundary tables are exact") {
  TableOptions opt;
  opt.imax = 12;
  const Table t = make_table("d1-boundaries", opt);
  const std::size_t v = column(t, "computed_value"), diff = column(t, "abs_diff");
  CHECK(t.rows.front()[v] == "3");
  CHECK(t.rows.back()[v] == "15982276");
  for (const auto& row : t.rows) CHECK(row[diff] == "0");
  const Table d0 = make_table("d0-boundaries", {});
  for (const auto& row : d0.rows) CHECK(row[column(d0, "abs_diff")] == "0");
}

TEST_CASE("approx tables gain Monte Carlo columns on request") {
  TableOptions opt;
  opt.with_mc = true;
  opt.trials = 2;
  opt.n = 300;
  const Table t = make_table("approx-10e4", opt);
  column(t, "mc_mean");
  column(t, "mc_stderr");
  CHECK(t.rows[0][column(t, "mc_trials")] == "2");
}

TEST_CASE("csv writer") {
  const Table t = make_table("d0-boundaries", {});
  std::ostringstream os;
  write_table_csv(os, t);
  const std::string s = os.str();
  CHECK(s.rfind("i,n,reference_value,computed_value,abs_diff\n", 0) == 0);
  CHECK(s.back() == '\n');
  CHECK(s.find(';') == std::string::npos);
}
