#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace kdsky {

struct TableOptions {
  bool with_mc = false;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool force = false;
  int imax = 0;        ///< boundary tables; 0 picks the default
  std::size_t n = 0;   ///< cloud and lower-bound tables; 0 picks the default
};

/// Rows of rendered cells. Reference columns hold previously published
/// values and stay empty where none exists.
struct Table {
  std::string id;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

const std::vector<std::string>& table_ids();

Table make_table(std::string_view id, const TableOptions& options);

/// CSV, header first, '\n' line endings, dot decimal separator.
void write_table_csv(std::ostream& out, const Table& table);

}  // namespace kdsky
