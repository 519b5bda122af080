#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace circesc {

// 17 significant digits: enough for bit-exact double round trips.
std::string format_g17(double v);

using Cell = std::variant<std::string, double, long long>;

// One flat table, emitted as CSV (RFC 4180 quoting, header row) or as a JSON
// array of flat records. Floating cells go through format_g17 either way.
class RecordTable {
public:
  explicit RecordTable(std::vector<std::string> columns);
  void add_row(std::vector<Cell> row);
  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;

  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace circesc
