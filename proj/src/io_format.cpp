#include "circesc/io_format.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace circesc {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string cell_text(const Cell& c, bool json) {
  if (std::holds_alternative<double>(c)) return format_g17(std::get<double>(c));
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  const auto& s = std::get<std::string>(c);
  return json ? "\"" + json_escape(s) + "\"" : csv_escape(s);
}

}  // namespace

RecordTable::RecordTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void RecordTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size())
    throw std::logic_error("RecordTable: row width does not match the header");
  rows_.push_back(std::move(row));
}

void RecordTable::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    os << (i ? "," : "") << csv_escape(columns_[i]);
  os << "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << cell_text(row[i], false);
    os << "\n";
  }
}

void RecordTable::write_json(std::ostream& os) const {
  os << "[";
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    os << (r ? ",\n " : "\n ") << "{";
    for (std::size_t i = 0; i < rows_[r].size(); ++i) {
      os << (i ? ", " : "") << "\"" << json_escape(columns_[i])
         << "\": " << cell_text(rows_[r][i], true);
    }
    os << "}";
  }
  os << "\n]\n";
}

}  // namespace circesc
