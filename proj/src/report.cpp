#include "lkllt/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lkllt/core.hpp"

namespace lkllt {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void RateTable::add_row(std::vector<double> row) {
  require(row.size() == columns.size(), ErrorKind::InvalidParameter,
          "row width does not match the column set");
  rows.push_back(std::move(row));
}

void RateTable::sort_rows() {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

std::size_t RateTable::column_index(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) fail(ErrorKind::InvalidParameter, "no column named " + name);
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> RateTable::column(const std::string& name) const {
  const std::size_t j = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[j]);
  return out;
}

std::string RateTable::to_csv() const {
  std::string out;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (j) out += ',';
    out += columns[j];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += format_number(row[j]);
    }
    out += '\n';
  }
  return out;
}

std::string RateTable::to_json() const {
  // Numbers are spliced in as pre-formatted text so both emitters agree digit
  // for digit; the surrounding structure comes from nlohmann::ordered_json.
  nlohmann::ordered_json doc;
  doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : metadata) doc["metadata"][key] = value;
  doc["columns"] = nlohmann::ordered_json::object();
  for (const auto& name : columns) doc["columns"][name] = nlohmann::ordered_json::array();
  std::string text = doc.dump(2);

  std::string body;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    body += "    " + nlohmann::json(columns[j]).dump() + ": [";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i) body += ", ";
      const std::string num = format_number(rows[i][j]);
      body += std::isfinite(rows[i][j]) ? num : "\"" + num + "\"";
    }
    body += j + 1 < columns.size() ? "],\n" : "]\n";
  }
  const std::size_t at = text.rfind("\"columns\"");
  text.erase(at);
  text += "\"columns\": {\n" + body + "  }\n}\n";
  return text;
}

}  // namespace lkllt
