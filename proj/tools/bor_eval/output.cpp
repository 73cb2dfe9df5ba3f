#include "output.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "bor/bor.h"

namespace cli {

Format parse_format(const std::string& name) {
  if (name == "table") return Format::table;
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw Failure{2, "unknown format '" + name + "' (expected table, json or csv)"};
}

std::string full(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string fixed(double x, int decimals) {
  if (std::isnan(x)) return "undef";
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  // Avoid printing "-0.00" for tiny negative values.
  std::string s = buf;
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string bits(double x) { return fixed(x, 2); }

std::string lambda_text(double x) {
  if (!std::isfinite(x) || x >= 0.1 || x == 0.0) return fixed(x, 2);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2g", x);
  return buf;
}

void Table::print(std::ostream& out) const {
  std::vector<std::size_t> width(headers_.size());
  for (std::size_t c = 0; c < headers_.size(); ++c) width[c] = headers_[c].size();
  for (const auto& row : rows_)
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());

  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < width.size(); ++c) {
      const std::string cell = c < cells.size() ? cells[c] : "";
      if (c > 0) out << "  ";
      // First column left-aligned, numbers right-aligned.
      if (c == 0) out << std::left << std::setw(static_cast<int>(width[c])) << cell;
      else out << std::right << std::setw(static_cast<int>(width[c])) << cell;
    }
    out << '\n';
  };
  line(headers_);
  std::size_t total = 0;
  for (auto w : width) total += w;
  out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
  for (const auto& row : rows_) line(row);
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

}  // namespace

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out) { row(header); }

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << csv_escape(cells[i]);
  }
  out_ << '\n';
}

json Report::envelope(json payload) const {
  return json{{"schema_version", kSchemaVersion},
              {"tool", "bor-eval"},
              {"version", bor_version()},
              {"command", command_},
              {"params", params_},
              {"timestamp", utc_timestamp()},
              {"payload", std::move(payload)},
              {"warnings", warnings_}};
}

void Report::flush_warnings(std::ostream& err) const {
  for (const auto& w : warnings_) err << "warning: " << w << '\n';
}

}  // namespace cli
