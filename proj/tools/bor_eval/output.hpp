#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace cli {

using json = nlohmann::json;

enum class Format { table, json, csv };

Format parse_format(const std::string& name);

// Raised by command handlers; main turns it into a message and exit code.
struct Failure {
  int exit_code;
  std::string message;
};

// Shortest text that reads back to the same double ("nan", "inf" for non-finite).
std::string full(double x);
// Fixed decimals for the human table; "-inf" and "undef" for non-finite values.
std::string fixed(double x, int decimals);
std::string bits(double x);
// Lambda as shown in tables: two decimals, or two significant digits below 0.1.
std::string lambda_text(double x);

class Table {
 public:
  explicit Table(std::vector<std::string> headers) : headers_(std::move(headers)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void print(std::ostream& out) const;

 private:
  std::vector<std::string> headers_;
  std::vector<std::vector<std::string>> rows_;
};

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
};

// Versioned envelope around every machine-readable payload.
class Report {
 public:
  Report(std::string command, json params) : command_(std::move(command)), params_(std::move(params)) {}

  void warn(std::string message) { warnings_.push_back(std::move(message)); }
  const std::vector<std::string>& warnings() const { return warnings_; }
  json envelope(json payload) const;
  // Warnings go to stderr for table and csv output.
  void flush_warnings(std::ostream& err) const;

 private:
  std::string command_;
  json params_;
  std::vector<std::string> warnings_;
};

inline constexpr int kSchemaVersion = 1;

}  // namespace cli
