#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "kapteyn/error.hpp"

namespace kapteyn::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kDomainViolation = 2,
  kUsage = 64,
};

/// One output row: ordered (column name, cell text) pairs.
struct OutputRecord {
  std::vector<std::pair<std::string, std::string>> columns;

  void add(std::string name, std::string value) {
    columns.emplace_back(std::move(name), std::move(value));
  }
};

/// %.15g, with negative zero printed as 0.
std::string format_decimal(double value);

/// CSV with a header row and LF line endings. When `records` is empty the
/// header comes from `header`.
void write_csv(std::ostream& out, const std::vector<OutputRecord>& records,
               const std::vector<std::string>& header = {});

/// JSON array of objects mirroring the CSV cells.
void write_json(std::ostream& out, const std::vector<OutputRecord>& records);

ExitCode exit_code_for(ErrorKind kind);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace kapteyn::cli
