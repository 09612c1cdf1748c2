#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "findex/types.hpp"

namespace findex {

using json = nlohmann::json;

struct CheckResult {
  std::string name;
  cxd value = 0.0;
  cxd reference = 0.0;
  std::string provenance;  // closed-form / oracle / internal-consistency
  double tolerance = 0.0;
  bool pass = false;
};

CheckResult make_check(std::string name, cxd value, cxd reference, double tol,
                       std::string provenance);

struct Report {
  std::string schema = "feynman-index/report/v1";
  json config_echo;
  std::vector<CheckResult> checks;
  double wall_clock_ms = 0.0;  // printed, never serialized (reports are byte-stable)

  int failures() const;
  bool all_pass() const { return failures() == 0; }
};

/// fixed 17-significant-digit decimal formatting, the deterministic float
/// representation used in every emitted file
std::string format_double(double v);

/// byte-stable serialization: sorted keys, fixed float formatting, '\n' EOL
std::string report_to_json(const Report& r);
void write_report(const Report& r, const std::filesystem::path& file);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string csv_to_string(const CsvTable& t);
void write_csv(const CsvTable& t, const std::filesystem::path& file);

}  // namespace findex
