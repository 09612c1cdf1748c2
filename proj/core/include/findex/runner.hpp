#pragma once

#include <cstdint>
#include <filesystem>

#include "findex/report.hpp"

namespace findex {

enum class Command { eta, xi, index, propagator_check, dist_check, hadamard, full_suite };

Command command_from_string(const std::string& s);
const char* to_string(Command c);

struct ExperimentConfig {
  Command command = Command::eta;
  json raw;  // the parsed config document (echoed into reports)
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 1;

  static ExperimentConfig from_json(const json& j);
  static ExperimentConfig from_file(const std::filesystem::path& file);
};

/// Dispatch to the owning module, write report.json (and the command's CSV
/// outputs) into out_dir.  The returned report's failure count is the
/// process exit status.
Report run(const ExperimentConfig& config);

}  // namespace findex
