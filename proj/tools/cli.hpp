#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace biblio::cli {

/// Everything a run depends on. The manifest stores this (minus the output
/// directory) so that `replay` can reproduce the run.
struct RunConfig {
  std::string subcommand;
  std::string input;
  int snapshot_year = 2020;
  double alpha = 1.3;
  int min_age = 1;
  long long n_perm = 100'000;
  std::uint64_t seed = 20200116;
  long long exact_threshold = 100'000;
  std::string out_dir = ".";
  std::string field_map;
  std::string format = "csv";
  std::string unknown_tags = "other";
  std::string log_response = "plus-one";
  bool lenient = false;
  double alpha_lo = 0.5;
  double alpha_hi = 2.0;
  double alpha_step = 0.01;
  /// synth only
  std::string synth_spec;

  /// Throws ConfigError naming the offending flag.
  void validate() const;
};

nlohmann::json config_to_json(const RunConfig &config);
RunConfig config_from_json(const nlohmann::json &j);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string &path);

/// Parses argv (without the program name) and runs the subcommand.
/// Returns 0 on success, 1 on validation or data errors, 2 on usage errors.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace biblio::cli
