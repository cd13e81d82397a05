#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "biblio/normalize.hpp"

namespace biblio {

struct FieldStats {
  std::string field;
  std::size_t count = 0;
  double mean_cit = 0.0;
  /// Sample standard deviation (n - 1); 0 for a single member.
  double sd_cit = 0.0;
  double mean_norm = 0.0;
};

double mean(std::span<const double> values);

/// Sample standard deviation; 0 when fewer than two values or all equal.
double sample_sd(std::span<const double> values);

/// One row per field present, sorted by mean_norm descending (ties by field
/// name ascending).
std::vector<FieldStats> field_summary(const std::vector<ScoredRecord> &records);

/// Fills `z` with (norm_cit - field mean) / field sample sd. Members of a
/// singleton field, or a field whose norm_cit values are all equal, get 0.
std::vector<ScoredRecord> zscore_by_field(std::vector<ScoredRecord> records);

} // namespace biblio
