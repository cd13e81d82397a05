#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biblio/corpus.hpp"

namespace biblio {

inline constexpr double kDefaultAlpha = 1.3;

struct NormalizationConfig {
  double alpha = kDefaultAlpha;
  int min_age = 1;

  /// Throws std::invalid_argument unless alpha > 0 and min_age >= 1.
  void validate() const;
};

/// A faculty record with its major field, age, and age-corrected citations.
/// `z` stays empty until zscore_by_field fills it.
struct ScoredRecord {
  FacultyRecord base;
  std::string major_field;
  int age = 1;
  double norm_cit = 0.0;
  std::optional<double> z;

  bool operator==(const ScoredRecord &) const = default;
};

/// max(snapshot_year - first_pub_year, min_age).
int compute_age(int first_pub_year, int snapshot_year, int min_age = 1);

/// citations / age^alpha.
double normalized_citations(long long citations, int age, double alpha);

/// Maps every record to its major field and computes age and norm_cit.
/// Field-map warnings are reported once per distinct raw tag.
std::vector<ScoredRecord> score_corpus(const Corpus &corpus,
                                       const NormalizationConfig &config = {});

struct ExponentGrid {
  double lo = 0.5;
  double hi = 2.0;
  double step = 0.01;

  /// Grid points lo, lo + step, ... up to hi inclusive, each rounded to
  /// 12 decimal places so that e.g. 0.5 + 80 * 0.01 is exactly 1.3.
  std::vector<double> points() const;
};

struct CalibrationRow {
  double alpha = 0.0;
  double slope = 0.0;
  double stderr_slope = 0.0;
  double t = 0.0;
  double p = 0.0;
};

struct CalibrationResult {
  double alpha_star = 0.0;
  std::vector<CalibrationRow> diagnostics;
};

/// For each grid exponent, regresses citations / age^alpha on age and keeps
/// the exponent whose slope has the smallest |t| (ties go to the smaller
/// exponent).
CalibrationResult calibrate_exponent(const Corpus &corpus,
                                     const ExponentGrid &grid = {},
                                     int min_age = 1);

} // namespace biblio
