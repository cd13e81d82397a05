#include "biblio/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "biblio/regression.hpp"

namespace biblio {

void NormalizationConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument(fmt::format("alpha must be > 0 (got {})", alpha));
  }
  if (min_age < 1) {
    throw std::invalid_argument(
        fmt::format("min_age must be >= 1 (got {})", min_age));
  }
}

int compute_age(int first_pub_year, int snapshot_year, int min_age) {
  if (first_pub_year > snapshot_year) {
    throw std::invalid_argument(
        fmt::format("first publication year {} is after snapshot year {}",
                    first_pub_year, snapshot_year));
  }
  return std::max(snapshot_year - first_pub_year, min_age);
}

double normalized_citations(long long citations, int age, double alpha) {
  if (age < 1) {
    throw std::invalid_argument(fmt::format("age must be >= 1 (got {})", age));
  }
  if (!(alpha > 0.0)) {
    throw std::invalid_argument(fmt::format("alpha must be > 0 (got {})", alpha));
  }
  if (citations < 0) {
    throw std::invalid_argument("citations must be non-negative");
  }
  return static_cast<double>(citations) / std::pow(static_cast<double>(age), alpha);
}

std::vector<ScoredRecord> score_corpus(const Corpus &corpus,
                                       const NormalizationConfig &config) {
  config.validate();
  std::set<std::string> warned;
  WarningSink once = [&](std::string_view msg) {
    if (warned.emplace(msg).second) {
      warn(msg);
    }
  };
  std::vector<ScoredRecord> out;
  out.reserve(corpus.records.size());
  for (const auto &rec : corpus.records) {
    ScoredRecord s;
    s.base = rec;
    s.major_field = map_field(rec.raw_field, corpus.field_map, once);
    s.age = compute_age(rec.first_pub_year, rec.snapshot_year, config.min_age);
    s.norm_cit = normalized_citations(rec.citations, s.age, config.alpha);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<double> ExponentGrid::points() const {
  if (!(lo > 0.0) || !(hi > lo) || !(step > 0.0)) {
    throw std::invalid_argument(fmt::format(
        "invalid exponent grid [{}, {}] step {}; need 0 < lo < hi, step > 0",
        lo, hi, step));
  }
  const auto count =
      static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12;
  }
  return out;
}

CalibrationResult calibrate_exponent(const Corpus &corpus,
                                     const ExponentGrid &grid, int min_age) {
  if (corpus.records.empty()) {
    throw std::invalid_argument("calibration needs a non-empty corpus");
  }
  if (min_age < 1) {
    throw std::invalid_argument(
        fmt::format("min_age must be >= 1 (got {})", min_age));
  }
  const auto alphas = grid.points();

  std::vector<double> age;
  age.reserve(corpus.records.size());
  for (const auto &rec : corpus.records) {
    age.push_back(compute_age(rec.first_pub_year, rec.snapshot_year, min_age));
  }
  if (std::all_of(age.begin(), age.end(),
                  [&](double a) { return a == age.front(); })) {
    throw std::invalid_argument("age has zero variance");
  }

  CalibrationResult result;
  result.diagnostics.reserve(alphas.size());
  std::vector<double> norm(age.size());
  for (double alpha : alphas) {
    for (std::size_t i = 0; i < age.size(); ++i) {
      norm[i] = normalized_citations(corpus.records[i].citations,
                                     static_cast<int>(age[i]), alpha);
    }
    auto fit = simple_ols(age, norm, "age");
    result.diagnostics.push_back({alpha, fit.estimates[1],
                                  fit.standard_errors[1], fit.t_stats[1],
                                  fit.p_values[1]});
  }
  // grid is ascending, so strict < keeps the smaller alpha on ties
  const CalibrationRow *best = &result.diagnostics.front();
  for (const auto &row : result.diagnostics) {
    if (std::fabs(row.t) < std::fabs(best->t)) {
      best = &row;
    }
  }
  result.alpha_star = best->alpha;
  return result;
}

} // namespace biblio
