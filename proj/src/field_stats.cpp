#include "biblio/field_stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace biblio {

double mean(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("mean of an empty sequence");
  }
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
  if (values.size() < 2) {
    return 0.0;
  }
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) {
    return 0.0;
  }
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) {
    ss += (v - m) * (v - m);
  }
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

std::vector<FieldStats> field_summary(const std::vector<ScoredRecord> &records) {
  if (records.empty()) {
    throw std::invalid_argument("field summary needs at least one record");
  }
  struct Values {
    std::vector<double> cit;
    std::vector<double> norm;
  };
  std::map<std::string, Values> by_field;
  for (const auto &r : records) {
    auto &v = by_field[r.major_field];
    v.cit.push_back(static_cast<double>(r.base.citations));
    v.norm.push_back(r.norm_cit);
  }
  std::vector<FieldStats> out;
  out.reserve(by_field.size());
  for (const auto &[field, v] : by_field) {
    out.push_back({field, v.cit.size(), mean(v.cit), sample_sd(v.cit),
                   mean(v.norm)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const FieldStats &a, const FieldStats &b) {
                     return a.mean_norm > b.mean_norm;
                   });
  return out;
}

std::vector<ScoredRecord> zscore_by_field(std::vector<ScoredRecord> records) {
  std::map<std::string, std::vector<double>> by_field;
  for (const auto &r : records) {
    by_field[r.major_field].push_back(r.norm_cit);
  }
  struct Moments {
    double mean;
    double sd;
  };
  std::map<std::string, Moments> moments;
  for (const auto &[field, values] : by_field) {
    moments[field] = {mean(values), sample_sd(values)};
  }
  for (auto &r : records) {
    const auto &m = moments.at(r.major_field);
    r.z = m.sd > 0.0 ? (r.norm_cit - m.mean) / m.sd : 0.0;
  }
  return records;
}

} // namespace biblio
