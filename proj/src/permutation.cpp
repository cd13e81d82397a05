#include "biblio/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "biblio/field_stats.hpp"
#include "biblio/random.hpp"

namespace biblio {

__extension__ typedef unsigned __int128 uint128;
namespace {

constexpr double kRelativeTieTolerance = 1e-10;

double sum_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

// Counts size-m subsets of `pooled` whose sum is >= threshold (or <= when
// `upper` is false).
std::uint64_t enumerate_subsets(std::span<const double> pooled, std::size_t m,
                                double threshold, bool upper) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::uint64_t hits = 0;
  while (true) {
    double s = 0.0;
    for (auto i : idx) {
      s += pooled[i];
    }
    hits += upper ? (s >= threshold) : (s <= threshold);
    // next combination in lexicographic order
    std::size_t pos = m;
    while (pos > 0 && idx[pos - 1] == n - m + pos - 1) {
      --pos;
    }
    if (pos == 0) {
      break;
    }
    ++idx[pos - 1];
    for (std::size_t j = pos; j < m; ++j) {
      idx[j] = idx[j - 1] + 1;
    }
  }
  return hits;
}

} // namespace

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k,
                              std::uint64_t cap) {
  if (k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  uint128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > cap) {
      return cap + 1;
    }
  }
  return static_cast<std::uint64_t>(c);
}

PermutationResult permutation_test(std::span<const double> a,
                                   std::span<const double> b,
                                   const PermutationOptions &options) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument(fmt::format(
        "permutation test needs non-empty groups (sizes {} and {})", a.size(),
        b.size()));
  }
  if (options.n_perm < 1) {
    throw std::invalid_argument("n_perm must be >= 1");
  }

  PermutationResult result;
  result.seed = options.seed;
  const double sum_a = sum_of(a);
  const double sum_b = sum_of(b);
  result.t_obs = sum_a / static_cast<double>(a.size()) -
                 sum_b / static_cast<double>(b.size());

  std::vector<double> pooled;
  pooled.reserve(a.size() + b.size());
  pooled.insert(pooled.end(), a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());

  double scale = 0.0;
  for (double v : pooled) {
    scale += std::fabs(v);
  }
  const double tol = kRelativeTieTolerance * scale;

  // Only the smaller group's sum needs tracking: with fixed group sizes,
  // T >= T_obs iff sum(A') >= sum(A), iff sum(B') <= sum(B).
  const bool sample_a = a.size() <= b.size();
  const std::size_t m = sample_a ? a.size() : b.size();
  const double threshold = sample_a ? sum_a - tol : sum_b + tol;
  auto hit = [&](double s) { return sample_a ? s >= threshold : s <= threshold; };

  const std::uint64_t splits =
      binomial_capped(pooled.size(), m, options.exact_threshold);
  if (splits <= options.exact_threshold) {
    const auto hits = enumerate_subsets(pooled, m, threshold, sample_a);
    result.exact = true;
    result.n_perm = static_cast<std::size_t>(splits);
    result.p_value = static_cast<double>(hits) / static_cast<double>(splits);
    return result;
  }

  Rng rng(options.seed);
  const std::size_t n = pooled.size();
  std::uint64_t hits = 0;
  for (std::size_t rep = 0; rep < options.n_perm; ++rep) {
    // partial Fisher-Yates: the first m slots become a uniform m-subset
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(n - i));
      std::swap(pooled[i], pooled[j]);
      s += pooled[i];
    }
    hits += hit(s);
  }
  result.n_perm = options.n_perm;
  result.p_value = static_cast<double>(hits + 1) /
                   static_cast<double>(options.n_perm + 1);
  return result;
}

std::vector<PermutationResult>
all_pairwise_tests(const std::vector<ScoredRecord> &records,
                   const PermutationOptions &options) {
  const auto summary = field_summary(records);
  if (summary.size() < 2) {
    throw std::invalid_argument(fmt::format(
        "pairwise tests need at least 2 fields (found {})", summary.size()));
  }
  std::map<std::string, std::vector<double>> values;
  for (const auto &r : records) {
    values[r.major_field].push_back(r.norm_cit);
  }
  std::vector<PermutationResult> out;
  out.reserve(summary.size() * (summary.size() - 1) / 2);
  for (std::size_t i = 0; i < summary.size(); ++i) {
    for (std::size_t j = i + 1; j < summary.size(); ++j) {
      const auto &fa = summary[i].field;
      const auto &fb = summary[j].field;
      auto opts = options;
      opts.seed = derive_seed(options.seed, {fa, fb});
      auto r = permutation_test(values.at(fa), values.at(fb), opts);
      r.field_a = fa;
      r.field_b = fb;
      out.push_back(std::move(r));
    }
  }
  return out;
}

} // namespace biblio
