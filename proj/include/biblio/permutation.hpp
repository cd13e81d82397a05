#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "biblio/normalize.hpp"

namespace biblio {

inline constexpr std::size_t kDefaultPermutations = 100'000;
inline constexpr std::uint64_t kDefaultExactThreshold = 100'000;
inline constexpr std::uint64_t kDefaultSeed = 20200116;
inline constexpr double kSignificanceLevel = 0.05;

struct PermutationOptions {
  std::size_t n_perm = kDefaultPermutations;
  std::uint64_t seed = kDefaultSeed;
  /// Full enumeration is used when C(|a| + |b|, |a|) <= this value.
  std::uint64_t exact_threshold = kDefaultExactThreshold;
};

/// One-sided test of mean(a) > mean(b).
struct PermutationResult {
  std::string field_a;
  std::string field_b;
  /// mean(a) - mean(b)
  double t_obs = 0.0;
  /// (1 + #{T_perm >= T_obs}) / (n_perm + 1) for Monte Carlo; the exact
  /// fraction of label assignments with T >= T_obs when `exact`.
  double p_value = 1.0;
  /// Monte Carlo replications, or the number of enumerated splits.
  std::size_t n_perm = 0;
  std::uint64_t seed = 0;
  bool exact = false;

  bool inconclusive() const { return p_value > kSignificanceLevel; }
};

/// C(n, k), or `cap + 1` if the true value exceeds `cap`.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k,
                              std::uint64_t cap);

/// Two-sample permutation test on the difference of means. Comparisons of
/// permuted and observed statistics are made on group sums with a relative
/// tolerance of 1e-10, so reorderings of the same values count as ties.
PermutationResult permutation_test(std::span<const double> a,
                                   std::span<const double> b,
                                   const PermutationOptions &options = {});

/// Tests every field pair (A, B) with mean_norm(A) >= mean_norm(B) for
/// A > B on norm_cit. Fields are ordered as in field_summary; each pair's
/// seed is derive_seed(options.seed, {A, B}).
std::vector<PermutationResult>
all_pairwise_tests(const std::vector<ScoredRecord> &records,
                   const PermutationOptions &options = {});

} // namespace biblio
