#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace biblio {

/// Seeded generator with platform-independent variates. The engine is
/// std::mt19937_64, whose output sequence is fixed by the standard; the
/// standard distributions are not, so bounded integers, uniforms and
/// normals are derived here.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound), bound > 0. Lemire's nearly-divisionless
  /// rejection method.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal via the Marsaglia polar method.
  double normal();

private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Stable 64-bit seed derived from a master seed and a list of labels
/// (FNV-1a over the labels, then splitmix64 finalization).
std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::string_view> labels);

} // namespace biblio
