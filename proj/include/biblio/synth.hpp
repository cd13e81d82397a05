#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "biblio/corpus.hpp"

namespace biblio {

struct SynthField {
  /// Raw subject tag written to the corpus; it goes through the field map
  /// like any other tag.
  std::string name;
  std::size_t count = 1;
  /// Field effect on the log-citation scale.
  double mean_effect = 0.0;
};

struct SynthSpec {
  std::vector<SynthField> fields;
  /// First-publication years are drawn uniformly from [min_year, max_year].
  int min_year = 1960;
  int max_year = 2015;
  int snapshot_year = kDefaultSnapshotYear;
  /// Planted age exponent.
  double exponent = 1.3;
  /// Standard deviation of the Gaussian log-scale noise.
  double noise_sd = 0.5;
  std::size_t institutions = 20;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument on a spec that violates its invariants.
  void validate() const;
};

/// Generates records with
///   citations = round(exp(mean_effect + eps) * age^exponent),
///   eps ~ N(0, noise_sd^2).
/// Each record draws from its own stream seeded by (seed, field name,
/// index), so a record does not depend on the order fields are listed.
Corpus generate(const SynthSpec &spec);

/// Twenty fields sized like the published field table (2807 records over
/// 131 institutions), with effects set from the published per-field means.
SynthSpec faculty_shaped_spec(std::uint64_t seed = 1);

SynthSpec synth_spec_from_json(const nlohmann::json &j);
nlohmann::json synth_spec_to_json(const SynthSpec &spec);

} // namespace biblio
