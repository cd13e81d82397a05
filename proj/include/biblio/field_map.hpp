#pragma once

#include <array>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "biblio/diagnostics.hpp"

namespace biblio {

/// The twenty aggregated research areas a raw subject tag can map to.
inline constexpr std::array<std::string_view, 20> kMajorFields = {
    "Algebra",          "Algebraic Geometry",
    "Analysis",         "Applied Mathematics",
    "Combinatorics",    "Complex Analysis",
    "Computer Science", "Dynamics",
    "Geometry",         "Group Theory",
    "Harmonic Analysis", "History",
    "Lie Groups",       "Logic",
    "Mathematical Physics", "Number Theory",
    "Other",            "PDE",
    "Probability",      "Statistics",
};

inline constexpr std::string_view kOtherField = "Other";

bool is_major_field(std::string_view name);

enum class UnknownTagPolicy { MapToOther, Reject };

class UnknownTagError : public std::runtime_error {
public:
  explicit UnknownTagError(std::string tag);
  const std::string &tag() const noexcept { return tag_; }

private:
  std::string tag_;
};

/// Lowercases ASCII, trims, and collapses internal whitespace runs.
std::string normalize_tag(std::string_view raw);

/// Association from raw MathSciNet subject tags to major fields.
class FieldMap {
public:
  /// The built-in mapping transcribed from the published classification
  /// tables. "Global analysis, analysis on manifolds" is listed under two
  /// major fields there; it resolves to Harmonic Analysis and is recorded
  /// in conflicts().
  static FieldMap default_map();

  /// Empty map; every lookup goes through the unknown-tag policy.
  FieldMap() = default;

  /// Adds or replaces an entry. Throws std::invalid_argument when
  /// `major_field` is not one of kMajorFields.
  void assign(std::string_view raw_tag, std::string_view major_field);

  /// Applies a `raw_tag,major_field` CSV on top of this map. Override rows
  /// replace existing entries and clear any recorded conflict for the tag.
  void apply_overrides(std::istream &csv);

  void set_unknown_policy(UnknownTagPolicy policy) { policy_ = policy; }
  UnknownTagPolicy unknown_policy() const { return policy_; }

  /// Returns the major field, or nullptr when the tag is unknown.
  const std::string *find(std::string_view raw_tag) const;

  /// Normalized tag -> every major field the source tables list it under.
  const std::map<std::string, std::vector<std::string>> &conflicts() const {
    return conflicts_;
  }

  /// Normalized tag -> major field.
  const std::map<std::string, std::string> &entries() const {
    return entries_;
  }

  bool operator==(const FieldMap &) const = default;

private:
  std::map<std::string, std::string> entries_;
  std::map<std::string, std::vector<std::string>> conflicts_;
  UnknownTagPolicy policy_ = UnknownTagPolicy::MapToOther;
};

/// Resolves `raw_field` to a major field name. Unknown tags become "Other"
/// with a warning under MapToOther, or raise UnknownTagError under Reject.
/// Tags listed under two fields resolve to the stored choice and warn.
std::string map_field(std::string_view raw_field, const FieldMap &field_map,
                      const WarningSink &sink = warn);

} // namespace biblio
