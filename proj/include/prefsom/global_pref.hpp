#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "prefsom/concept.hpp"
#include "prefsom/inclusion_checker.hpp"
#include "prefsom/semantic_model.hpp"

namespace prefsom {

/// Dense strict relation over domain positions, stored as bit rows.
class PreferenceRelation {
 public:
  PreferenceRelation() = default;
  explicit PreferenceRelation(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  bool operator()(std::size_t x, std::size_t y) const {
    return (bits_[x * words_ + y / 64] >> (y % 64)) & 1u;
  }
  void set(std::size_t x, std::size_t y) { bits_[x * words_ + y / 64] |= std::uint64_t{1} << (y % 64); }
  std::size_t pair_count() const;
  /// Positions y with x < y.
  std::span<const std::uint64_t> row(std::size_t x) const {
    return {bits_.data() + x * words_, words_};
  }

  friend bool operator==(const PreferenceRelation&, const PreferenceRelation&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// x < y: x is strictly preferred for some category, and for every category Cj either
/// rd(x, Cj) <= rd(y, Cj) or some Ch more specific than Cj strictly prefers x.
bool global_prefer(const SemanticModel& model, const Specificity& specificity, std::size_t x,
                   std::size_t y);

struct CwmModel {
  SemanticModel base;
  Specificity specificity;
  PreferenceRelation global;
};

/// Materializes the global relation and checks it is irreflexive and transitive;
/// a violation throws ConsistencyError listing the offending elements.
CwmModel build_cwm(SemanticModel base, Specificity specificity);

/// Materializes without checking (used to diagnose hand-edited models).
CwmModel assemble_cwm(SemanticModel base, Specificity specificity);

/// Elements of `s` with no strictly preferred element in `s`.
ElementSet minimal_elements(const PreferenceRelation& rel, const ElementSet& s);

/// min< of the concept's extension.
ElementSet typicality_extension(const CwmModel& cwm, const Concept& c);

/// Decides an arbitrary inclusion. Name-to-name inclusions use the distance conditions;
/// anything else is decided by set inclusion, with typicality through the global relation.
CheckReport check_query(const CwmModel& cwm, const Inclusion& query);

struct Violation {
  std::string instance;
  std::vector<std::string> witnesses;
};

struct PropertyCheck {
  PropertyCheck() = default;
  explicit PropertyCheck(std::string name) : check(std::move(name)) {}

  std::string check;
  bool passed = true;
  /// Informational checks never make a report fail.
  bool informational = false;
  std::size_t instances = 0;
  /// Instances skipped because the needed concept is not expressible (Or only).
  std::size_t not_expressible = 0;
  /// Total violations; `violations` keeps at most the first few.
  std::size_t violation_count = 0;
  std::vector<Violation> violations;

  void add_violation(Violation v);
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;

  /// True when every non-informational check passed.
  bool ok() const;
  const PropertyCheck* find(std::string_view name) const;
};

/// Order properties: per-category orders, irreflexivity, transitivity, well-foundedness,
/// the combined "preferential" verdict, and (informational) modularity of the global order.
PropertyReport verify_preferential(const CwmModel& cwm);

/// Top, Bot and every conjunction of 1..max_names distinct category names.
std::vector<Concept> concept_pool(const SemanticModel& model, std::size_t max_names = 3);

/// KLM postulates for C |~ D := typicality_extension(C) is a subset of extension(D), over `pool`.
PropertyReport verify_klm(const CwmModel& cwm, std::span<const Concept> pool);

}  // namespace prefsom
