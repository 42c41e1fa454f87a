#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prefsom/som.hpp"

namespace prefsom {

enum class Origin { input_stimulus, bmu, probe };

std::string_view to_string(Origin origin);
Origin parse_origin(std::string_view text);

struct DomainElement {
  std::string id;
  FeatureVector features;
  Origin origin = Origin::probe;
};

/// Sorted, duplicate-free positions into the model's domain.
using ElementSet = std::vector<std::size_t>;

/// An input stimulus of a category together with its best-matching unit, both as domain positions.
struct CategoryMember {
  std::size_t stimulus = 0;
  std::size_t bmu = 0;
};

struct CategoryTable {
  std::string name;
  /// Map units that are BMUs of the category's stimuli. Empty for hand-built tables.
  std::vector<std::size_t> bmu_units;
  std::vector<CategoryMember> members;
  /// Largest distance of a member from its BMU.
  double precision = 0.0;
  /// Relative distance of every domain element; +inf marks "unreachable".
  std::vector<double> rd;
  /// Largest relative distance of a member (0 for an empty category).
  double rd_max = 0.0;

  bool empty() const noexcept { return members.empty(); }
  /// Domain positions of the members' BMUs.
  ElementSet bmu_elements() const;
};

/// Finite domain with one relative-distance table per category. Immutable once built.
class SemanticModel {
 public:
  SemanticModel() = default;

  /// Computes rd_max and extensions from the tables. Categories end up sorted by name.
  static SemanticModel from_tables(std::size_t input_dim, std::vector<DomainElement> domain,
                                   std::vector<CategoryTable> categories);

  /// Takes rd_max and extensions as given (snapshot loading); only shapes are validated.
  static SemanticModel restore(std::size_t input_dim, std::vector<DomainElement> domain,
                               std::vector<CategoryTable> categories,
                               std::vector<ElementSet> extensions);

  std::size_t input_dim() const noexcept { return input_dim_; }
  const std::vector<DomainElement>& domain() const noexcept { return domain_; }
  std::size_t size() const noexcept { return domain_.size(); }
  const DomainElement& element(std::size_t i) const { return domain_.at(i); }
  std::optional<std::size_t> element_index(std::string_view id) const;
  /// Throws InputError for unknown ids.
  std::size_t require_element(std::string_view id) const;

  const std::vector<CategoryTable>& categories() const noexcept { return categories_; }
  std::size_t category_count() const noexcept { return categories_.size(); }
  const CategoryTable& category(std::size_t i) const { return categories_.at(i); }
  std::optional<std::size_t> category_index(std::string_view name) const;
  /// Throws ResolutionError for unknown names.
  std::size_t require_category(std::string_view name) const;
  std::vector<std::string> category_names() const;

  const ElementSet& extension(std::size_t category) const { return extensions_.at(category); }
  ElementSet all_elements() const;

 private:
  void validate_shapes() const;

  std::size_t input_dim_ = 0;
  std::vector<DomainElement> domain_;
  std::vector<CategoryTable> categories_;
  std::vector<ElementSet> extensions_;
};

/// The realized domain: stimuli, then the BMUs of the stimuli, then probes, with exact
/// duplicates (by feature values) collapsed onto their first occurrence.
struct DomainBuild {
  std::vector<DomainElement> elements;
  /// Per input stimulus: its domain position, its BMU's domain position, its BMU unit.
  std::vector<std::size_t> stimulus_element;
  std::vector<std::size_t> bmu_element;
  std::vector<std::size_t> bmu_unit;
};

DomainBuild build_domain(const SomMap& map, std::span<const Stimulus> data,
                         std::span<const FeatureVector> probes = {});

/// Relative distance of `y` from a category represented by `representatives` with the given
/// precision: min distance / precision, with 0/0 = 0 and x/0 = +inf.
double relative_distance(std::span<const double> y,
                         std::span<const std::span<const double>> representatives,
                         double precision);

/// Builds the multipreference model of `map`. Every label must be one of `categories`;
/// categories without stimuli are kept, empty.
SemanticModel build_semantic_model(const SomMap& map, std::span<const Stimulus> data,
                                   std::span<const std::string> categories,
                                   std::span<const FeatureVector> probes = {});

/// Categories taken from the labels in `data`.
SemanticModel build_semantic_model(const SomMap& map, std::span<const Stimulus> data,
                                   std::span<const FeatureVector> probes = {});

double relative_distance(const SemanticModel& model, std::size_t element, std::size_t category);

/// x <_C x' iff rd(x, C) < rd(x', C), compared exactly.
bool prefer(const SemanticModel& model, std::size_t category, std::size_t x, std::size_t x_prime);

/// Members of the category's extension with relative distance 0.
ElementSet typical_elements(const SemanticModel& model, std::size_t category);

/// Table-level consistency problems (negative or NaN rd, nonzero rd on a BMU, stale rd_max,
/// extensions that disagree with rd_max). Empty for any model built by this library.
std::vector<std::string> table_violations(const SemanticModel& model);

bool is_subset(const ElementSet& a, const ElementSet& b);
ElementSet intersect(const ElementSet& a, const ElementSet& b);
ElementSet difference(const ElementSet& a, const ElementSet& b);

}  // namespace prefsom
