#include "prefsom/semantic_model.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <map>
#include <set>

#include "prefsom/error.hpp"

namespace prefsom {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ElementSet sorted_unique(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

ElementSet extension_of(const CategoryTable& table) {
  ElementSet ext;
  if (table.empty()) return ext;
  for (std::size_t e = 0; e < table.rd.size(); ++e) {
    if (table.rd[e] <= table.rd_max) ext.push_back(e);
  }
  return ext;
}

}  // namespace

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::input_stimulus:
      return "input_stimulus";
    case Origin::bmu:
      return "bmu";
    case Origin::probe:
      return "probe";
  }
  return "probe";
}

Origin parse_origin(std::string_view text) {
  if (text == "input_stimulus") return Origin::input_stimulus;
  if (text == "bmu") return Origin::bmu;
  if (text == "probe") return Origin::probe;
  throw InputError("unknown element origin '" + std::string(text) + "'");
}

ElementSet CategoryTable::bmu_elements() const {
  std::vector<std::size_t> out;
  out.reserve(members.size());
  for (const CategoryMember& m : members) out.push_back(m.bmu);
  return sorted_unique(std::move(out));
}

SemanticModel SemanticModel::from_tables(std::size_t input_dim, std::vector<DomainElement> domain,
                                         std::vector<CategoryTable> categories) {
  SemanticModel model;
  model.input_dim_ = input_dim;
  model.domain_ = std::move(domain);
  model.categories_ = std::move(categories);
  std::sort(model.categories_.begin(), model.categories_.end(),
            [](const CategoryTable& a, const CategoryTable& b) { return a.name < b.name; });
  model.extensions_.resize(model.categories_.size());
  model.validate_shapes();
  for (std::size_t c = 0; c < model.categories_.size(); ++c) {
    CategoryTable& table = model.categories_[c];
    table.rd_max = 0.0;
    for (const CategoryMember& m : table.members) {
      table.rd_max = std::max(table.rd_max, table.rd[m.stimulus]);
    }
    model.extensions_[c] = extension_of(table);
  }
  return model;
}

SemanticModel SemanticModel::restore(std::size_t input_dim, std::vector<DomainElement> domain,
                                     std::vector<CategoryTable> categories,
                                     std::vector<ElementSet> extensions) {
  if (extensions.size() != categories.size()) {
    throw InputError("model has " + std::to_string(categories.size()) + " categories but " +
                     std::to_string(extensions.size()) + " extensions");
  }
  std::vector<std::size_t> order(categories.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return categories[a].name < categories[b].name;
  });
  SemanticModel model;
  model.input_dim_ = input_dim;
  model.domain_ = std::move(domain);
  for (std::size_t i : order) {
    model.categories_.push_back(std::move(categories[i]));
    model.extensions_.push_back(sorted_unique(std::move(extensions[i])));
  }
  model.validate_shapes();
  for (const ElementSet& ext : model.extensions_) {
    if (!ext.empty() && ext.back() >= model.domain_.size()) {
      throw InputError("extension refers to an element outside the domain");
    }
  }
  return model;
}

void SemanticModel::validate_shapes() const {
  std::set<std::string_view> ids;
  for (const DomainElement& e : domain_) {
    if (!ids.insert(e.id).second) throw InputError("duplicate domain element id '" + e.id + "'");
    if (e.features.size() != input_dim_ && !e.features.empty()) {
      throw InputError("element '" + e.id + "' has the wrong feature dimension");
    }
  }
  std::set<std::string_view> names;
  for (const CategoryTable& t : categories_) {
    if (!names.insert(t.name).second) throw InputError("duplicate category '" + t.name + "'");
    if (t.rd.size() != domain_.size()) {
      throw InputError("category '" + t.name + "' has " + std::to_string(t.rd.size()) +
                       " rd entries for a domain of " + std::to_string(domain_.size()));
    }
    for (const CategoryMember& m : t.members) {
      if (m.stimulus >= domain_.size() || m.bmu >= domain_.size()) {
        throw InputError("category '" + t.name + "' has a member outside the domain");
      }
    }
  }
}

std::optional<std::size_t> SemanticModel::element_index(std::string_view id) const {
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (domain_[i].id == id) return i;
  }
  return std::nullopt;
}

std::size_t SemanticModel::require_element(std::string_view id) const {
  if (auto i = element_index(id)) return *i;
  throw InputError("unknown domain element '" + std::string(id) + "'");
}

std::optional<std::size_t> SemanticModel::category_index(std::string_view name) const {
  auto it = std::lower_bound(categories_.begin(), categories_.end(), name,
                             [](const CategoryTable& t, std::string_view n) { return t.name < n; });
  if (it == categories_.end() || it->name != name) return std::nullopt;
  return static_cast<std::size_t>(it - categories_.begin());
}

std::size_t SemanticModel::require_category(std::string_view name) const {
  if (auto i = category_index(name)) return *i;
  throw ResolutionError("unknown category '" + std::string(name) + "'");
}

std::vector<std::string> SemanticModel::category_names() const {
  std::vector<std::string> names;
  for (const CategoryTable& t : categories_) names.push_back(t.name);
  return names;
}

ElementSet SemanticModel::all_elements() const {
  ElementSet all(domain_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

DomainBuild build_domain(const SomMap& map, std::span<const Stimulus> data,
                         std::span<const FeatureVector> probes) {
  DomainBuild out;
  std::map<FeatureVector, std::size_t> seen;
  auto add = [&](std::string id, const FeatureVector& features, Origin origin) {
    auto [it, inserted] = seen.try_emplace(features, out.elements.size());
    if (inserted) out.elements.push_back({std::move(id), features, origin});
    return it->second;
  };

  for (const Stimulus& s : data) {
    check_features(s.features, map.input_dim(), "stimulus " + s.id);
    out.stimulus_element.push_back(add(s.id, s.features, Origin::input_stimulus));
    out.bmu_unit.push_back(find_bmu(map, s.features));
  }
  for (std::size_t unit : out.bmu_unit) {
    const auto& w = map.unit(unit).weights;
    out.bmu_element.push_back(add("u" + std::to_string(unit), w, Origin::bmu));
  }
  for (std::size_t p = 0; p < probes.size(); ++p) {
    check_features(probes[p], map.input_dim(), "probe " + std::to_string(p));
    add("p" + std::to_string(p), probes[p], Origin::probe);
  }

  std::set<std::string_view> ids;
  for (const DomainElement& e : out.elements) {
    if (!ids.insert(e.id).second) throw InputError("domain element id '" + e.id + "' is not unique");
  }
  return out;
}

double relative_distance(std::span<const double> y,
                         std::span<const std::span<const double>> representatives,
                         double precision) {
  double nearest = kInf;
  for (auto w : representatives) nearest = std::min(nearest, distance(y, w));
  if (precision > 0.0) return nearest / precision;
  return nearest == 0.0 ? 0.0 : kInf;
}

SemanticModel build_semantic_model(const SomMap& map, std::span<const Stimulus> data,
                                   std::span<const std::string> categories,
                                   std::span<const FeatureVector> probes) {
  if (data.empty()) throw InputError("cannot build a model from empty data");
  const std::set<std::string> declared(categories.begin(), categories.end());
  for (const Stimulus& s : data) {
    if (!declared.contains(s.label)) {
      throw InputError("stimulus " + s.id + " has undeclared label '" + s.label + "'");
    }
  }

  DomainBuild dom = build_domain(map, data, probes);
  std::vector<CategoryTable> tables;
  for (const std::string& name : declared) {
    CategoryTable t;
    t.name = name;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (data[i].label != name) continue;
      t.members.push_back({dom.stimulus_element[i], dom.bmu_element[i]});
      t.bmu_units.push_back(dom.bmu_unit[i]);
      t.precision = std::max(t.precision,
                             distance(data[i].features, map.weights(dom.bmu_unit[i])));
    }
    t.bmu_units = sorted_unique(std::move(t.bmu_units));

    std::vector<std::span<const double>> reps;
    for (std::size_t u : t.bmu_units) reps.push_back(map.weights(u));
    t.rd.reserve(dom.elements.size());
    for (const DomainElement& e : dom.elements) {
      t.rd.push_back(relative_distance(e.features, reps, t.precision));
    }
    tables.push_back(std::move(t));
  }
  return SemanticModel::from_tables(map.input_dim(), std::move(dom.elements), std::move(tables));
}

SemanticModel build_semantic_model(const SomMap& map, std::span<const Stimulus> data,
                                   std::span<const FeatureVector> probes) {
  std::set<std::string> labels;
  for (const Stimulus& s : data) labels.insert(s.label);
  const std::vector<std::string> categories(labels.begin(), labels.end());
  return build_semantic_model(map, data, categories, probes);
}

double relative_distance(const SemanticModel& model, std::size_t element, std::size_t category) {
  return model.category(category).rd.at(element);
}

bool prefer(const SemanticModel& model, std::size_t category, std::size_t x, std::size_t x_prime) {
  const auto& rd = model.category(category).rd;
  return rd.at(x) < rd.at(x_prime);
}

ElementSet typical_elements(const SemanticModel& model, std::size_t category) {
  const CategoryTable& t = model.category(category);
  ElementSet out;
  for (std::size_t e : model.extension(category)) {
    if (t.rd[e] == 0.0) out.push_back(e);
  }
  return out;
}

std::vector<std::string> table_violations(const SemanticModel& model) {
  std::vector<std::string> out;
  for (std::size_t c = 0; c < model.category_count(); ++c) {
    const CategoryTable& t = model.category(c);
    for (std::size_t e = 0; e < t.rd.size(); ++e) {
      if (std::isnan(t.rd[e]) || t.rd[e] < 0.0) {
        out.push_back(t.name + ": rd of " + model.element(e).id + " is not a non-negative number");
      }
    }
    for (std::size_t b : t.bmu_elements()) {
      if (t.rd[b] != 0.0) out.push_back(t.name + ": BMU element " + model.element(b).id +
                                        " has nonzero rd");
    }
    double rd_max = 0.0;
    for (const CategoryMember& m : t.members) rd_max = std::max(rd_max, t.rd[m.stimulus]);
    if (!(rd_max == t.rd_max)) out.push_back(t.name + ": rd_max does not match its members");
    if (extension_of(t) != model.extension(c)) {
      out.push_back(t.name + ": extension differs from {y : rd(y) <= rd_max}");
    }
  }
  return out;
}

bool is_subset(const ElementSet& a, const ElementSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

ElementSet intersect(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet difference(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace prefsom
