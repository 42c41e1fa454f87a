#include "support/fixtures.hpp"

#include <algorithm>
#include <array>

namespace prefsom::testing {

std::vector<Stimulus> three_clusters(std::uint64_t seed, std::size_t per_cluster) {
  const std::array<std::array<double, 2>, 3> centers{{{0.0, 0.0}, {3.0, 0.0}, {1.5, 2.6}}};
  const std::array<const char*, 3> labels{"A", "B", "C"};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.35);
  std::vector<Stimulus> out;
  for (std::size_t c = 0; c < centers.size(); ++c) {
    for (std::size_t i = 0; i < per_cluster; ++i) {
      const double x = centers[c][0] + noise(rng);
      const double y = centers[c][1] + noise(rng);
      out.push_back({"x" + std::to_string(out.size()), {x, y}, labels[c]});
    }
  }
  return out;
}

SemanticModel hand_model(std::size_t n, const std::vector<TableSpec>& tables,
                         std::vector<std::string> ids) {
  std::vector<DomainElement> domain;
  for (std::size_t i = 0; i < n; ++i) {
    std::string id = ids.empty() ? "e" + std::to_string(i) : ids.at(i);
    domain.push_back({std::move(id), {static_cast<double>(i)}, Origin::probe});
  }
  std::vector<CategoryTable> cats;
  for (const TableSpec& spec : tables) {
    CategoryTable t;
    t.name = spec.name;
    t.rd = spec.rd;
    t.precision = 1.0;
    for (auto [s, b] : spec.members) t.members.push_back({s, b});
    cats.push_back(std::move(t));
  }
  return SemanticModel::from_tables(1, std::move(domain), std::move(cats));
}

SemanticModel random_model(std::mt19937_64& rng, RandomModelOptions opts) {
  constexpr std::array<double, 8> levels{0.0, 0.25, 0.5, 0.75, 1.0, 1.0, 1.5, 2.0};
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t n = pick(2, opts.max_elements);
  const std::size_t k = pick(1, opts.max_categories);

  std::vector<TableSpec> tables;
  for (std::size_t c = 0; c < k; ++c) {
    TableSpec t;
    t.name = std::string(1, static_cast<char>('A' + c));
    for (std::size_t e = 0; e < n; ++e) t.rd.push_back(levels[pick(0, levels.size() - 1)]);
    const std::size_t bmu = pick(0, n - 1);
    std::size_t far = pick(0, n - 1);
    if (far == bmu) far = (far + 1) % n;
    t.rd[bmu] = 0.0;
    t.rd[far] = 1.0;
    t.members.push_back({far, bmu});
    // A few more members with rd <= 1, each paired with the same BMU.
    for (std::size_t extra = pick(0, 3); extra > 0; --extra) {
      const std::size_t s = pick(0, n - 1);
      if (s != bmu && t.rd[s] <= 1.0) t.members.push_back({s, bmu});
    }
    tables.push_back(std::move(t));
  }
  return hand_model(n, tables);
}

Specificity random_specificity(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution edge(0.35);
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (edge(rng)) pairs.insert({order[a], order[b]});
    }
  }
  return Specificity(n, transitive_closure(n, pairs));
}

BobMary bob_mary() {
  // Elements: bob, mary, and one BMU element per category. Categories sort as
  // Employee, PhDStudent, Student.
  const std::vector<std::string> ids{"bob", "mary", "u_emp", "u_phd", "u_stu"};
  std::vector<TableSpec> tables{
      {"Employee", {0.5, 0.5, 0.0, 1.0, 1.0}, {{0, 2}}},
      {"PhDStudent", {0.2, 0.6, 1.0, 0.0, 1.0}, {{1, 3}}},
      {"Student", {0.7, 0.3, 1.0, 1.0, 0.0}, {{0, 4}}},
  };
  BobMary out;
  out.model = hand_model(ids.size(), tables, ids);
  const std::size_t phd = *out.model.category_index("PhDStudent");
  const std::size_t student = *out.model.category_index("Student");
  out.specificity = Specificity(out.model.category_count(), {{phd, student}});
  out.bob = out.model.require_element("bob");
  out.mary = out.model.require_element("mary");
  return out;
}

std::filesystem::path scratch_dir(const std::string& name) {
  const std::filesystem::path dir = std::filesystem::path(PREFSOM_TEST_TMP) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace prefsom::testing
