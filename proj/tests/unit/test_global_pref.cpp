#include <doctest.h>

#include <limits>
#include <random>

#include "prefsom/error.hpp"
#include "prefsom/global_pref.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace prefsom;
using testing::TableSpec;

namespace {

CwmModel random_cwm(std::mt19937_64& rng, testing::RandomModelOptions opts = {}) {
  SemanticModel m = testing::random_model(rng, opts);
  Specificity s = testing::random_specificity(rng, m.category_count());
  return build_cwm(std::move(m), std::move(s));
}

// Brute-force modularity: x < y implies x < z or z < y, for every z.
bool modular(const PreferenceRelation& rel) {
  const std::size_t n = rel.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (rel(x, y) && !rel(x, z) && !rel(z, y)) return false;
  return true;
}

// e0 < e1, and e2 is incomparable with both.
SemanticModel incomparable_model() {
  return testing::hand_model(3, {
      TableSpec{"A", {0.0, 0.5, 1.0}, {{1, 0}}},
      TableSpec{"B", {0.5, 1.0, 0.0}, {{0, 2}}},
  });
}

}  // namespace

TEST_CASE("PreferenceRelation") {
  PreferenceRelation r(130);
  CHECK(r.pair_count() == 0);
  r.set(0, 129);
  r.set(129, 64);
  CHECK(r(0, 129));
  CHECK(r(129, 64));
  CHECK_FALSE(r(129, 0));
  CHECK(r.pair_count() == 2);
  CHECK(r.row(0).size() == 3);
}

TEST_CASE("bob is preferred to mary") {
  const auto bm = testing::bob_mary();
  const std::size_t phd = bm.model.require_category("PhDStudent");
  const std::size_t student = bm.model.require_category("Student");
  const std::size_t employee = bm.model.require_category("Employee");
  REQUIRE(prefer(bm.model, student, bm.mary, bm.bob));
  REQUIRE(prefer(bm.model, phd, bm.bob, bm.mary));
  REQUIRE(bm.model.category(employee).rd[bm.bob] == bm.model.category(employee).rd[bm.mary]);

  CHECK(global_prefer(bm.model, bm.specificity, bm.bob, bm.mary));
  CHECK_FALSE(global_prefer(bm.model, bm.specificity, bm.mary, bm.bob));
  // Without specificity the two are incomparable.
  const Specificity none(bm.model.category_count(), {});
  CHECK_FALSE(global_prefer(bm.model, none, bm.bob, bm.mary));
  CHECK_FALSE(global_prefer(bm.model, none, bm.mary, bm.bob));
}

TEST_CASE("global_prefer basics") {
  const SemanticModel m = incomparable_model();
  const Specificity none(2, {});
  CHECK_FALSE(global_prefer(m, none, 0, 0));
  CHECK(global_prefer(m, none, 0, 1));  // better in every category
  CHECK_FALSE(global_prefer(m, none, 2, 0));
  CHECK_FALSE(global_prefer(m, none, 0, 2));
  CHECK_THROWS_AS(global_prefer(m, none, 0, 7), InputError);
  CHECK_THROWS_AS(global_prefer(m, Specificity(3, {}), 0, 1), InputError);
}

TEST_CASE("with one category the global relation is the category order") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const CwmModel cwm = random_cwm(rng, {25, 1});
    for (std::size_t x = 0; x < cwm.base.size(); ++x) {
      for (std::size_t y = 0; y < cwm.base.size(); ++y) {
        CHECK(cwm.global(x, y) == prefer(cwm.base, 0, x, y));
      }
    }
    CHECK(typicality_extension(cwm, Concept::named("A")) == typical_elements(cwm.base, 0));
    CHECK(verify_preferential(cwm).find("modularity")->passed);
  }
}

TEST_CASE("a single element has an empty relation") {
  const SemanticModel m = testing::hand_model(1, {TableSpec{"A", {0.0}, {{0, 0}}}});
  const CwmModel cwm = build_cwm(m, Specificity(1, {}));
  CHECK(cwm.global.pair_count() == 0);
}

TEST_CASE("materialized relation matches the brute-force definition") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const CwmModel cwm = random_cwm(rng);
    const auto rd = oracle::rd_tables(cwm.base);
    for (std::size_t x = 0; x < cwm.base.size(); ++x) {
      for (std::size_t y = 0; y < cwm.base.size(); ++y) {
        const bool expected = oracle::global_prefer(rd, cwm.specificity.pairs(), x, y);
        CHECK(cwm.global(x, y) == expected);
        CHECK(global_prefer(cwm.base, cwm.specificity, x, y) == expected);
        if (cwm.global(x, y)) CHECK_FALSE(cwm.global(y, x));
      }
    }
  }
}

TEST_CASE("typicality extensions match brute-force minima") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const CwmModel cwm = random_cwm(rng);
    const auto rd = oracle::rd_tables(cwm.base);
    auto less = [&](std::size_t a, std::size_t b) {
      return oracle::global_prefer(rd, cwm.specificity.pairs(), a, b);
    };
    CHECK(typicality_extension(cwm, Concept::bottom()).empty());
    for (const Concept& c : concept_pool(cwm.base, 2)) {
      CHECK(typicality_extension(cwm, c) == oracle::minima(extension(cwm.base, c), less));
    }
  }
}

TEST_CASE("check_query") {
  const auto bm = testing::bob_mary();
  const CwmModel cwm = build_cwm(bm.model, bm.specificity);
  SUBCASE("name to name uses the distance conditions") {
    const CheckReport r = check_query(cwm, parse_inclusion("T(Student) <= Student"));
    CHECK(r.holds());
    CHECK(r.method == CheckMethod::condition3);
    CHECK(check_query(cwm, parse_inclusion("Student <= Student")).method == CheckMethod::condition4);
  }
  SUBCASE("anything else is set inclusion") {
    const CheckReport empty = check_query(cwm, parse_inclusion("Student <= Bot"));
    CHECK(empty.status == CheckStatus::fails);
    CHECK(empty.method == CheckMethod::set_inclusion);
    const CheckReport conj = check_query(cwm, parse_inclusion("T(Student & Employee) <= PhDStudent"));
    const ElementSet lhs = typicality_extension(cwm, parse_concept("Student & Employee"));
    const ElementSet rhs = extension(cwm.base, Concept::named("PhDStudent"));
    CHECK(conj.holds() == is_subset(lhs, rhs));
    CHECK(conj.witnesses == difference(lhs, rhs));
    CHECK(check_query(cwm, parse_inclusion("Bot <= Student")).holds());
  }
  SUBCASE("unknown names") {
    CHECK_THROWS_AS(check_query(cwm, parse_inclusion("T(Alien) <= Student")), ResolutionError);
  }
}

TEST_CASE("order properties of built models") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const CwmModel cwm = random_cwm(rng);
    const PropertyReport r = verify_preferential(cwm);
    CHECK(r.ok());
    for (const char* name : {"category_orders", "irreflexivity", "transitivity", "well_foundedness",
                             "preferential"}) {
      REQUIRE(r.find(name) != nullptr);
      CHECK(r.find(name)->passed);
    }
    CHECK(r.find("modularity")->informational);
    CHECK(r.find("modularity")->passed == modular(cwm.global));
  }
}

TEST_CASE("incomparable elements break modularity but not preferentiality") {
  const CwmModel cwm = build_cwm(incomparable_model(), Specificity(2, {}));
  const PropertyReport r = verify_preferential(cwm);
  CHECK(r.find("preferential")->passed);
  const PropertyCheck* mod = r.find("modularity");
  CHECK_FALSE(mod->passed);
  REQUIRE(mod->violations.size() == 1);
  CHECK(mod->violations[0].witnesses == std::vector<std::string>{"e0", "e1", "e2"});
  CHECK(r.ok());
}

TEST_CASE("order checks catch a broken relation") {
  CwmModel cwm = build_cwm(incomparable_model(), Specificity(2, {}));
  cwm.global.set(1, 2);
  cwm.global.set(2, 0);
  const PropertyReport r = verify_preferential(cwm);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.find("transitivity")->passed);
  CHECK_FALSE(r.find("well_foundedness")->passed);
  CHECK_FALSE(r.find("preferential")->passed);
  CHECK(r.find("irreflexivity")->passed);
  cwm.global.set(1, 1);
  CHECK_FALSE(verify_preferential(cwm).find("irreflexivity")->passed);
}

TEST_CASE("NaN in a table is reported against the category orders") {
  const SemanticModel m = incomparable_model();
  auto tables = m.categories();
  tables[0].rd[2] = std::numeric_limits<double>::quiet_NaN();
  const SemanticModel broken =
      SemanticModel::restore(1, m.domain(), tables, {m.extension(0), m.extension(1)});
  const CwmModel cwm = assemble_cwm(broken, Specificity(2, {}));
  CHECK_FALSE(verify_preferential(cwm).find("category_orders")->passed);
}

TEST_CASE("concept pool") {
  const auto bm = testing::bob_mary();
  const auto pool = concept_pool(bm.model, 3);
  CHECK(pool.size() == 2 + 3 + 3 + 1);
  CHECK(pool[0] == Concept::top());
  CHECK(pool[1] == Concept::bottom());
  CHECK(concept_pool(bm.model, 1).size() == 5);
}

TEST_CASE("KLM postulates hold on random models") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const CwmModel cwm = random_cwm(rng, {25, 4});
    const auto pool = concept_pool(cwm.base, 3);
    const PropertyReport r = verify_klm(cwm, pool);
    CHECK(r.ok());
    for (const char* name : {"reflexivity", "left_logical_equivalence", "right_weakening", "and",
                             "or", "cautious_monotonicity"}) {
      REQUIRE(r.find(name) != nullptr);
      CHECK(r.find(name)->violation_count == 0);
    }
    CHECK(r.find("reflexivity")->instances == pool.size());
  }
}

TEST_CASE("cautious monotonicity fails for a non-transitive relation") {
  // A = {e0, e1}, B = {e0, e2}. With e0 < e1 < e2 but not e0 < e2, the minimum of Top is e0,
  // so Top |~ A and Top |~ B, yet both e0 and e2 are minimal in B and e2 is not in A.
  CwmModel cwm = build_cwm(incomparable_model(), Specificity(2, {}));
  cwm.global = PreferenceRelation(3);
  cwm.global.set(0, 1);
  cwm.global.set(1, 2);
  const auto pool = concept_pool(cwm.base, 2);
  const PropertyReport r = verify_klm(cwm, pool);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.find("cautious_monotonicity")->passed);
  CHECK(r.find("reflexivity")->passed);
  CHECK(r.find("and")->passed);
}
