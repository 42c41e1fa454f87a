#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "prefsom/error.hpp"
#include "prefsom/serialize.hpp"
#include "support/fixtures.hpp"

using namespace prefsom;

namespace {

void check_same_model(const SemanticModel& a, const SemanticModel& b) {
  REQUIRE(a.size() == b.size());
  REQUIRE(a.category_count() == b.category_count());
  CHECK(a.input_dim() == b.input_dim());
  for (std::size_t e = 0; e < a.size(); ++e) {
    CHECK(a.element(e).id == b.element(e).id);
    CHECK(a.element(e).features == b.element(e).features);
    CHECK(a.element(e).origin == b.element(e).origin);
  }
  for (std::size_t c = 0; c < a.category_count(); ++c) {
    const CategoryTable& x = a.category(c);
    const CategoryTable& y = b.category(c);
    CHECK(x.name == y.name);
    CHECK(x.bmu_units == y.bmu_units);
    CHECK(x.precision == y.precision);
    CHECK(x.rd_max == y.rd_max);
    CHECK(x.rd == y.rd);
    REQUIRE(x.members.size() == y.members.size());
    for (std::size_t m = 0; m < x.members.size(); ++m) {
      CHECK(x.members[m].stimulus == y.members[m].stimulus);
      CHECK(x.members[m].bmu == y.members[m].bmu);
    }
    CHECK(a.extension(c) == b.extension(c));
  }
}

}  // namespace

TEST_CASE("format_double is shortest round-trip text") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_double(std::nan("")) == "nan");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng);
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("non-finite reals travel as strings") {
  CHECK(real_to_json(1.5) == Json(1.5));
  CHECK(real_to_json(std::numeric_limits<double>::infinity()) == Json("inf"));
  CHECK(real_from_json(Json("inf")) == std::numeric_limits<double>::infinity());
  CHECK(real_from_json(Json("-inf")) == -std::numeric_limits<double>::infinity());
  CHECK(std::isnan(real_from_json(Json("nan"))));
  CHECK(real_from_json(Json(2)) == 2.0);
  CHECK_THROWS_AS(real_from_json(Json("big")), InputError);
  CHECK_THROWS_AS(real_from_json(Json::array()), InputError);
}

TEST_CASE("map snapshots round-trip exactly") {
  const auto data = testing::three_clusters();
  TrainConfig cfg;
  cfg.epochs = 3;
  const SomMap map = train(init_map(5, 4, 2, 99, feature_ranges(data)), data, cfg).map;
  const Json j = to_json(map);
  CHECK(j.at("rows") == 5);
  CHECK(j.at("cols") == 4);
  CHECK(j.at("units").size() == 20);
  CHECK(j.at("training_state").at("epoch") == 3);
  CHECK(map_from_json(j) == map);
  CHECK(map_from_json(Json::parse(j.dump(2))) == map);
}

TEST_CASE("model snapshots round-trip exactly") {
  const auto data = testing::three_clusters(6);
  const SomMap map = train(init_map(4, 4, 2, 6, feature_ranges(data)), data, TrainConfig{}).map;
  const std::vector<FeatureVector> probes{{100.0, 100.0}, {0.5, 0.5}};
  const std::vector<std::string> cats{"A", "B", "C", "Empty"};
  const SemanticModel m = build_semantic_model(map, data, cats, probes);
  const Json j = to_json(m);
  CHECK(j.at("categories").size() == 4);
  CHECK(j.at("categories")[3].at("rd").at("x0") == "inf");
  check_same_model(m, model_from_json(Json::parse(j.dump())));

  const auto bm = testing::bob_mary();
  check_same_model(bm.model, model_from_json(to_json(bm.model)));
}

TEST_CASE("malformed model snapshots") {
  const auto bm = testing::bob_mary();
  Json j = to_json(bm.model);
  SUBCASE("unknown element in a member") {
    j["categories"][0]["members"][0]["stimulus"] = "ghost";
    CHECK_THROWS_AS(model_from_json(j), InputError);
  }
  SUBCASE("rd table not covering the domain") {
    j["categories"][0]["rd"].erase("bob");
    CHECK_THROWS_AS(model_from_json(j), InputError);
  }
  SUBCASE("missing field") {
    j.erase("extensions");
    CHECK_THROWS_AS(model_from_json(j), Json::exception);
  }
}

TEST_CASE("report serialization") {
  const auto bm = testing::bob_mary();
  const CheckReport r = check_strict(bm.model, 0, 2);
  const Json j = to_json(bm.model, r);
  CHECK(j.at("lhs") == "Employee");
  CHECK(j.at("rhs") == "Student");
  CHECK(j.at("kind") == "strict");
  CHECK(j.at("method") == "condition4");
  CHECK(j.at("holds") == r.holds());
  CHECK(j.at("plausibility").is_null());
  CHECK(j.at("exact_holds").is_boolean());
  CHECK(j.at("witnesses").is_array());

  const Json spec = to_json(bm.model, bm.specificity);
  CHECK(spec.at("more_specific_than") == Json::parse(R"([["PhDStudent","Student"]])"));

  PropertyReport pr;
  PropertyCheck c("or");
  c.instances = 4;
  c.not_expressible = 2;
  c.add_violation({"C=A", {"x1"}});
  pr.checks.push_back(c);
  const Json pj = to_json(pr);
  CHECK(pj[0].at("status") == "fail");
  CHECK(pj[0].at("violation_count") == 1);
  CHECK(pj[0].at("not_expressible") == 2);
  CHECK(pj[0].at("violations")[0].at("witnesses")[0] == "x1");
}

TEST_CASE("revision steps serialize inclusions as text") {
  RevisionStep step;
  step.step_index = 3;
  step.stimulus = {"x3", {1.0, 2.0}, "A"};
  step.added = {parse_inclusion("T(A) <= A")};
  step.kb_after = step.added;
  step.domain_size = 2;
  const Json j = to_json(step);
  CHECK(j.at("step") == 3);
  CHECK(j.at("stimulus").at("label") == "A");
  CHECK(j.at("added") == Json::parse(R"(["T(A) <= A"])"));
  CHECK(j.at("removed").empty());
}

TEST_CASE("file readers") {
  const auto dir = testing::scratch_dir("serialize");
  CHECK_THROWS_AS(read_text_file(dir / "missing.json"), IoError);
  write_text_file(dir / "bad.json", "{not json");
  CHECK_THROWS_AS(read_json_file(dir / "bad.json"), IoError);
  write_text_file(dir / "wrong.json", R"({"rows": 1})");
  CHECK_THROWS_AS(read_map_file(dir / "wrong.json"), IoError);
  CHECK_THROWS_AS(read_model_file(dir / "wrong.json"), IoError);
  CHECK_THROWS_AS(write_text_file(dir / "no" / "such" / "dir.json", "x"), IoError);

  const auto bm = testing::bob_mary();
  write_text_file(dir / "model.json", to_json(bm.model).dump(2));
  check_same_model(bm.model, read_model_file(dir / "model.json"));
}
