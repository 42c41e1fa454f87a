#include "prefsom/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "prefsom/error.hpp"

namespace prefsom {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

Json real_to_json(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw InputError("expected a number, \"inf\", \"-inf\" or \"nan\", got " + j.dump());
}

Json to_json(const SomMap& map) {
  Json units = Json::array();
  for (const Unit& u : map.units()) {
    units.push_back({{"index", u.index}, {"row", u.row}, {"col", u.col}, {"weights", u.weights}});
  }
  const TrainingState& st = map.training_state();
  return {{"rows", map.rows()},
          {"cols", map.cols()},
          {"input_dim", map.input_dim()},
          {"seed", map.seed()},
          {"training_state",
           {{"epoch", st.epoch}, {"learning_rate", st.learning_rate}, {"radius", st.radius}}},
          {"units", std::move(units)}};
}

SomMap map_from_json(const Json& j) {
  std::vector<Unit> units;
  for (const Json& u : j.at("units")) {
    units.push_back({u.at("index").get<std::size_t>(), u.at("row").get<std::size_t>(),
                     u.at("col").get<std::size_t>(), u.at("weights").get<FeatureVector>()});
  }
  TrainingState st;
  if (j.contains("training_state")) {
    const Json& s = j.at("training_state");
    st.epoch = s.at("epoch").get<std::size_t>();
    st.learning_rate = s.at("learning_rate").get<double>();
    st.radius = s.at("radius").get<double>();
  }
  return SomMap(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
                j.at("input_dim").get<std::size_t>(), j.at("seed").get<std::uint64_t>(),
                std::move(units), st);
}

Json to_json(const SemanticModel& model) {
  Json domain = Json::array();
  for (const DomainElement& e : model.domain()) {
    domain.push_back({{"id", e.id}, {"origin", to_string(e.origin)}, {"features", e.features}});
  }
  Json categories = Json::array();
  Json extensions = Json::object();
  for (std::size_t c = 0; c < model.category_count(); ++c) {
    const CategoryTable& t = model.category(c);
    Json members = Json::array();
    for (const CategoryMember& m : t.members) {
      members.push_back({{"stimulus", model.element(m.stimulus).id}, {"bmu", model.element(m.bmu).id}});
    }
    Json rd = Json::object();
    for (std::size_t e = 0; e < t.rd.size(); ++e) rd[model.element(e).id] = real_to_json(t.rd[e]);
    categories.push_back({{"name", t.name},
                          {"bmu_set", t.bmu_units},
                          {"precision", real_to_json(t.precision)},
                          {"rd_max", real_to_json(t.rd_max)},
                          {"members", std::move(members)},
                          {"rd", std::move(rd)}});
    Json ids = Json::array();
    for (std::size_t e : model.extension(c)) ids.push_back(model.element(e).id);
    extensions[t.name] = std::move(ids);
  }
  return {{"input_dim", model.input_dim()},
          {"domain", std::move(domain)},
          {"categories", std::move(categories)},
          {"extensions", std::move(extensions)}};
}

SemanticModel model_from_json(const Json& j) {
  std::vector<DomainElement> domain;
  std::map<std::string, std::size_t> index;
  for (const Json& e : j.at("domain")) {
    DomainElement el{e.at("id").get<std::string>(), e.at("features").get<FeatureVector>(),
                     parse_origin(e.at("origin").get<std::string>())};
    index.emplace(el.id, domain.size());
    domain.push_back(std::move(el));
  }
  auto lookup = [&](const Json& id) {
    auto it = index.find(id.get<std::string>());
    if (it == index.end()) throw InputError("unknown element id " + id.dump());
    return it->second;
  };

  std::vector<CategoryTable> tables;
  std::vector<ElementSet> extensions;
  for (const Json& c : j.at("categories")) {
    CategoryTable t;
    t.name = c.at("name").get<std::string>();
    t.bmu_units = c.at("bmu_set").get<std::vector<std::size_t>>();
    t.precision = real_from_json(c.at("precision"));
    t.rd_max = real_from_json(c.at("rd_max"));
    for (const Json& m : c.at("members")) t.members.push_back({lookup(m.at("stimulus")), lookup(m.at("bmu"))});
    const Json& rd = c.at("rd");
    if (rd.size() != domain.size()) {
      throw InputError("category '" + t.name + "' rd table does not cover the domain");
    }
    t.rd.assign(domain.size(), 0.0);
    for (auto it = rd.begin(); it != rd.end(); ++it) t.rd[lookup(Json(it.key()))] = real_from_json(it.value());
    ElementSet ext;
    for (const Json& id : j.at("extensions").at(t.name)) ext.push_back(lookup(id));
    tables.push_back(std::move(t));
    extensions.push_back(std::move(ext));
  }
  return SemanticModel::restore(j.at("input_dim").get<std::size_t>(), std::move(domain),
                                std::move(tables), std::move(extensions));
}

Json to_json(const SemanticModel& model, const CheckReport& r) {
  Json witnesses = Json::array();
  for (std::size_t e : r.witnesses) witnesses.push_back(model.element(e).id);
  return {{"lhs", to_string(r.inclusion.lhs)},
          {"rhs", to_string(r.inclusion.rhs)},
          {"kind", to_string(r.inclusion.kind)},
          {"holds", r.holds()},
          {"status", to_string(r.status)},
          {"method", to_string(r.method)},
          {"plausibility", r.plausibility ? real_to_json(*r.plausibility) : Json(nullptr)},
          {"exact_holds", r.exact_holds ? Json(*r.exact_holds) : Json(nullptr)},
          {"witnesses", std::move(witnesses)}};
}

Json to_json(const SemanticModel& model, const Specificity& specificity) {
  Json pairs = Json::array();
  for (auto [h, j] : specificity.pairs()) {
    pairs.push_back({model.category(h).name, model.category(j).name});
  }
  return {{"categories", model.category_names()}, {"more_specific_than", std::move(pairs)}};
}

Json to_json(const PropertyReport& report) {
  Json out = Json::array();
  for (const PropertyCheck& c : report.checks) {
    Json violations = Json::array();
    for (const Violation& v : c.violations) {
      violations.push_back({{"instance", v.instance}, {"witnesses", v.witnesses}});
    }
    Json entry = {{"check", c.check},
                  {"status", c.passed ? "pass" : "fail"},
                  {"informational", c.informational},
                  {"instances", c.instances},
                  {"violation_count", c.violation_count},
                  {"violations", std::move(violations)}};
    if (c.check == "or") entry["not_expressible"] = c.not_expressible;
    out.push_back(std::move(entry));
  }
  return out;
}

namespace {
Json inclusion_list(const KnowledgeBase& kb) {
  Json out = Json::array();
  for (const Inclusion& inc : kb) out.push_back(to_string(inc));
  return out;
}
}  // namespace

Json to_json(const RevisionStep& step) {
  return {{"step", step.step_index},
          {"stimulus",
           {{"id", step.stimulus.id}, {"features", step.stimulus.features}, {"label", step.stimulus.label}}},
          {"domain_size", step.domain_size},
          {"added", inclusion_list(step.added)},
          {"removed", inclusion_list(step.removed)},
          {"kb_before", inclusion_list(step.kb_before)},
          {"kb_after", inclusion_list(step.kb_after)}};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw IoError(path.string() + ": invalid JSON: " + e.what());
  }
}

SomMap read_map_file(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  try {
    return map_from_json(j);
  } catch (const Json::exception& e) {
    throw IoError(path.string() + ": malformed map snapshot: " + e.what());
  } catch (const Error& e) {
    throw IoError(path.string() + ": malformed map snapshot: " + e.what());
  }
}

SemanticModel read_model_file(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  try {
    return model_from_json(j);
  } catch (const Json::exception& e) {
    throw IoError(path.string() + ": malformed model snapshot: " + e.what());
  } catch (const Error& e) {
    throw IoError(path.string() + ": malformed model snapshot: " + e.what());
  }
}

}  // namespace prefsom
