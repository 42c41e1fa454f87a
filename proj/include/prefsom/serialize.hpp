#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "prefsom/global_pref.hpp"
#include "prefsom/inclusion_checker.hpp"
#include "prefsom/revision.hpp"
#include "prefsom/semantic_model.hpp"
#include "prefsom/som.hpp"

namespace prefsom {

using Json = nlohmann::ordered_json;

/// Shortest text that parses back to the same double; "inf", "-inf", "nan" otherwise.
std::string format_double(double v);

/// Finite values as JSON numbers, the rest as the strings "inf", "-inf", "nan".
Json real_to_json(double v);
double real_from_json(const Json& j);

Json to_json(const SomMap& map);
SomMap map_from_json(const Json& j);

/// {input_dim, domain: [{id, origin, features}], categories: [{name, bmu_set, precision,
/// rd_max, members: [{stimulus, bmu}], rd: {id: value}}], extensions: {name: [ids]}}
Json to_json(const SemanticModel& model);
/// rd_max and extensions are taken as stored, so edited snapshots survive for diagnosis.
SemanticModel model_from_json(const Json& j);

/// {lhs, rhs, kind, holds, status, method, plausibility, exact_holds, witnesses}
Json to_json(const SemanticModel& model, const CheckReport& report);

Json to_json(const SemanticModel& model, const Specificity& specificity);

/// Array of {check, status, informational, instances, violation_count, violations}.
Json to_json(const PropertyReport& report);

/// One trace line; inclusions are written in concept syntax.
Json to_json(const RevisionStep& step);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Readers throw IoError for unreadable or malformed files.
Json read_json_file(const std::filesystem::path& path);
SomMap read_map_file(const std::filesystem::path& path);
SemanticModel read_model_file(const std::filesystem::path& path);

}  // namespace prefsom
