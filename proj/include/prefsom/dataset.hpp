#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "prefsom/som.hpp"

namespace prefsom {

/// Labeled CSV data: header row, feature columns, label in the last column.
struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<Stimulus> rows;

  std::size_t input_dim() const noexcept { return feature_names.size(); }
  /// Distinct labels, sorted.
  std::vector<std::string> categories() const;
};

/// Stimulus ids are "x0", "x1", ... in row order. Errors name the 1-based file line.
Dataset parse_dataset(std::istream& in);
Dataset read_dataset(const std::filesystem::path& path);

/// Unlabeled feature vectors (header row, `input_dim` columns). An empty file yields no probes.
std::vector<FeatureVector> parse_probes(std::istream& in, std::size_t input_dim);
std::vector<FeatureVector> read_probes(const std::filesystem::path& path, std::size_t input_dim);

void write_dataset(std::ostream& out, const Dataset& data);

/// True for identifiers usable as category names: [A-Za-z_][A-Za-z0-9_]*, not Top or Bot.
bool is_category_name(const std::string& s);

}  // namespace prefsom
