#include "prefsom/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "prefsom/error.hpp"
#include "prefsom/serialize.hpp"

namespace prefsom {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

double parse_number(const std::string& cell, std::size_t line_no) {
  double value = 0.0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (cell.empty() || ec != std::errc() || ptr != end) {
    throw InputError("row " + std::to_string(line_no) + ": '" + cell + "' is not a number");
  }
  if (!std::isfinite(value)) {
    throw InputError("row " + std::to_string(line_no) + ": non-finite value '" + cell + "'");
  }
  return value;
}

bool blank(const std::string& line) { return trim(line).empty(); }

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace

std::vector<std::string> Dataset::categories() const {
  std::set<std::string> labels;
  for (const Stimulus& s : rows) labels.insert(s.label);
  return {labels.begin(), labels.end()};
}

bool is_category_name(const std::string& s) {
  if (s.empty() || s == "Top" || s == "Bot") return false;
  auto ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  return ident_start(s.front()) && std::all_of(s.begin() + 1, s.end(), ident_char);
}

Dataset parse_dataset(std::istream& in) {
  Dataset data;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    auto cells = split_csv(line);
    if (!have_header) {
      if (cells.size() < 2) {
        throw InputError("row " + std::to_string(line_no) +
                         ": header needs at least one feature column and a label column");
      }
      data.feature_names.assign(cells.begin(), cells.end() - 1);
      have_header = true;
      continue;
    }
    if (cells.size() != data.feature_names.size() + 1) {
      throw InputError("row " + std::to_string(line_no) + ": expected " +
                       std::to_string(data.feature_names.size() + 1) + " columns, got " +
                       std::to_string(cells.size()));
    }
    Stimulus s;
    s.id = "x" + std::to_string(data.rows.size());
    s.label = cells.back();
    if (!is_category_name(s.label)) {
      throw InputError("row " + std::to_string(line_no) + ": label '" + s.label +
                       "' is not a valid category name");
    }
    s.features.reserve(cells.size() - 1);
    for (std::size_t c = 0; c + 1 < cells.size(); ++c) {
      s.features.push_back(parse_number(cells[c], line_no));
    }
    data.rows.push_back(std::move(s));
  }
  if (!have_header) throw InputError("dataset has no header row");
  if (data.rows.empty()) throw InputError("dataset has no data rows");
  return data;
}

Dataset read_dataset(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_dataset(in);
}

std::vector<FeatureVector> parse_probes(std::istream& in, std::size_t input_dim) {
  std::vector<FeatureVector> probes;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    if (!have_header) {
      have_header = true;
      continue;
    }
    auto cells = split_csv(line);
    if (cells.size() != input_dim) {
      throw InputError("probe row " + std::to_string(line_no) + ": expected " +
                       std::to_string(input_dim) + " columns, got " +
                       std::to_string(cells.size()));
    }
    FeatureVector v;
    for (const auto& cell : cells) v.push_back(parse_number(cell, line_no));
    probes.push_back(std::move(v));
  }
  return probes;
}

std::vector<FeatureVector> read_probes(const std::filesystem::path& path, std::size_t input_dim) {
  auto in = open_input(path);
  return parse_probes(in, input_dim);
}

void write_dataset(std::ostream& out, const Dataset& data) {
  for (const auto& name : data.feature_names) out << name << ',';
  out << "label\n";
  for (const Stimulus& s : data.rows) {
    for (double v : s.features) out << format_double(v) << ',';
    out << s.label << '\n';
  }
}

}  // namespace prefsom
