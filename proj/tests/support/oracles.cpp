#include "support/oracles.hpp"

#include <cmath>
#include <limits>

namespace prefsom::oracle {

std::vector<std::vector<double>> rd_tables(const SemanticModel& model) {
  std::vector<std::vector<double>> out;
  for (const CategoryTable& t : model.categories()) out.push_back(t.rd);
  return out;
}

bool global_prefer(const std::vector<std::vector<double>>& rd, const Pairs& more_specific,
                   std::size_t x, std::size_t y) {
  bool some_strict = false;
  for (const auto& table : rd) {
    if (table[x] < table[y]) some_strict = true;
  }
  if (!some_strict) return false;
  for (std::size_t j = 0; j < rd.size(); ++j) {
    if (rd[j][x] <= rd[j][y]) continue;
    bool overridden = false;
    for (const auto& [h, jj] : more_specific) {
      if (jj == j && rd[h][x] < rd[h][y]) overridden = true;
    }
    if (!overridden) return false;
  }
  return true;
}

std::size_t bmu(const SomMap& map, const std::vector<double>& x) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t u = 0; u < map.size(); ++u) {
    double d = 0.0;
    for (std::size_t f = 0; f < x.size(); ++f) {
      const double diff = map.units()[u].weights[f] - x[f];
      d += diff * diff;
    }
    if (d < best_d) {
      best_d = d;
      best = u;
    }
  }
  return best;
}

double quantization_error(const SomMap& map, const std::vector<Stimulus>& data) {
  double total = 0.0;
  for (const Stimulus& s : data) {
    const auto& w = map.units()[bmu(map, s.features)].weights;
    double d = 0.0;
    for (std::size_t f = 0; f < w.size(); ++f) d += (w[f] - s.features[f]) * (w[f] - s.features[f]);
    total += std::sqrt(d);
  }
  return total / static_cast<double>(data.size());
}

double rd_bmu_set(const SemanticModel& model, std::size_t i, std::size_t j) {
  double worst = 0.0;
  for (const CategoryMember& m : model.category(i).members) {
    worst = std::max(worst, model.category(j).rd[m.bmu]);
  }
  return worst;
}

double relative_distance(const std::vector<double>& y, const std::vector<std::vector<double>>& reps,
                         double precision) {
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& w : reps) {
    double d = 0.0;
    for (std::size_t f = 0; f < y.size(); ++f) d += (y[f] - w[f]) * (y[f] - w[f]);
    nearest = std::min(nearest, std::sqrt(d));
  }
  if (precision == 0.0) return nearest == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return nearest / precision;
}

}  // namespace prefsom::oracle
