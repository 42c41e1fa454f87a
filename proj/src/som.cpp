#include "prefsom/som.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "prefsom/error.hpp"

namespace prefsom {

void TrainConfig::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(lr_start) || !finite(lr_end) || !(lr_end > 0.0) || lr_start < lr_end ||
      lr_start > 1.0) {
    throw ConfigError("learning rates must satisfy 0 < lr_end <= lr_start <= 1");
  }
  if (!finite(radius_start) || !finite(radius_end) || !(radius_end > 0.0) ||
      radius_start < radius_end) {
    throw ConfigError("radii must satisfy 0 < radius_end <= radius_start");
  }
}

SomMap::SomMap(std::size_t rows, std::size_t cols, std::size_t input_dim, std::uint64_t seed,
               std::vector<Unit> units, TrainingState state)
    : rows_(rows), cols_(cols), input_dim_(input_dim), seed_(seed), units_(std::move(units)),
      state_(state) {
  if (rows_ == 0 || cols_ == 0 || input_dim_ == 0) {
    throw ConfigError("map rows, cols and input_dim must all be >= 1");
  }
  if (units_.size() != rows_ * cols_) {
    throw ConfigError("map has " + std::to_string(units_.size()) + " units, expected " +
                      std::to_string(rows_ * cols_));
  }
  for (std::size_t i = 0; i < units_.size(); ++i) {
    const Unit& u = units_[i];
    if (u.index != i || u.row != i / cols_ || u.col != i % cols_) {
      throw ConfigError("unit " + std::to_string(i) + " has inconsistent index/grid coordinates");
    }
    check_features(u.weights, input_dim_, "weights of unit " + std::to_string(i));
  }
}

std::size_t SomMap::present(std::span<const double> x, double learning_rate, double radius) {
  const std::size_t bmu = find_bmu(*this, x);
  const double bmu_row = static_cast<double>(units_[bmu].row);
  const double bmu_col = static_cast<double>(units_[bmu].col);
  const double two_r2 = 2.0 * radius * radius;
  for (Unit& u : units_) {
    const double dr = static_cast<double>(u.row) - bmu_row;
    const double dc = static_cast<double>(u.col) - bmu_col;
    const double a = learning_rate * std::exp(-(dr * dr + dc * dc) / two_r2);
    // Convex form: a == 1 lands exactly on x, a == 0 leaves w untouched.
    for (std::size_t f = 0; f < u.weights.size(); ++f) {
      u.weights[f] = (1.0 - a) * u.weights[f] + a * x[f];
    }
  }
  return bmu;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

void check_features(std::span<const double> x, std::size_t input_dim, const std::string& what) {
  if (x.size() != input_dim) {
    throw InputError(what + ": expected " + std::to_string(input_dim) + " features, got " +
                     std::to_string(x.size()));
  }
  if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); })) {
    throw InputError(what + ": non-finite feature value");
  }
}

std::vector<FeatureRange> feature_ranges(std::span<const Stimulus> data) {
  if (data.empty()) throw InputError("cannot compute feature ranges of empty data");
  const std::size_t d = data.front().features.size();
  std::vector<FeatureRange> ranges(d);
  for (std::size_t f = 0; f < d; ++f) {
    ranges[f] = {data.front().features[f], data.front().features[f]};
  }
  for (const Stimulus& s : data) {
    check_features(s.features, d, "stimulus " + s.id);
    for (std::size_t f = 0; f < d; ++f) {
      ranges[f].min = std::min(ranges[f].min, s.features[f]);
      ranges[f].max = std::max(ranges[f].max, s.features[f]);
    }
  }
  return ranges;
}

SomMap init_map(std::size_t rows, std::size_t cols, std::size_t input_dim, std::uint64_t seed,
                std::span<const FeatureRange> ranges) {
  if (rows == 0 || cols == 0 || input_dim == 0) {
    throw ConfigError("map rows, cols and input_dim must all be >= 1");
  }
  if (ranges.size() != input_dim) {
    throw ConfigError("expected one value range per input feature");
  }
  for (const FeatureRange& r : ranges) {
    if (!std::isfinite(r.min) || !std::isfinite(r.max) || r.min > r.max) {
      throw ConfigError("value range must be finite with min <= max");
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<Unit> units(rows * cols);
  for (std::size_t i = 0; i < units.size(); ++i) {
    Unit& u = units[i];
    u.index = i;
    u.row = i / cols;
    u.col = i % cols;
    u.weights.resize(input_dim);
    for (std::size_t f = 0; f < input_dim; ++f) {
      const double span = ranges[f].max > ranges[f].min ? ranges[f].max - ranges[f].min : 1.0;
      std::uniform_real_distribution<double> draw(ranges[f].max + 0.1 * span,
                                                  ranges[f].max + 0.6 * span);
      u.weights[f] = draw(rng);
    }
  }
  return SomMap(rows, cols, input_dim, seed, std::move(units));
}

SomMap init_map(std::size_t rows, std::size_t cols, std::size_t input_dim, std::uint64_t seed,
                FeatureRange range) {
  const std::vector<FeatureRange> ranges(input_dim, range);
  return init_map(rows, cols, input_dim, seed, ranges);
}

std::size_t find_bmu(const SomMap& map, std::span<const double> x) {
  check_features(x, map.input_dim(), "query vector");
  std::size_t best = 0;
  double best_d2 = squared_distance(x, map.weights(0));
  for (std::size_t i = 1; i < map.size(); ++i) {
    const double d2 = squared_distance(x, map.weights(i));
    if (d2 < best_d2) {
      best = i;
      best_d2 = d2;
    }
  }
  return best;
}

double linear_schedule(double start, double end, std::size_t step, std::size_t total) {
  if (total <= 1) return start;
  const double t = static_cast<double>(step) / static_cast<double>(total - 1);
  return start + (end - start) * t;
}

TrainResult train(SomMap map, std::span<const Stimulus> data, const TrainConfig& cfg) {
  if (data.empty()) throw InputError("training data is empty");
  cfg.validate();
  for (const Stimulus& s : data) check_features(s.features, map.input_dim(), "stimulus " + s.id);

  TrainResult result{std::move(map), {}};
  SomMap& som = result.map;
  const std::size_t total = cfg.epochs * data.size();
  std::vector<std::size_t> order(data.size());
  std::mt19937_64 rng(cfg.seed);

  TrainingState state = som.training_state();
  std::size_t step = 0;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (cfg.shuffle) std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
      state.learning_rate = linear_schedule(cfg.lr_start, cfg.lr_end, step, total);
      state.radius = linear_schedule(cfg.radius_start, cfg.radius_end, step, total);
      som.present(data[i].features, state.learning_rate, state.radius);
      ++step;
    }
    ++state.epoch;
    som.set_training_state(state);
    result.qe_log.push_back(quantization_error(som, data));
  }
  return result;
}

double quantization_error(const SomMap& map, std::span<const Stimulus> data) {
  if (data.empty()) throw InputError("quantization error of empty data");
  double sum = 0.0;
  for (const Stimulus& s : data) {
    sum += distance(s.features, map.weights(find_bmu(map, s.features)));
  }
  return sum / static_cast<double>(data.size());
}

}  // namespace prefsom
