#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace prefsom {

using FeatureVector = std::vector<double>;

/// A labeled input exemplar.
struct Stimulus {
  std::string id;
  FeatureVector features;
  std::string label;
};

struct Unit {
  std::size_t index = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  FeatureVector weights;

  friend bool operator==(const Unit&, const Unit&) = default;
};

/// Observed value range of one input feature.
struct FeatureRange {
  double min = 0.0;
  double max = 0.0;
};

struct TrainingState {
  std::size_t epoch = 0;
  double learning_rate = 0.0;
  double radius = 0.0;

  friend bool operator==(const TrainingState&, const TrainingState&) = default;
};

struct TrainConfig {
  std::size_t epochs = 50;
  double lr_start = 0.5;
  double lr_end = 0.01;
  double radius_start = 3.0;
  double radius_end = 0.5;
  std::uint64_t seed = 42;
  bool shuffle = true;

  /// Throws ConfigError unless 0 < lr_end <= lr_start <= 1 and 0 < radius_end <= radius_start.
  void validate() const;
};

/// Rectangular Kohonen map. Unit `i` sits at row i / cols, column i % cols.
class SomMap {
 public:
  SomMap(std::size_t rows, std::size_t cols, std::size_t input_dim, std::uint64_t seed,
         std::vector<Unit> units, TrainingState state = {});

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t input_dim() const noexcept { return input_dim_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t size() const noexcept { return units_.size(); }

  const std::vector<Unit>& units() const noexcept { return units_; }
  const Unit& unit(std::size_t index) const { return units_.at(index); }
  std::span<const double> weights(std::size_t index) const { return units_.at(index).weights; }

  const TrainingState& training_state() const noexcept { return state_; }
  void set_training_state(const TrainingState& state) { state_ = state; }

  /// One Kohonen update: every unit moves toward `x` by lr * exp(-d^2 / (2 radius^2)),
  /// d being its grid distance to the BMU. Returns the BMU index.
  std::size_t present(std::span<const double> x, double learning_rate, double radius);

  friend bool operator==(const SomMap&, const SomMap&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t input_dim_;
  std::uint64_t seed_;
  std::vector<Unit> units_;
  TrainingState state_;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);

/// Per-feature min/max over `data`. Throws InputError on empty data.
std::vector<FeatureRange> feature_ranges(std::span<const Stimulus> data);

/// Weights of feature f are drawn uniformly from [max + 0.1 span, max + 0.6 span],
/// span = max - min (a zero span is treated as 1), so every weight lies above the data.
SomMap init_map(std::size_t rows, std::size_t cols, std::size_t input_dim, std::uint64_t seed,
                std::span<const FeatureRange> ranges);

/// Same interval for every feature.
SomMap init_map(std::size_t rows, std::size_t cols, std::size_t input_dim, std::uint64_t seed,
                FeatureRange range);

/// Index of the unit closest to `x`; lowest index wins ties.
std::size_t find_bmu(const SomMap& map, std::span<const double> x);

/// Linear interpolation from `start` (step 0) to `end` (step total-1).
double linear_schedule(double start, double end, std::size_t step, std::size_t total);

struct TrainResult {
  SomMap map;
  /// Quantization error after each epoch.
  std::vector<double> qe_log;
};

TrainResult train(SomMap map, std::span<const Stimulus> data, const TrainConfig& cfg);

/// Mean distance of each stimulus to its BMU.
double quantization_error(const SomMap& map, std::span<const Stimulus> data);

/// Throws InputError if `x` has the wrong length or a non-finite value.
void check_features(std::span<const double> x, std::size_t input_dim, const std::string& what);

}  // namespace prefsom
