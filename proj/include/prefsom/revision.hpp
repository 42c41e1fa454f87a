#pragma once

#include <span>
#include <string>
#include <vector>

#include "prefsom/inclusion_checker.hpp"
#include "prefsom/semantic_model.hpp"
#include "prefsom/som.hpp"

namespace prefsom {

/// Learning-rate and radius schedule for a revision stream, interpolated linearly over
/// the planned number of steps. A learning rate of 0 is allowed (no weight change).
struct RevisionConfig {
  double lr_start = 0.5;
  double lr_end = 0.01;
  double radius_start = 3.0;
  double radius_end = 0.5;

  void validate() const;
};

struct RevisionStep {
  std::size_t step_index = 0;
  Stimulus stimulus;
  KnowledgeBase kb_before;
  KnowledgeBase kb_after;
  KnowledgeBase added;
  KnowledgeBase removed;
  std::size_t domain_size = 0;
};

/// Empty domain, every category empty: the only inclusions holding are Ci <= Bot.
SemanticModel initial_model(std::span<const std::string> categories, std::size_t input_dim);

/// Incremental learning seen as iterated revision. Each step presents one stimulus to the map
/// and rebuilds the model over everything seen so far. Domain elements are never dropped:
/// BMU positions left behind by moving units stay in the domain as probes.
class RevisionState {
 public:
  RevisionState(SomMap map, std::vector<std::string> categories, RevisionConfig cfg,
                std::size_t planned_steps);

  const SomMap& map() const noexcept { return map_; }
  const SemanticModel& model() const noexcept { return model_; }
  const KnowledgeBase& kb() const noexcept { return kb_; }
  std::size_t steps_taken() const noexcept { return step_; }

  RevisionStep revise(const Stimulus& x);

 private:
  SomMap map_;
  std::vector<std::string> categories_;
  RevisionConfig cfg_;
  std::size_t planned_steps_;
  std::vector<Stimulus> seen_;
  std::vector<FeatureVector> retained_;
  SemanticModel model_;
  KnowledgeBase kb_;
  std::size_t step_ = 0;
};

/// One revision per stimulus, in order. Categories are the labels of `data`.
std::vector<RevisionStep> run_trace(SomMap initial, std::span<const Stimulus> data,
                                    const RevisionConfig& cfg);

}  // namespace prefsom
