#include "prefsom/revision.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "prefsom/error.hpp"

namespace prefsom {

void RevisionConfig::validate() const {
  auto in_unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
  if (!in_unit(lr_start) || !in_unit(lr_end)) {
    throw ConfigError("revision learning rates must lie in [0, 1]");
  }
  if (!std::isfinite(radius_start) || !std::isfinite(radius_end) || !(radius_start > 0.0) ||
      !(radius_end > 0.0)) {
    throw ConfigError("revision radii must be positive");
  }
}

SemanticModel initial_model(std::span<const std::string> categories, std::size_t input_dim) {
  if (categories.empty()) throw InputError("initial model needs at least one category");
  std::vector<CategoryTable> tables;
  for (const std::string& name : categories) {
    CategoryTable t;
    t.name = name;
    tables.push_back(std::move(t));
  }
  return SemanticModel::from_tables(input_dim, {}, std::move(tables));
}

RevisionState::RevisionState(SomMap map, std::vector<std::string> categories, RevisionConfig cfg,
                             std::size_t planned_steps)
    : map_(std::move(map)),
      categories_(std::move(categories)),
      cfg_(cfg),
      planned_steps_(planned_steps),
      model_(initial_model(categories_, map_.input_dim())),
      kb_(extract_kb(model_).holding()) {
  cfg_.validate();
}

RevisionStep RevisionState::revise(const Stimulus& x) {
  check_features(x.features, map_.input_dim(), "stimulus " + x.id);
  if (std::find(categories_.begin(), categories_.end(), x.label) == categories_.end()) {
    throw InputError("stimulus " + x.id + " has undeclared label '" + x.label + "'");
  }

  const std::size_t total = std::max(planned_steps_, step_ + 1);
  TrainingState state = map_.training_state();
  state.learning_rate = linear_schedule(cfg_.lr_start, cfg_.lr_end, step_, total);
  state.radius = linear_schedule(cfg_.radius_start, cfg_.radius_end, step_, total);
  map_.present(x.features, state.learning_rate, state.radius);
  map_.set_training_state(state);
  seen_.push_back(x);

  model_ = build_semantic_model(map_, seen_, categories_, retained_);
  retained_.clear();
  for (const DomainElement& e : model_.domain()) {
    if (e.origin != Origin::input_stimulus) retained_.push_back(e.features);
  }

  RevisionStep out;
  out.step_index = step_++;
  out.stimulus = x;
  out.kb_before = std::move(kb_);
  out.kb_after = extract_kb(model_).holding();
  std::set_difference(out.kb_after.begin(), out.kb_after.end(), out.kb_before.begin(),
                      out.kb_before.end(), std::inserter(out.added, out.added.end()));
  std::set_difference(out.kb_before.begin(), out.kb_before.end(), out.kb_after.begin(),
                      out.kb_after.end(), std::inserter(out.removed, out.removed.end()));
  out.domain_size = model_.size();
  kb_ = out.kb_after;
  return out;
}

std::vector<RevisionStep> run_trace(SomMap initial, std::span<const Stimulus> data,
                                    const RevisionConfig& cfg) {
  if (data.empty()) throw InputError("revision trace needs at least one stimulus");
  std::set<std::string> labels;
  for (const Stimulus& s : data) labels.insert(s.label);
  RevisionState state(std::move(initial), {labels.begin(), labels.end()}, cfg, data.size());
  std::vector<RevisionStep> trace;
  trace.reserve(data.size());
  for (const Stimulus& s : data) trace.push_back(state.revise(s));
  return trace;
}

}  // namespace prefsom
