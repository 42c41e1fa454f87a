#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "prefsom/concept.hpp"
#include "prefsom/semantic_model.hpp"

namespace prefsom {

/// How a report's verdict was reached.
/// condition3: every BMU of the lhs category lies within the rhs extension radius.
/// condition4: rd(BMU set of lhs, rhs) + rd_max(lhs) <= rd_max(rhs).
/// set_inclusion: direct comparison of extensions over the realized domain.
enum class CheckMethod { condition3, condition4, set_inclusion };
enum class CheckStatus { holds, fails, vacuous };

std::string_view to_string(CheckMethod method);
std::string_view to_string(CheckStatus status);

struct CheckReport {
  Inclusion inclusion;
  CheckStatus status = CheckStatus::fails;
  CheckMethod method = CheckMethod::set_inclusion;
  /// Defeasible condition3 checks only; lower is more plausible.
  std::optional<double> plausibility;
  /// Counterexample domain positions, when the inclusion fails.
  std::vector<std::size_t> witnesses;
  /// condition4 checks also record whether lhs^I is a subset of rhs^I.
  std::optional<bool> exact_holds;

  bool holds() const noexcept { return status == CheckStatus::holds; }
};

using KnowledgeBase = std::set<Inclusion>;

/// Irreflexive, transitive "more specific than" relation over category positions.
class Specificity {
 public:
  Specificity() = default;
  /// Throws SemanticError unless `pairs` is irreflexive and transitive over [0, category_count).
  Specificity(std::size_t category_count, std::set<std::pair<std::size_t, std::size_t>> pairs);

  std::size_t category_count() const noexcept { return category_count_; }
  const std::set<std::pair<std::size_t, std::size_t>>& pairs() const noexcept { return pairs_; }
  bool more_specific(std::size_t h, std::size_t j) const { return pairs_.contains({h, j}); }
  bool empty() const noexcept { return pairs_.empty(); }

 private:
  std::size_t category_count_ = 0;
  std::set<std::pair<std::size_t, std::size_t>> pairs_;
};

std::set<std::pair<std::size_t, std::size_t>> transitive_closure(
    std::size_t n, const std::set<std::pair<std::size_t, std::size_t>>& pairs);

/// Largest rd from category `j` of a BMU of a stimulus of category `i`.
/// Throws InputError if `i` has no stimuli; +inf if `j` has none.
double rd_bmu_set(const SemanticModel& model, std::size_t i, std::size_t j);

/// T(Ci) <= Cj by condition3. Vacuous when Ci has no stimuli.
CheckReport check_typicality(const SemanticModel& model, std::size_t i, std::size_t j);

/// Ci <= Cj by condition4, with the exact extension comparison alongside.
CheckReport check_strict(const SemanticModel& model, std::size_t i, std::size_t j);

/// Ci <= Bot, decided directly from the extension.
CheckReport check_empty(const SemanticModel& model, std::size_t i);

struct KbExtraction {
  /// Both kinds for every ordered category pair, by (lhs, rhs) name then strict before defeasible.
  std::vector<CheckReport> reports;
  /// Ci <= Bot for each category.
  std::vector<CheckReport> emptiness;
  /// Holding defeasible reports by ascending plausibility (ties by lhs, rhs).
  std::vector<CheckReport> ranked_defeasible;

  /// Every inclusion that holds.
  KnowledgeBase holding() const;
};

KbExtraction extract_kb(const SemanticModel& model);

/// Knowledge-base file text: strict inclusions, then ranked defeasible ones with
/// `# plausibility=...` comments, then emptiness axioms.
std::string format_knowledge_base(const SemanticModel& model, const KbExtraction& kb);

/// Ch > Cj when Ch <= Cj holds by condition4 and Cj <= Ch does not, closed transitively.
/// Throws SemanticError naming the cycle if the closure is not irreflexive.
Specificity derive_specificity(const SemanticModel& model);

}  // namespace prefsom
