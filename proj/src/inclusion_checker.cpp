#include "prefsom/inclusion_checker.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>

#include "prefsom/error.hpp"
#include "prefsom/serialize.hpp"

namespace prefsom {
namespace {

using PairSet = std::set<std::pair<std::size_t, std::size_t>>;

Inclusion named_inclusion(const SemanticModel& model, InclusionKind kind, std::size_t i,
                          std::size_t j) {
  return {kind, Concept::named(model.category(i).name), Concept::named(model.category(j).name)};
}

// A cycle through the raw relation, as category positions with the start repeated at the end.
std::vector<std::size_t> find_cycle(std::size_t n, const PairSet& pairs) {
  std::vector<std::vector<std::size_t>> succ(n);
  for (auto [a, b] : pairs) succ[a].push_back(b);
  std::vector<int> color(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::size_t> cycle;
  std::function<bool(std::size_t)> dfs = [&](std::size_t v) {
    color[v] = 1;
    stack.push_back(v);
    for (std::size_t w : succ[v]) {
      if (color[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        cycle.assign(it, stack.end());
        cycle.push_back(w);
        return true;
      }
      if (color[w] == 0 && dfs(w)) return true;
    }
    color[v] = 2;
    stack.pop_back();
    return false;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (color[v] == 0 && dfs(v)) break;
  }
  return cycle;
}

}  // namespace

std::string_view to_string(CheckMethod method) {
  switch (method) {
    case CheckMethod::condition3:
      return "condition3";
    case CheckMethod::condition4:
      return "condition4";
    case CheckMethod::set_inclusion:
      return "set_inclusion";
  }
  return "set_inclusion";
}

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::holds:
      return "holds";
    case CheckStatus::fails:
      return "fails";
    case CheckStatus::vacuous:
      return "vacuous";
  }
  return "fails";
}

PairSet transitive_closure(std::size_t n, const PairSet& pairs) {
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (auto [a, b] : pairs) reach.at(a).at(b) = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t a = 0; a < n; ++a) {
      if (!reach[a][k]) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (reach[k][b]) reach[a][b] = 1;
      }
    }
  }
  PairSet out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (reach[a][b]) out.emplace(a, b);
    }
  }
  return out;
}

Specificity::Specificity(std::size_t category_count, PairSet pairs)
    : category_count_(category_count), pairs_(std::move(pairs)) {
  for (auto [h, j] : pairs_) {
    if (h >= category_count_ || j >= category_count_) {
      throw SemanticError("specificity pair refers to an unknown category");
    }
    if (h == j) throw SemanticError("specificity relation is not irreflexive");
  }
  if (transitive_closure(category_count_, pairs_) != pairs_) {
    throw SemanticError("specificity relation is not transitive");
  }
}

double rd_bmu_set(const SemanticModel& model, std::size_t i, std::size_t j) {
  const CategoryTable& ci = model.category(i);
  const CategoryTable& cj = model.category(j);
  if (ci.empty()) throw InputError("category '" + ci.name + "' has no input stimuli");
  double worst = 0.0;
  for (const CategoryMember& m : ci.members) worst = std::max(worst, cj.rd[m.bmu]);
  return worst;
}

CheckReport check_typicality(const SemanticModel& model, std::size_t i, std::size_t j) {
  CheckReport r;
  r.inclusion = named_inclusion(model, InclusionKind::defeasible, i, j);
  r.method = CheckMethod::condition3;
  if (model.category(i).empty()) {
    r.status = CheckStatus::vacuous;
    return r;
  }
  const CategoryTable& cj = model.category(j);
  const double score = rd_bmu_set(model, i, j);
  r.plausibility = score;
  // An empty rhs has no rd_max; its rd entries are +inf, so the check fails.
  const bool ok = !cj.empty() && score <= cj.rd_max;
  r.status = ok ? CheckStatus::holds : CheckStatus::fails;
  if (!ok) {
    for (std::size_t b : model.category(i).bmu_elements()) {
      if (cj.empty() || !(cj.rd[b] <= cj.rd_max)) r.witnesses.push_back(b);
    }
  }
  return r;
}

CheckReport check_strict(const SemanticModel& model, std::size_t i, std::size_t j) {
  CheckReport r;
  r.inclusion = named_inclusion(model, InclusionKind::strict, i, j);
  r.method = CheckMethod::condition4;
  const CategoryTable& ci = model.category(i);
  const CategoryTable& cj = model.category(j);
  r.witnesses = difference(model.extension(i), model.extension(j));
  r.exact_holds = r.witnesses.empty();
  if (ci.empty()) {
    r.status = CheckStatus::vacuous;
    return r;
  }
  const bool ok = !cj.empty() && rd_bmu_set(model, i, j) + ci.rd_max <= cj.rd_max;
  r.status = ok ? CheckStatus::holds : CheckStatus::fails;
  return r;
}

CheckReport check_empty(const SemanticModel& model, std::size_t i) {
  CheckReport r;
  r.inclusion = {InclusionKind::strict, Concept::named(model.category(i).name), Concept::bottom()};
  r.method = CheckMethod::set_inclusion;
  r.witnesses = model.extension(i);
  r.status = r.witnesses.empty() ? CheckStatus::holds : CheckStatus::fails;
  return r;
}

KnowledgeBase KbExtraction::holding() const {
  KnowledgeBase kb;
  for (const auto* group : {&reports, &emptiness}) {
    for (const CheckReport& r : *group) {
      if (r.holds()) kb.insert(r.inclusion);
    }
  }
  return kb;
}

KbExtraction extract_kb(const SemanticModel& model) {
  KbExtraction out;
  const std::size_t k = model.category_count();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      out.reports.push_back(check_strict(model, i, j));
      out.reports.push_back(check_typicality(model, i, j));
    }
    out.emptiness.push_back(check_empty(model, i));
  }
  for (const CheckReport& r : out.reports) {
    if (r.inclusion.kind == InclusionKind::defeasible && r.holds()) {
      out.ranked_defeasible.push_back(r);
    }
  }
  // Reports are already in (lhs, rhs) order, so a stable sort keeps that as the tie-break.
  std::stable_sort(out.ranked_defeasible.begin(), out.ranked_defeasible.end(),
                   [](const CheckReport& a, const CheckReport& b) {
                     return *a.plausibility < *b.plausibility;
                   });
  return out;
}

std::string format_knowledge_base(const SemanticModel& model, const KbExtraction& kb) {
  std::ostringstream out;
  out << "# knowledge base extracted from a map over " << model.category_count()
      << " categories and " << model.size() << " domain elements\n";
  out << "# strict inclusions\n";
  for (const CheckReport& r : kb.reports) {
    if (r.inclusion.kind == InclusionKind::strict && r.holds()) {
      out << to_string(r.inclusion) << '\n';
    }
  }
  out << "# defeasible inclusions, most plausible first\n";
  for (const CheckReport& r : kb.ranked_defeasible) {
    out << to_string(r.inclusion) << "  # plausibility=" << format_double(*r.plausibility) << '\n';
  }
  bool header = false;
  for (const CheckReport& r : kb.emptiness) {
    if (!r.holds()) continue;
    if (!header) out << "# empty categories\n";
    header = true;
    out << to_string(r.inclusion) << '\n';
  }
  return out.str();
}

Specificity derive_specificity(const SemanticModel& model) {
  const std::size_t k = model.category_count();
  std::vector<std::vector<char>> strict(k, std::vector<char>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) strict[i][j] = check_strict(model, i, j).holds();
  }
  PairSet raw;
  for (std::size_t h = 0; h < k; ++h) {
    for (std::size_t j = 0; j < k; ++j) {
      if (h != j && strict[h][j] && !strict[j][h]) raw.emplace(h, j);
    }
  }
  PairSet closed = transitive_closure(k, raw);
  for (std::size_t c = 0; c < k; ++c) {
    if (!closed.contains({c, c})) continue;
    std::string listing;
    for (std::size_t v : find_cycle(k, raw)) {
      if (!listing.empty()) listing += " > ";
      listing += model.category(v).name;
    }
    throw SemanticError("specificity cycle: " + listing);
  }
  return Specificity(k, std::move(closed));
}

}  // namespace prefsom
