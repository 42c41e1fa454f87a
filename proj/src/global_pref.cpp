#include "prefsom/global_pref.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "prefsom/error.hpp"

namespace prefsom {
namespace {

constexpr std::size_t kMaxListedViolations = 10;

// For each category j, the categories more specific than j.
std::vector<std::vector<std::size_t>> overriders(const Specificity& specificity) {
  std::vector<std::vector<std::size_t>> out(specificity.category_count());
  for (auto [h, j] : specificity.pairs()) out[j].push_back(h);
  return out;
}

void require_matching(const SemanticModel& model, const Specificity& specificity) {
  if (specificity.category_count() != model.category_count()) {
    throw InputError("specificity relation is over " +
                     std::to_string(specificity.category_count()) + " categories, model has " +
                     std::to_string(model.category_count()));
  }
}

bool prefer_with(const SemanticModel& model, const std::vector<std::vector<std::size_t>>& over,
                 std::size_t x, std::size_t y) {
  const auto& cats = model.categories();
  bool somewhere = false;
  for (const CategoryTable& t : cats) {
    if (t.rd[x] < t.rd[y]) {
      somewhere = true;
      break;
    }
  }
  if (!somewhere) return false;
  for (std::size_t j = 0; j < cats.size(); ++j) {
    if (cats[j].rd[x] <= cats[j].rd[y]) continue;
    const bool overridden = std::any_of(over[j].begin(), over[j].end(), [&](std::size_t h) {
      return cats[h].rd[x] < cats[h].rd[y];
    });
    if (!overridden) return false;
  }
  return true;
}

std::string describe(const SemanticModel& model, std::initializer_list<std::size_t> elems) {
  std::string s;
  for (std::size_t e : elems) {
    if (!s.empty()) s += ", ";
    s += model.element(e).id;
  }
  return s;
}

std::vector<std::string> element_ids(const SemanticModel& model, const ElementSet& s) {
  std::vector<std::string> ids;
  for (std::size_t e : s) ids.push_back(model.element(e).id);
  return ids;
}

PreferenceRelation transpose(const PreferenceRelation& rel) {
  PreferenceRelation t(rel.size());
  for (std::size_t x = 0; x < rel.size(); ++x) {
    for (std::size_t y = 0; y < rel.size(); ++y) {
      if (rel(x, y)) t.set(y, x);
    }
  }
  return t;
}

// First z with y < z but not x < z, if any.
std::optional<std::size_t> transitivity_gap(const PreferenceRelation& rel, std::size_t x,
                                            std::size_t y) {
  auto rx = rel.row(x);
  auto ry = rel.row(y);
  for (std::size_t w = 0; w < rx.size(); ++w) {
    if (std::uint64_t gap = ry[w] & ~rx[w]) return w * 64 + std::countr_zero(gap);
  }
  return std::nullopt;
}

// Positions left over by a topological peel: nonempty iff the relation has a cycle.
ElementSet cyclic_part(const PreferenceRelation& rel) {
  const std::size_t n = rel.size();
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) indegree[y] += rel(x, y);
  }
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::vector<char> removed(n, 0);
  while (!ready.empty()) {
    const std::size_t v = ready.back();
    ready.pop_back();
    removed[v] = 1;
    for (std::size_t y = 0; y < n; ++y) {
      if (rel(v, y) && --indegree[y] == 0) ready.push_back(y);
    }
  }
  ElementSet rest;
  for (std::size_t v = 0; v < n; ++v) {
    if (!removed[v]) rest.push_back(v);
  }
  return rest;
}

}  // namespace

PreferenceRelation::PreferenceRelation(std::size_t n)
    : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

std::size_t PreferenceRelation::pair_count() const {
  std::size_t count = 0;
  for (std::uint64_t w : bits_) count += static_cast<std::size_t>(std::popcount(w));
  return count;
}

bool global_prefer(const SemanticModel& model, const Specificity& specificity, std::size_t x,
                   std::size_t y) {
  require_matching(model, specificity);
  if (x >= model.size() || y >= model.size()) throw InputError("element outside the domain");
  return prefer_with(model, overriders(specificity), x, y);
}

CwmModel assemble_cwm(SemanticModel base, Specificity specificity) {
  require_matching(base, specificity);
  const std::size_t n = base.size();
  PreferenceRelation rel(n);
  const auto over = overriders(specificity);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (prefer_with(base, over, x, y)) rel.set(x, y);
    }
  }
  return {std::move(base), std::move(specificity), std::move(rel)};
}

CwmModel build_cwm(SemanticModel base, Specificity specificity) {
  CwmModel cwm = assemble_cwm(std::move(base), std::move(specificity));
  const PreferenceRelation& rel = cwm.global;
  for (std::size_t x = 0; x < rel.size(); ++x) {
    if (rel(x, x)) {
      throw ConsistencyError("global preference is not irreflexive at " +
                             describe(cwm.base, {x}));
    }
    for (std::size_t y = 0; y < rel.size(); ++y) {
      if (!rel(x, y)) continue;
      if (auto z = transitivity_gap(rel, x, y)) {
        throw ConsistencyError("global preference is not transitive: " +
                               describe(cwm.base, {x, y, *z}) + " (x < y, y < z, not x < z)");
      }
    }
  }
  return cwm;
}

ElementSet minimal_elements(const PreferenceRelation& rel, const ElementSet& s) {
  ElementSet out;
  for (std::size_t u : s) {
    const bool dominated = std::any_of(s.begin(), s.end(), [&](std::size_t z) { return rel(z, u); });
    if (!dominated) out.push_back(u);
  }
  return out;
}

ElementSet typicality_extension(const CwmModel& cwm, const Concept& c) {
  return minimal_elements(cwm.global, extension(cwm.base, c));
}

CheckReport check_query(const CwmModel& cwm, const Inclusion& query) {
  const SemanticModel& model = cwm.base;
  resolve(model, query.lhs);
  resolve(model, query.rhs);
  const bool names = query.lhs.kind() == Concept::Kind::name &&
                     query.rhs.kind() == Concept::Kind::name;
  if (names) {
    const std::size_t i = model.require_category(query.lhs.name());
    const std::size_t j = model.require_category(query.rhs.name());
    return query.kind == InclusionKind::strict ? check_strict(model, i, j)
                                               : check_typicality(model, i, j);
  }
  CheckReport r;
  r.inclusion = query;
  r.method = CheckMethod::set_inclusion;
  const ElementSet lhs = query.kind == InclusionKind::strict ? extension(model, query.lhs)
                                                             : typicality_extension(cwm, query.lhs);
  r.witnesses = difference(lhs, extension(model, query.rhs));
  r.status = r.witnesses.empty() ? CheckStatus::holds : CheckStatus::fails;
  return r;
}

void PropertyCheck::add_violation(Violation v) {
  passed = false;
  ++violation_count;
  if (violations.size() < kMaxListedViolations) violations.push_back(std::move(v));
}

bool PropertyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const PropertyCheck& c) { return c.informational || c.passed; });
}

const PropertyCheck* PropertyReport::find(std::string_view name) const {
  for (const PropertyCheck& c : checks) {
    if (c.check == name) return &c;
  }
  return nullptr;
}

PropertyReport verify_preferential(const CwmModel& cwm) {
  const SemanticModel& model = cwm.base;
  const PreferenceRelation& rel = cwm.global;
  const std::size_t n = rel.size();
  PropertyReport report;

  // rd-induced orders are always irreflexive and transitive; they stop being modular
  // exactly when a NaN entry is incomparable with a strictly ordered pair.
  PropertyCheck orders{"category_orders"};
  for (const CategoryTable& t : model.categories()) {
    ++orders.instances;
    auto nan = std::find_if(t.rd.begin(), t.rd.end(), [](double v) { return std::isnan(v); });
    if (nan == t.rd.end()) continue;
    const std::size_t z = static_cast<std::size_t>(nan - t.rd.begin());
    for (std::size_t x = 0; x < n && orders.violation_count == 0; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (t.rd[x] < t.rd[y]) {
          orders.add_violation({t.name + " is not modular",
                                {model.element(x).id, model.element(y).id, model.element(z).id}});
          break;
        }
      }
    }
  }
  report.checks.push_back(std::move(orders));

  PropertyCheck irreflexive{"irreflexivity"};
  irreflexive.instances = n;
  for (std::size_t x = 0; x < n; ++x) {
    if (rel(x, x)) irreflexive.add_violation({"x < x", {model.element(x).id}});
  }

  PropertyCheck transitive{"transitivity"};
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (!rel(x, y)) continue;
      ++transitive.instances;
      if (auto z = transitivity_gap(rel, x, y)) {
        transitive.add_violation({"x < y and y < z but not x < z",
                                  {model.element(x).id, model.element(y).id, model.element(*z).id}});
      }
    }
  }

  PropertyCheck founded{"well_foundedness"};
  founded.instances = n;
  if (ElementSet cycle = cyclic_part(rel); !cycle.empty()) {
    founded.add_violation({"elements on or behind a preference cycle", element_ids(model, cycle)});
  }

  PropertyCheck preferential{"preferential"};
  preferential.instances = 1;
  if (!irreflexive.passed || !transitive.passed || !founded.passed) {
    preferential.add_violation({"global relation is not an irreflexive, transitive, well-founded order", {}});
  }

  PropertyCheck modular{"modularity"};
  modular.informational = true;
  const PreferenceRelation below = transpose(rel);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (!rel(x, y)) continue;
      ++modular.instances;
      auto rx = rel.row(x);
      auto cy = below.row(y);
      for (std::size_t z = 0; z < n; ++z) {
        const bool covered = ((rx[z / 64] | cy[z / 64]) >> (z % 64)) & 1u;
        if (!covered) {
          modular.add_violation({"x < y but z is comparable to neither side",
                                 {model.element(x).id, model.element(y).id, model.element(z).id}});
          break;
        }
      }
    }
  }

  report.checks.push_back(std::move(irreflexive));
  report.checks.push_back(std::move(transitive));
  report.checks.push_back(std::move(founded));
  report.checks.push_back(std::move(preferential));
  report.checks.push_back(std::move(modular));
  return report;
}

std::vector<Concept> concept_pool(const SemanticModel& model, std::size_t max_names) {
  std::vector<Concept> pool{Concept::top(), Concept::bottom()};
  const std::size_t k = model.category_count();
  std::vector<std::size_t> chosen;
  auto extend = [&](std::size_t start, auto& self) -> void {
    if (!chosen.empty()) {
      std::vector<Concept> parts;
      for (std::size_t c : chosen) parts.push_back(Concept::named(model.category(c).name));
      pool.push_back(Concept::conjunction_of(std::move(parts)));
    }
    if (chosen.size() == max_names) return;
    for (std::size_t c = start; c < k; ++c) {
      chosen.push_back(c);
      self(c + 1, self);
      chosen.pop_back();
    }
  };
  extend(0, extend);
  return pool;
}

PropertyReport verify_klm(const CwmModel& cwm, std::span<const Concept> pool) {
  const SemanticModel& model = cwm.base;
  const std::size_t p = pool.size();
  std::vector<ElementSet> ext(p);
  std::vector<ElementSet> typ(p);
  for (std::size_t c = 0; c < p; ++c) {
    ext[c] = extension(model, pool[c]);
    typ[c] = minimal_elements(cwm.global, ext[c]);
  }
  std::vector<std::vector<char>> entails(p, std::vector<char>(p, 0));
  std::vector<std::vector<char>> subsumed(p, std::vector<char>(p, 0));
  for (std::size_t c = 0; c < p; ++c) {
    for (std::size_t d = 0; d < p; ++d) {
      entails[c][d] = is_subset(typ[c], ext[d]);
      subsumed[c][d] = is_subset(ext[c], ext[d]);
    }
  }
  auto name = [&](std::size_t c) { return to_string(pool[c]); };
  auto instance = [&](std::initializer_list<std::pair<const char*, std::size_t>> vars) {
    std::string s;
    for (auto [label, c] : vars) {
      if (!s.empty()) s += ", ";
      s += std::string(label) + "=" + name(c);
    }
    return s;
  };

  PropertyReport report;

  PropertyCheck reflexivity{"reflexivity"};
  for (std::size_t c = 0; c < p; ++c) {
    ++reflexivity.instances;
    if (!entails[c][c]) {
      reflexivity.add_violation({instance({{"C", c}}), element_ids(model, difference(typ[c], ext[c]))});
    }
  }

  PropertyCheck lle{"left_logical_equivalence"};
  PropertyCheck rw{"right_weakening"};
  PropertyCheck conj{"and"};
  PropertyCheck cm{"cautious_monotonicity"};
  PropertyCheck disj{"or"};

  std::map<ElementSet, std::size_t> expressible;
  for (std::size_t c = 0; c < p; ++c) expressible.try_emplace(ext[c], c);

  for (std::size_t c = 0; c < p; ++c) {
    for (std::size_t c2 = 0; c2 < p; ++c2) {
      if (c == c2 || ext[c] != ext[c2]) continue;
      for (std::size_t d = 0; d < p; ++d) {
        ++lle.instances;
        if (entails[c][d] != entails[c2][d]) {
          lle.add_violation({instance({{"C", c}, {"C'", c2}, {"D", d}}), {}});
        }
      }
    }
  }

  for (std::size_t c = 0; c < p; ++c) {
    for (std::size_t d = 0; d < p; ++d) {
      if (!entails[c][d]) continue;
      const ElementSet typ_cd = minimal_elements(cwm.global, intersect(ext[c], ext[d]));
      for (std::size_t e = 0; e < p; ++e) {
        if (subsumed[d][e]) {
          ++rw.instances;
          if (!entails[c][e]) rw.add_violation({instance({{"C", c}, {"D", d}, {"E", e}}), {}});
        }
        if (!entails[c][e]) continue;

        ++conj.instances;
        const ElementSet both = intersect(ext[d], ext[e]);
        if (!is_subset(typ[c], both)) {
          conj.add_violation({instance({{"C", c}, {"D", d}, {"E", e}}),
                              element_ids(model, difference(typ[c], both))});
        }

        ++cm.instances;
        if (!is_subset(typ_cd, ext[e])) {
          cm.add_violation({instance({{"C", c}, {"D", d}, {"E", e}}),
                            element_ids(model, difference(typ_cd, ext[e]))});
        }
      }
    }
  }

  // Or needs C v D, which only exists here when some pooled concept has that extension.
  for (std::size_t c = 0; c < p; ++c) {
    for (std::size_t d = 0; d < p; ++d) {
      ElementSet either;
      std::set_union(ext[c].begin(), ext[c].end(), ext[d].begin(), ext[d].end(),
                     std::back_inserter(either));
      auto it = expressible.find(either);
      for (std::size_t e = 0; e < p; ++e) {
        if (!entails[c][e] || !entails[d][e]) continue;
        if (it == expressible.end()) {
          ++disj.not_expressible;
          continue;
        }
        ++disj.instances;
        if (!entails[it->second][e]) {
          disj.add_violation({instance({{"C", c}, {"D", d}, {"E", e}, {"C v D", it->second}}), {}});
        }
      }
    }
  }

  report.checks.push_back(std::move(reflexivity));
  report.checks.push_back(std::move(lle));
  report.checks.push_back(std::move(rw));
  report.checks.push_back(std::move(conj));
  report.checks.push_back(std::move(disj));
  report.checks.push_back(std::move(cm));
  return report;
}

}  // namespace prefsom
