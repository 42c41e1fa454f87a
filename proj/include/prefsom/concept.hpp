#pragma once

#include <compare>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "prefsom/semantic_model.hpp"

namespace prefsom {

/// Role-free EL-bottom concept: Top, Bot, a category name, or a binary conjunction.
class Concept {
 public:
  enum class Kind { top, bottom, name, conjunction };

  static Concept top() { return Concept(Kind::top); }
  static Concept bottom() { return Concept(Kind::bottom); }
  static Concept named(std::string name);
  static Concept conjunction(Concept left, Concept right);
  /// Right-nested conjunction of `parts` (Top when empty).
  static Concept conjunction_of(std::vector<Concept> parts);

  Kind kind() const noexcept { return kind_; }
  /// Only for Kind::name.
  const std::string& name() const noexcept { return name_; }
  /// Only for Kind::conjunction.
  const Concept& left() const noexcept { return children_->first; }
  const Concept& right() const noexcept { return children_->second; }

  /// Category names occurring in the concept, in order of appearance.
  std::vector<std::string> names() const;

  friend bool operator==(const Concept& a, const Concept& b);
  friend std::strong_ordering operator<=>(const Concept& a, const Concept& b);

 private:
  explicit Concept(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::string name_;
  std::shared_ptr<const std::pair<Concept, Concept>> children_;
};

enum class InclusionKind { strict, defeasible };

/// `lhs <= rhs`, or `T(lhs) <= rhs` when defeasible.
struct Inclusion {
  InclusionKind kind = InclusionKind::strict;
  Concept lhs = Concept::top();
  Concept rhs = Concept::top();

  friend bool operator==(const Inclusion&, const Inclusion&) = default;
  friend std::strong_ordering operator<=>(const Inclusion& a, const Inclusion& b);
};

std::string to_string(const Concept& c);
std::string to_string(const Inclusion& inc);
std::string_view to_string(InclusionKind kind);

Concept parse_concept(std::string_view text);
Inclusion parse_inclusion(std::string_view text);
/// A bare concept, or an inclusion when the text contains `<=`.
std::variant<Concept, Inclusion> parse(std::string_view text);

/// One inclusion per line; `#` starts a comment. Errors report the line number.
std::vector<Inclusion> parse_knowledge_base(std::string_view text);

/// Throws ResolutionError if a name is not a category of `model`.
void resolve(const SemanticModel& model, const Concept& c);

/// Structural evaluation: Top is the domain, Bot is empty, conjunction intersects.
ElementSet extension(const SemanticModel& model, const Concept& c);

}  // namespace prefsom
