#include "prefsom/concept.hpp"

#include <cctype>
#include <optional>

#include "prefsom/error.hpp"

namespace prefsom {

Concept Concept::named(std::string name) {
  Concept c(Kind::name);
  c.name_ = std::move(name);
  return c;
}

Concept Concept::conjunction(Concept left, Concept right) {
  Concept c(Kind::conjunction);
  c.children_ = std::make_shared<const std::pair<Concept, Concept>>(std::move(left), std::move(right));
  return c;
}

Concept Concept::conjunction_of(std::vector<Concept> parts) {
  if (parts.empty()) return top();
  Concept acc = std::move(parts.back());
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = conjunction(std::move(parts[i]), std::move(acc));
  return acc;
}

std::vector<std::string> Concept::names() const {
  std::vector<std::string> out;
  auto walk = [&out](const Concept& c, auto& self) -> void {
    if (c.kind() == Kind::name) out.push_back(c.name());
    if (c.kind() == Kind::conjunction) {
      self(c.left(), self);
      self(c.right(), self);
    }
  };
  walk(*this, walk);
  return out;
}

bool operator==(const Concept& a, const Concept& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Concept& a, const Concept& b) {
  if (auto k = a.kind_ <=> b.kind_; k != 0) return k;
  switch (a.kind_) {
    case Concept::Kind::name:
      return a.name_ <=> b.name_;
    case Concept::Kind::conjunction:
      if (auto l = a.left() <=> b.left(); l != 0) return l;
      return a.right() <=> b.right();
    default:
      return std::strong_ordering::equal;
  }
}

std::strong_ordering operator<=>(const Inclusion& a, const Inclusion& b) {
  if (auto k = a.kind <=> b.kind; k != 0) return k;
  if (auto l = a.lhs <=> b.lhs; l != 0) return l;
  return a.rhs <=> b.rhs;
}

std::string to_string(const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::top:
      return "Top";
    case Concept::Kind::bottom:
      return "Bot";
    case Concept::Kind::name:
      return c.name();
    case Concept::Kind::conjunction: {
      // Conjunction associates to the right, so only a conjunction on the left needs parens.
      std::string left = to_string(c.left());
      if (c.left().kind() == Concept::Kind::conjunction) left = "(" + left + ")";
      return left + " & " + to_string(c.right());
    }
  }
  return {};
}

std::string to_string(const Inclusion& inc) {
  const std::string lhs = to_string(inc.lhs);
  if (inc.kind == InclusionKind::defeasible) return "T(" + lhs + ") <= " + to_string(inc.rhs);
  return lhs + " <= " + to_string(inc.rhs);
}

std::string_view to_string(InclusionKind kind) {
  return kind == InclusionKind::strict ? "strict" : "defeasible";
}

namespace {

enum class Tok { ident, lparen, rparen, amp, subsumed, end };

struct Token {
  Tok type;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      out.push_back({Tok::lparen, "(", i++});
    } else if (c == ')') {
      out.push_back({Tok::rparen, ")", i++});
    } else if (c == '&') {
      out.push_back({Tok::amp, "&", i++});
    } else if (c == '<' && i + 1 < s.size() && s[i + 1] == '=') {
      out.push_back({Tok::subsumed, "<=", i});
      i += 2;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::ident, std::string(s.substr(start, i - start)), start});
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  bool has_subsumption() const {
    for (const Token& t : tokens_) {
      if (t.type == Tok::subsumed) return true;
    }
    return false;
  }

  bool at_typicality() const {
    return peek().type == Tok::ident && peek().text == "T" && tokens_[pos_ + 1].type == Tok::lparen;
  }

  Inclusion inclusion() {
    Inclusion inc;
    if (at_typicality()) {
      pos_ += 2;
      inc.kind = InclusionKind::defeasible;
      inc.lhs = conjunction();
      expect(Tok::rparen, "')' closing T(");
    } else {
      inc.lhs = conjunction();
    }
    expect(Tok::subsumed, "'<='");
    inc.rhs = conjunction();
    expect(Tok::end, "end of input");
    return inc;
  }

  Concept whole_concept() {
    if (at_typicality()) {
      throw ParseError("typicality is only allowed on the left-hand side of an inclusion",
                       peek().pos);
    }
    Concept c = conjunction();
    expect(Tok::end, "end of input");
    return c;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  void expect(Tok type, const char* what) {
    if (peek().type != type) {
      const std::string found = peek().type == Tok::end ? "end of input" : "'" + peek().text + "'";
      throw ParseError(std::string("expected ") + what + ", found " + found, peek().pos);
    }
    ++pos_;
  }

  Concept conjunction() {
    std::vector<Concept> parts;
    parts.push_back(atom());
    while (peek().type == Tok::amp) {
      ++pos_;
      parts.push_back(atom());
    }
    return Concept::conjunction_of(std::move(parts));
  }

  Concept atom() {
    const Token& t = peek();
    if (t.type == Tok::lparen) {
      ++pos_;
      Concept c = conjunction();
      expect(Tok::rparen, "')'");
      return c;
    }
    if (t.type != Tok::ident) {
      const std::string found = t.type == Tok::end ? "end of input" : "'" + t.text + "'";
      throw ParseError("expected a concept, found " + found, t.pos);
    }
    if (at_typicality()) throw ParseError("nested typicality is not allowed", t.pos);
    ++pos_;
    if (t.text == "Top") return Concept::top();
    if (t.text == "Bot") return Concept::bottom();
    return Concept::named(t.text);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Concept parse_concept(std::string_view text) { return Parser(text).whole_concept(); }

Inclusion parse_inclusion(std::string_view text) { return Parser(text).inclusion(); }

std::variant<Concept, Inclusion> parse(std::string_view text) {
  Parser p(text);
  if (p.has_subsumption()) return p.inclusion();
  return p.whole_concept();
}

std::vector<Inclusion> parse_knowledge_base(std::string_view text) {
  std::vector<Inclusion> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? text.npos : nl - start);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      try {
        out.push_back(parse_inclusion(line));
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.detail(), e.position());
      }
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

void resolve(const SemanticModel& model, const Concept& c) {
  for (const std::string& name : c.names()) model.require_category(name);
}

ElementSet extension(const SemanticModel& model, const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::top:
      return model.all_elements();
    case Concept::Kind::bottom:
      return {};
    case Concept::Kind::name:
      return model.extension(model.require_category(c.name()));
    case Concept::Kind::conjunction:
      return intersect(extension(model, c.left()), extension(model, c.right()));
  }
  return {};
}

}  // namespace prefsom
