#include "engelkit/expr.hpp"

#include <cctype>

namespace engelkit {

namespace {

struct Tok {
  enum Kind { Name, Int, Sym, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Tok> lex(std::string_view s) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Name, std::string(s.substr(i, j - i)), i});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Int, std::string(s.substr(i, j - i)), i});
      i = j;
    } else if (std::string_view("^()[]{},+-*").find(c) != std::string_view::npos) {
      out.push_back({Tok::Sym, std::string(1, c), i});
      ++i;
    } else {
      throw ExprError("unexpected character '" + std::string(1, c) + "' at offset " + std::to_string(i));
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

ElementExpr make(ElementNode n) { return std::make_shared<const ElementNode>(std::move(n)); }

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  ElementExpr element_top() {
    ElementExpr e = element();
    expect_end();
    return e;
  }

  ExponentExpr exponent_top() {
    ExponentExpr e = exponent();
    expect_end();
    return e;
  }

 private:
  const Tok& peek() const { return toks_[pos_]; }
  bool at_sym(char c) const { return peek().kind == Tok::Sym && peek().text[0] == c; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ExprError(what + " at offset " + std::to_string(peek().pos));
  }
  void expect(char c) {
    if (!at_sym(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void expect_end() const {
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
  }

  bool starts_primary() const {
    return peek().kind == Tok::Name || (peek().kind == Tok::Int && peek().text == "1") || at_sym('(') ||
           at_sym('[');
  }

  ElementExpr element() {
    std::vector<ElementExpr> parts;
    while (true) {
      if (at_sym('*') && !parts.empty()) {
        ++pos_;
        if (!starts_primary()) fail("expected a factor after '*'");
      }
      if (!starts_primary()) break;
      parts.push_back(factor());
    }
    if (parts.empty()) fail("expected an element");
    if (parts.size() == 1) return parts[0];
    ElementNode n;
    n.kind = ElementNode::Kind::Product;
    n.parts = std::move(parts);
    return make(std::move(n));
  }

  ElementExpr primary() {
    const Tok t = peek();
    if (t.kind == Tok::Name) {
      ++pos_;
      ElementNode n;
      n.kind = ElementNode::Kind::Name;
      n.name = t.text;
      return make(std::move(n));
    }
    if (t.kind == Tok::Int && t.text == "1") {
      ++pos_;
      return make(ElementNode{});
    }
    if (at_sym('(')) {
      ++pos_;
      ElementExpr e = element();
      expect(')');
      return e;
    }
    if (at_sym('[')) {
      ++pos_;
      ElementNode n;
      n.kind = ElementNode::Kind::Commutator;
      n.parts.push_back(element());
      while (at_sym(',')) {
        ++pos_;
        n.parts.push_back(element());
      }
      expect(']');
      if (n.parts.size() < 2) fail("commutator needs at least two entries");
      return make(std::move(n));
    }
    fail("expected a name, '1', '(' or '['");
  }

  ElementExpr factor() {
    ElementExpr base = primary();
    while (at_sym('^')) {
      ++pos_;
      base = superscript(std::move(base));
    }
    return base;
  }

  ElementExpr superscript(ElementExpr base) {
    if (at_sym('{')) {
      ++pos_;
      ElementNode n;
      n.kind = ElementNode::Kind::Exponent;
      n.parts.push_back(std::move(base));
      n.exp = std::make_shared<const ExponentExpr>(exponent());
      expect('}');
      return make(std::move(n));
    }
    bool neg = false;
    if (at_sym('-')) {
      ++pos_;
      neg = true;
    }
    if (peek().kind == Tok::Int) {
      ElementNode n;
      n.kind = ElementNode::Kind::Power;
      n.parts.push_back(std::move(base));
      n.exponent = Integer::from_string(peek().text);
      if (neg) n.exponent = -n.exponent;
      ++pos_;
      return make(std::move(n));
    }
    ElementExpr t = primary();
    if (!neg) {
      ElementNode n;
      n.kind = ElementNode::Kind::Conjugate;
      n.parts = {std::move(base), std::move(t)};
      return make(std::move(n));
    }
    ExponentExpr e;
    e.terms.push_back(ExponentMonomial{true, {ExponentFactor(std::move(t))}});
    ElementNode n;
    n.kind = ElementNode::Kind::Exponent;
    n.parts.push_back(std::move(base));
    n.exp = std::make_shared<const ExponentExpr>(std::move(e));
    return make(std::move(n));
  }

  bool starts_mfactor() const { return peek().kind == Tok::Int || starts_primary(); }

  ExponentExpr exponent() {
    ExponentExpr e;
    bool first = true;
    while (true) {
      bool negative = false;
      bool signed_term = false;
      if (at_sym('+') || at_sym('-')) {
        negative = at_sym('-');
        signed_term = true;
        ++pos_;
      } else if (!first || !starts_mfactor()) {
        if (!first && starts_mfactor()) fail("expected '+' or '-' between terms");
        break;
      }
      ExponentMonomial m;
      m.negative = negative;
      while (true) {
        if (at_sym('*') && !m.factors.empty()) ++pos_;
        if (!starts_mfactor()) break;
        m.factors.push_back(mfactor());
      }
      if (m.factors.empty()) {
        if (signed_term) fail("expected a term after sign");
        break;
      }
      e.terms.push_back(std::move(m));
      first = false;
    }
    return e;
  }

  ExponentFactor mfactor() {
    if (peek().kind == Tok::Int && !(at_int_one_followed_by_caret())) {
      Integer v = Integer::from_string(peek().text);
      ++pos_;
      return v;
    }
    if (at_sym('(')) {
      ++pos_;
      auto inner = std::make_shared<const ExponentExpr>(exponent());
      expect(')');
      return inner;
    }
    return factor();
  }

  bool at_int_one_followed_by_caret() const {
    return peek().text == "1" && toks_[pos_ + 1].kind == Tok::Sym && toks_[pos_ + 1].text == "^";
  }

  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
};

class Evaluator {
 public:
  Evaluator(const PcPresentation& p, const Environment& env) : p_(p), env_(env) {}

  ExponentVector element(const ElementExpr& e) const {
    using K = ElementNode::Kind;
    switch (e->kind) {
      case K::Identity:
        return pc_identity(p_);
      case K::Name: {
        auto it = env_.find(e->name);
        if (it == env_.end()) throw ExprError("unresolved name '" + e->name + "'");
        if (it->second.size() != p_.size()) throw ExprError("name '" + e->name + "' has the wrong length");
        return it->second;
      }
      case K::Product: {
        ExponentVector v = pc_identity(p_);
        for (const auto& part : e->parts) v = pc_multiply(p_, v, element(part));
        return v;
      }
      case K::Commutator: {
        std::vector<ExponentVector> parts;
        for (const auto& part : e->parts) parts.push_back(element(part));
        return pc_left_normed_comm(p_, parts);
      }
      case K::Power:
        return pc_power(p_, element(e->parts[0]), e->exponent);
      case K::Conjugate:
        return pc_conj(p_, element(e->parts[0]), element(e->parts[1]));
      case K::Exponent:
        return exponent(element(e->parts[0]), *e->exp);
    }
    throw ExprError("bad element node");
  }

  ExponentVector exponent(const ExponentVector& base, const ExponentExpr& e) const {
    ExponentVector result = pc_identity(p_);
    for (const auto& m : e.terms) {
      ExponentVector cur = base;
      for (const auto& f : m.factors) {
        if (const auto* n = std::get_if<Integer>(&f))
          cur = pc_power(p_, cur, *n);
        else if (const auto* t = std::get_if<ElementExpr>(&f))
          cur = pc_conj(p_, cur, element(*t));
        else
          cur = exponent(cur, *std::get<std::shared_ptr<const ExponentExpr>>(f));
      }
      if (m.negative) cur = pc_invert(p_, cur);
      result = pc_multiply(p_, result, cur);
    }
    return result;
  }

 private:
  const PcPresentation& p_;
  const Environment& env_;
};

}  // namespace

ElementExpr parse_element_expr(std::string_view text) { return Parser(text).element_top(); }

ExponentExpr parse_exponent_expr(std::string_view text) { return Parser(text).exponent_top(); }

ExponentVector evaluate_element_expr(const PcPresentation& p, const ElementExpr& e, const Environment& env) {
  return Evaluator(p, env).element(e);
}

ExponentVector evaluate_element_expr(const PcPresentation& p, std::string_view text, const Environment& env) {
  return Evaluator(p, env).element(parse_element_expr(text));
}

ExponentVector evaluate_exponent_expr(const PcPresentation& p, const ExponentVector& base, const ExponentExpr& e,
                                      const Environment& env) {
  return Evaluator(p, env).exponent(base, e);
}

}  // namespace engelkit
