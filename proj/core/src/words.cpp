#include "engelkit/words.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace engelkit {

namespace {

// Appends `l` to a reduced word held in `out`, keeping it reduced.
void push_reduced(std::vector<Letter>& out, const Letter& l) {
  if (l.exp.is_zero()) return;
  if (!out.empty() && out.back().gen == l.gen) {
    out.back().exp += l.exp;
    if (out.back().exp.is_zero()) out.pop_back();
    return;
  }
  out.push_back(l);
}

}  // namespace

GroupWord::GroupWord(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (auto& l : letters) push_reduced(letters_, l);
}

GroupWord GroupWord::generator(int gen, Integer exp) {
  GroupWord w;
  if (!exp.is_zero()) w.letters_.push_back(Letter{gen, std::move(exp)});
  return w;
}

Integer GroupWord::length() const {
  Integer n;
  for (const auto& l : letters_) n += abs(l.exp);
  return n;
}

int GroupWord::max_generator() const {
  int m = -1;
  for (const auto& l : letters_) m = std::max(m, l.gen);
  return m;
}

GroupWord multiply(const GroupWord& u, const GroupWord& v) {
  std::vector<Letter> out = u.letters();
  for (const auto& l : v.letters()) push_reduced(out, l);
  return GroupWord(std::move(out));
}

GroupWord invert(const GroupWord& u) {
  std::vector<Letter> out;
  out.reserve(u.syllables());
  for (auto it = u.letters().rbegin(); it != u.letters().rend(); ++it)
    out.push_back(Letter{it->gen, -it->exp});
  return GroupWord(std::move(out));
}

GroupWord power(const GroupWord& u, const Integer& n) {
  if (n.is_zero() || u.empty()) return {};
  const GroupWord base = n.sign() < 0 ? invert(u) : u;
  if (base.syllables() == 1) return GroupWord::generator(base.letters()[0].gen, base.letters()[0].exp * abs(n));
  GroupWord r;
  for (Integer k = abs(n); k.sign() > 0; k -= 1) r = multiply(r, base);
  return r;
}

GroupWord conjugate(const GroupWord& u, const GroupWord& t) { return multiply(multiply(invert(t), u), t); }

GroupWord commutator(const GroupWord& u, const GroupWord& v) {
  return multiply(multiply(invert(u), invert(v)), multiply(u, v));
}

GroupWord left_normed_comm(std::span<const GroupWord> parts) {
  if (parts.empty()) throw std::invalid_argument("left_normed_comm: empty sequence");
  GroupWord acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = commutator(acc, parts[i]);
  return acc;
}

std::string format_word(const GroupWord& w, std::span<const std::string> names) {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& l : w.letters()) {
    if (!first) os << ' ';
    first = false;
    if (l.gen >= 0 && static_cast<std::size_t>(l.gen) < names.size())
      os << names[static_cast<std::size_t>(l.gen)];
    else
      os << 'g' << (l.gen + 1);
    if (!l.exp.is_one()) os << '^' << l.exp;
  }
  return os.str();
}

bool Presentation::is_identical(int gen) const {
  return std::binary_search(identical.begin(), identical.end(), gen);
}

int Presentation::generator_index(std::string_view name) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<int> Presentation::group_generators() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(generators.size()); ++i)
    if (!is_identical(i)) out.push_back(i);
  return out;
}

bool Presentation::mentions_identical(const GroupWord& w) const {
  return std::any_of(w.letters().begin(), w.letters().end(),
                     [&](const Letter& l) { return is_identical(l.gen); });
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, Int, Caret, LParen, RParen, LBracket, RBracket, Comma, Star, Minus, Sep, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '\n' || c == ';') {
      out.push_back({Tok::Sep, std::string(1, c), line, col});
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t l0 = line, c0 = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l0, c0});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Int, std::string(src.substr(i, j - i)), l0, c0});
      advance(j - i);
      continue;
    }
    Tok k;
    switch (c) {
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBracket; break;
      case ']': k = Tok::RBracket; break;
      case ',': k = Tok::Comma; break;
      case '*': k = Tok::Star; break;
      case '-': k = Tok::Minus; break;
      default:
        throw ParseError(l0, c0, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, std::string(1, c), l0, c0});
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const std::vector<std::string>* names)
      : toks_(std::move(toks)), names_(names) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.column, msg);
  }

  void expect(Tok k, const char* what) {
    if (!at(k)) fail(peek(), std::string("expected ") + what);
    ++pos_;
  }

  int lookup(const Token& t) const {
    for (std::size_t i = 0; i < names_->size(); ++i)
      if ((*names_)[i] == t.text) return static_cast<int>(i);
    fail(t, "undeclared generator '" + t.text + "'");
  }

  bool starts_term() const {
    return at(Tok::Ident) || at(Tok::LParen) || at(Tok::LBracket) || (at(Tok::Int) && peek().text == "1");
  }

  GroupWord word() {
    if (!starts_term()) fail(peek(), "expected a word");
    GroupWord w = term();
    while (true) {
      if (at(Tok::Star)) {
        ++pos_;
        w = multiply(w, term());
      } else if (starts_term()) {
        w = multiply(w, term());
      } else {
        break;
      }
    }
    return w;
  }

  GroupWord term() {
    GroupWord base = atom();
    if (at(Tok::Caret)) {
      ++pos_;
      if (at(Tok::Minus) || at(Tok::Int)) {
        bool neg = false;
        if (at(Tok::Minus)) {
          neg = true;
          ++pos_;
        }
        if (!at(Tok::Int)) fail(peek(), "expected an integer exponent");
        Integer n = Integer::from_string(next().text);
        if (neg) n = -n;
        return power(base, n);
      }
      GroupWord t = atom();
      return conjugate(base, t);
    }
    return base;
  }

  GroupWord atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
        ++pos_;
        return GroupWord::generator(lookup(t));
      case Tok::Int:
        if (t.text == "1") {
          ++pos_;
          return {};
        }
        fail(t, "unexpected integer");
      case Tok::LParen: {
        ++pos_;
        GroupWord w = word();
        expect(Tok::RParen, "')'");
        return w;
      }
      case Tok::LBracket: {
        ++pos_;
        std::vector<GroupWord> parts;
        parts.push_back(word());
        if (!at(Tok::Comma)) fail(peek(), "a commutator needs at least two entries");
        while (at(Tok::Comma)) {
          ++pos_;
          parts.push_back(word());
        }
        expect(Tok::RBracket, "']'");
        return left_normed_comm(parts);
      }
      default:
        fail(t, "expected a generator, '(' or '['");
    }
  }

  std::vector<GroupWord> word_list() {
    std::vector<GroupWord> out;
    out.push_back(word());
    while (at(Tok::Comma)) {
      ++pos_;
      out.push_back(word());
    }
    return out;
  }

  std::vector<Token> ident_list() {
    std::vector<Token> out;
    if (!at(Tok::Ident)) fail(peek(), "expected an identifier");
    out.push_back(next());
    while (at(Tok::Comma)) {
      ++pos_;
      if (!at(Tok::Ident)) fail(peek(), "expected an identifier");
      out.push_back(next());
    }
    return out;
  }

  void end_statement() {
    if (at(Tok::Sep)) {
      ++pos_;
      return;
    }
    if (!at(Tok::End)) fail(peek(), "unexpected '" + peek().text + "'");
  }

  void skip_separators() {
    while (at(Tok::Sep)) ++pos_;
  }

  std::size_t pos_ = 0;

 private:
  std::vector<Token> toks_;
  const std::vector<std::string>* names_;
};

}  // namespace

Presentation parse_presentation(std::string_view text) {
  Presentation p;
  p.source = std::string(text);
  Parser ps(tokenize(text), &p.generators);
  struct PendingRelator {
    GroupWord word;
    Token where;
  };
  std::vector<PendingRelator> rels;
  ps.skip_separators();
  while (!ps.at(Tok::End)) {
    const Token kw = ps.next();
    if (kw.kind != Tok::Ident) ps.fail(kw, "expected 'gens', 'identical' or 'rel'");
    if (kw.text == "gens") {
      for (const auto& t : ps.ident_list()) {
        if (p.generator_index(t.text) >= 0) ps.fail(t, "generator '" + t.text + "' declared twice");
        p.generators.push_back(t.text);
      }
    } else if (kw.text == "identical") {
      for (const auto& t : ps.ident_list()) {
        const int idx = p.generator_index(t.text);
        if (idx < 0) ps.fail(t, "undeclared generator '" + t.text + "'");
        if (!p.is_identical(idx)) {
          p.identical.push_back(idx);
          std::sort(p.identical.begin(), p.identical.end());
        }
      }
    } else if (kw.text == "rel") {
      const Token where = ps.peek();
      for (auto& w : ps.word_list()) rels.push_back({std::move(w), where});
    } else {
      ps.fail(kw, "unknown statement '" + kw.text + "'");
    }
    ps.end_statement();
    ps.skip_separators();
  }
  for (auto& r : rels) {
    // A law variable is not a group element, so it cannot carry a power relation.
    if (r.word.syllables() == 1 && p.is_identical(r.word.letters()[0].gen))
      throw ParseError(r.where.line, r.where.column,
                       "power relator on identical generator '" +
                           p.generators[static_cast<std::size_t>(r.word.letters()[0].gen)] + "'");
    p.relators.push_back(std::move(r.word));
  }
  return p;
}

GroupWord parse_word(std::string_view text, std::span<const std::string> names) {
  std::vector<std::string> copy(names.begin(), names.end());
  Parser ps(tokenize(text), &copy);
  ps.skip_separators();
  GroupWord w = ps.word();
  ps.skip_separators();
  if (!ps.at(Tok::End)) ps.fail(ps.peek(), "trailing input");
  return w;
}

std::vector<GroupWord> parse_word_list(std::string_view text, std::span<const std::string> names) {
  std::vector<std::string> copy(names.begin(), names.end());
  Parser ps(tokenize(text), &copy);
  ps.skip_separators();
  if (ps.at(Tok::End)) return {};
  auto out = ps.word_list();
  ps.skip_separators();
  if (!ps.at(Tok::End)) ps.fail(ps.peek(), "trailing input");
  return out;
}

std::string print_presentation(const Presentation& p) {
  std::ostringstream os;
  os << "gens ";
  for (std::size_t i = 0; i < p.generators.size(); ++i) os << (i ? ", " : "") << p.generators[i];
  os << '\n';
  if (!p.identical.empty()) {
    os << "identical ";
    for (std::size_t i = 0; i < p.identical.size(); ++i)
      os << (i ? ", " : "") << p.generators[static_cast<std::size_t>(p.identical[i])];
    os << '\n';
  }
  for (const auto& r : p.relators) os << "rel " << format_word(r, p.generators) << '\n';
  return os.str();
}

}  // namespace engelkit
