#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "engelkit/integer.hpp"

namespace engelkit {

/// One syllable of a word: generator `gen` raised to a nonzero exponent.
struct Letter {
  int gen = 0;
  Integer exp;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Freely reduced word over free-group generators 0, 1, 2, ...
///
/// Invariants: no syllable has exponent zero and no two adjacent syllables
/// share a generator. Every operation returns a new reduced word.
class GroupWord {
 public:
  GroupWord() = default;
  /// Reduces `letters` (merging, dropping zero exponents, cancelling).
  explicit GroupWord(std::vector<Letter> letters);
  static GroupWord generator(int gen, Integer exp = 1);

  [[nodiscard]] const std::vector<Letter>& letters() const noexcept { return letters_; }
  [[nodiscard]] bool empty() const noexcept { return letters_.empty(); }
  /// Number of syllables.
  [[nodiscard]] std::size_t syllables() const noexcept { return letters_.size(); }
  /// Number of letters, i.e. the sum of |exponent| over syllables.
  [[nodiscard]] Integer length() const;
  /// Largest generator index used, or -1 for the empty word.
  [[nodiscard]] int max_generator() const;

  friend bool operator==(const GroupWord&, const GroupWord&) = default;

 private:
  std::vector<Letter> letters_;
};

GroupWord multiply(const GroupWord& u, const GroupWord& v);
GroupWord invert(const GroupWord& u);
GroupWord power(const GroupWord& u, const Integer& n);
/// t^-1 u t
GroupWord conjugate(const GroupWord& u, const GroupWord& t);
/// u^-1 v^-1 u v
GroupWord commutator(const GroupWord& u, const GroupWord& v);
/// [[...[w1, w2], ...], wk]; throws std::invalid_argument on an empty sequence.
GroupWord left_normed_comm(std::span<const GroupWord> parts);

/// Renders with the given generator names, e.g. "a^-1 b^-1 a b"; "1" for the identity.
std::string format_word(const GroupWord& w, std::span<const std::string> names);

/// Finitely presented group with optional identical (law) generators.
struct Presentation {
  std::vector<std::string> generators;
  std::vector<GroupWord> relators;
  /// Indices into `generators` of the law variables, sorted ascending.
  std::vector<int> identical;
  std::string source;

  [[nodiscard]] bool is_identical(int gen) const;
  /// Index of a generator name, or -1.
  [[nodiscard]] int generator_index(std::string_view name) const;
  /// The non-identical generators, in declaration order.
  [[nodiscard]] std::vector<int> group_generators() const;
  /// True iff `w` mentions at least one identical generator.
  [[nodiscard]] bool mentions_identical(const GroupWord& w) const;

  /// Structural equality; the source text is ignored.
  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.generators == b.generators && a.relators == b.relators && a.identical == b.identical;
  }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses the presentation DSL:
///
///     gens a, b, x        # generator declarations
///     identical x         # law variables
///     rel [a,x,x,x,x], b^2
///
/// Statements are separated by newlines or ';'. Throws ParseError.
Presentation parse_presentation(std::string_view text);

/// Parses a single word over `names` (same grammar as a relator).
GroupWord parse_word(std::string_view text, std::span<const std::string> names);

/// Parses a comma-separated list of words; an all-blank input yields an empty list.
std::vector<GroupWord> parse_word_list(std::string_view text, std::span<const std::string> names);

/// Inverse of parse_presentation up to source text.
std::string print_presentation(const Presentation& p);

}  // namespace engelkit
