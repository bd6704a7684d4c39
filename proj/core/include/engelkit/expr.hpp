#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "engelkit/pcgroup.hpp"

namespace engelkit {

/// Named elements available to expressions.
using Environment = std::map<std::string, ExponentVector>;

class ExprError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ElementNode;
using ElementExpr = std::shared_ptr<const ElementNode>;
struct ExponentExpr;

/// One factor of an exponent monomial: an integer (power), a group element
/// (conjugation) or a parenthesised exponent expression (applied to the
/// current value).
using ExponentFactor = std::variant<Integer, ElementExpr, std::shared_ptr<const ExponentExpr>>;

struct ExponentMonomial {
  bool negative = false;
  std::vector<ExponentFactor> factors;
};

/// Exponent notation: u^{m1 + m2 - m3} is u^{m1} u^{m2} (u^{m3})^-1, each
/// monomial applied to u strictly left to right. Never distributes.
struct ExponentExpr {
  std::vector<ExponentMonomial> terms;
};

struct ElementNode {
  enum class Kind { Identity, Name, Product, Commutator, Power, Conjugate, Exponent };
  Kind kind = Kind::Identity;
  std::string name;
  std::vector<ElementExpr> parts;  // Product / Commutator operands, or {base, conjugator}
  Integer exponent;                // Power
  std::shared_ptr<const ExponentExpr> exp;  // Exponent
};

/// Element grammar:
///   elem    := factor ('*'? factor)*
///   factor  := primary ('^' sup)*
///   primary := name | '1' | '(' elem ')' | '[' elem (',' elem)+ ']'
///   sup     := '-'? integer | '-'? primary | '{' expexpr '}'
/// Names are one letter optionally followed by digits, so "aa^b" is a * a^b.
ElementExpr parse_element_expr(std::string_view text);

/// Exponent grammar: expexpr := (('+'|'-')? monomial)*, monomial := mfactor+,
/// mfactor := integer | '(' expexpr ')' | factor. An empty text is the empty sum.
ExponentExpr parse_exponent_expr(std::string_view text);

ExponentVector evaluate_element_expr(const PcPresentation& p, const ElementExpr& e, const Environment& env);
ExponentVector evaluate_element_expr(const PcPresentation& p, std::string_view text, const Environment& env);
ExponentVector evaluate_exponent_expr(const PcPresentation& p, const ExponentVector& base, const ExponentExpr& e,
                                      const Environment& env);

}  // namespace engelkit
