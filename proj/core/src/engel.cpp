#include "engelkit/engel.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace engelkit {

GroupWord engel_relator(EngelSide side, int n, const GroupWord& fixed, const GroupWord& var) {
  if (n < 0) throw std::invalid_argument("engel_relator: negative length");
  std::vector<GroupWord> parts;
  if (side == EngelSide::Right) {
    parts.push_back(fixed);
    parts.insert(parts.end(), n, var);
  } else {
    parts.push_back(var);
    parts.insert(parts.end(), n, fixed);
  }
  return left_normed_comm(parts);
}

CheckResult verify_identity(const PcPresentation& p, const Environment& env, std::string_view lhs,
                            std::string_view rhs) {
  const auto l = evaluate_element_expr(p, lhs, env);
  const auto r = evaluate_element_expr(p, rhs, env);
  return {std::string(lhs) + " = " + std::string(rhs), format_element(p, r), format_element(p, l), l == r};
}

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

int SuiteReport::failures() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; }));
}

// ---------------------------------------------------------------------------
// Registry

namespace {

const std::map<std::string, std::string>& default_texts() {
  static const std::map<std::string, std::string> texts = {
      {"G0", "gens a, b\nrel [b,a,a,a,a], [b,a^-1,a^-1,a^-1,a^-1], [b^-1,a,a,a,a], [b^-1,a^-1,a^-1,a^-1,a^-1]\n"},
      {"H", "gens a, b, x\nidentical x\nrel [a,x,x,x,x]\n"},
      {"K", "gens a, b, x\nidentical x\nrel [a,x,x,x,x], [a^-1,x,x,x,x]\n"},
      {"N", "gens a, b, x\nidentical x\nrel [x,a,a,a,a], [x,b,b,b,b], b^2\n"},
      {"M", "gens a, b, x\nidentical x\nrel [x,a,a,a,a], [x,b,b,b,b], [x,a^-1,a^-1,a^-1,a^-1], b^2\n"},
      {"L", "gens a, b, x\nidentical x\nrel [x,a,a,a,a], [x,a^-1,a^-1,a^-1,a^-1]\n"},
      {"T8", "gens a, b, x\nidentical x\nrel [x,a,a,a,a], [x,a^-1,a^-1,a^-1,a^-1], a^8\n"},
      {"T9", "gens a, b, x\nidentical x\nrel [x,a,a,a,a], [x,a^-1,a^-1,a^-1,a^-1], a^9\n"},
      {"free2", "gens a, b\n"},
  };
  return texts;
}

}  // namespace

std::string QuotientRegistry::default_text(const std::string& name) {
  const auto& texts = default_texts();
  const auto it = texts.find(name);
  if (it == texts.end()) throw std::invalid_argument("no built-in presentation '" + name + "'");
  return it->second;
}

QuotientRegistry::QuotientRegistry() {
  for (const auto& [name, text] : default_texts()) presentations_[name] = parse_presentation(text);
}

void QuotientRegistry::set_presentation(const std::string& name, const Presentation& p) {
  std::lock_guard lock(mutex_);
  presentations_[name] = p;
  std::erase_if(cache_, [&](const auto& entry) { return entry.first.first == name; });
}

Presentation QuotientRegistry::presentation(const std::string& name) const {
  std::lock_guard lock(mutex_);
  const auto it = presentations_.find(name);
  if (it == presentations_.end()) throw std::invalid_argument("unknown presentation '" + name + "'");
  return it->second;
}

std::vector<std::string> QuotientRegistry::names() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& entry : presentations_) out.push_back(entry.first);
  return out;
}

std::shared_ptr<const NqResult> QuotientRegistry::quotient(const std::string& name, int max_class) {
  std::lock_guard lock(mutex_);
  const auto key = std::make_pair(name, max_class);
  if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
  const auto p = presentations_.find(name);
  if (p == presentations_.end()) throw std::invalid_argument("unknown presentation '" + name + "'");
  auto result = std::make_shared<const NqResult>(nilpotent_quotient(p->second, max_class));
  cache_.emplace(key, result);
  return result;
}

int subgroup_class(const NqResult& q, const Presentation& p, const std::vector<GroupWord>& gens) {
  std::vector<ExponentVector> elems;
  for (const auto& w : gens) {
    if (p.mentions_identical(w)) throw std::invalid_argument("subgroup generators may not use identical generators");
    elems.push_back(evaluate_word(q.pcp, w, q.images));
  }
  return nilpotency_class(q.pcp, induced_subgroup(q.pcp, elems));
}

// ---------------------------------------------------------------------------
// Suites

namespace {

template <class... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream out;
  (out << ... << parts);
  return out.str();
}

/// Check list bound to one quotient.
class Checker {
 public:
  Checker(SuiteReport& report, QuotientRegistry& registry, const std::string& group, int max_class,
          std::string prefix = {})
      : report_(report), q_(registry.quotient(group, max_class)), prefix_(std::move(prefix)) {
    const auto p = registry.presentation(group);
    env_ = q_->environment(p);
    report_.quotients.push_back({group, p.source.empty() ? print_presentation(p) : p.source, max_class, q_->nilpotency_class, q_->stabilized});
  }

  [[nodiscard]] const PcPresentation& pcp() const { return q_->pcp; }
  Environment& env() { return env_; }

  ExponentVector eval(std::string_view text) const { return evaluate_element_expr(q_->pcp, text, env_); }
  void bind(const std::string& name, std::string_view text) { env_[name] = eval(text); }

  void equal(const std::string& label, std::string_view lhs, std::string_view rhs) {
    auto r = verify_identity(q_->pcp, env_, lhs, rhs);
    r.label = prefix_ + label + ": " + r.label;
    report_.checks.push_back(std::move(r));
  }

  /// Each line equals the next.
  void chain(const std::string& label, const std::vector<std::string>& lines) {
    for (std::size_t k = 0; k + 1 < lines.size(); ++k)
      equal(cat(label, " step ", k + 1), lines[k], lines[k + 1]);
  }

  void holds(const std::string& label, bool ok, std::string expected, std::string computed) {
    report_.checks.push_back({prefix_ + label, std::move(expected), std::move(computed), ok});
  }

  void class_at_most(const std::string& label, const std::vector<std::string>& gens, int bound) {
    const int c = nilpotency_class(q_->pcp, subgroup(gens));
    holds(label, c <= bound, cat("class <= ", bound), cat("class ", c));
  }

  void same_subgroup(const std::string& label, const InducedSubgroup& lhs, const InducedSubgroup& rhs) {
    holds(label, lhs == rhs, describe(rhs), describe(lhs));
  }

  InducedSubgroup subgroup(const std::vector<std::string>& gens) const {
    return induced_subgroup(q_->pcp, elements(gens));
  }

  InducedSubgroup closure(const std::vector<std::string>& gens) const {
    return normal_closure(q_->pcp, elements(gens));
  }

  /// gamma_k(S), trivial when the series is shorter.
  InducedSubgroup gamma(const InducedSubgroup& s, int k) const {
    const auto series = lower_central_series(q_->pcp, s);
    if (k <= static_cast<int>(series.size())) return series[k - 1];
    return {};
  }

  std::vector<ExponentVector> elements(const std::vector<std::string>& texts) const {
    std::vector<ExponentVector> out;
    for (const auto& t : texts) out.push_back(eval(t));
    return out;
  }

  std::string describe(const InducedSubgroup& s) const {
    if (s.trivial()) return "trivial";
    std::string out = "<";
    for (std::size_t i = 0; i < s.gens.size(); ++i) {
      if (i) out += ", ";
      out += format_element(q_->pcp, s.gens[i]);
    }
    return out + ">";
  }

 private:
  SuiteReport& report_;
  std::shared_ptr<const NqResult> q_;
  Environment env_;
  std::string prefix_;
};

void trick(SuiteReport& rep, QuotientRegistry& reg, const SuiteOptions&) {
  Checker c(rep, reg, "free2", 6);
  c.bind("x", "a^b");
  const auto ncl = [&](std::vector<std::string> g) { return c.closure(g); };
  c.same_subgroup("(a) [b^-1,_4 a] ~ [a^-1,_3 x]", ncl({"[b^-1,a,a,a,a]"}), ncl({"[a^-1,x,x,x]"}));
  c.same_subgroup("(a) [a^-1,_3 x] ~ [x^-1,_2 x^a]", ncl({"[a^-1,x,x,x]"}), ncl({"[x^-1,x^a,x^a]"}));
  c.same_subgroup("(a) [b^-1,_4 a] ~ [[x^-1,x^a],x^a]", ncl({"[b^-1,a,a,a,a]"}), ncl({"[[x^-1,x^a],x^a]"}));
  c.same_subgroup("(b) [b^-1,_4 a^-1] ~ [a,_3 x^-1]", ncl({"[b^-1,a^-1,a^-1,a^-1,a^-1]"}),
                  ncl({"[a,x^-1,x^-1,x^-1]"}));
  c.same_subgroup("(b) [a,_3 x^-1] ~ [x,_2 x^{-a^-1}]", ncl({"[a,x^-1,x^-1,x^-1]"}),
                  ncl({"[x,x^{-a^-1},x^{-a^-1}]"}));
  c.same_subgroup("(b) [x,_2 x^{-a^-1}] ~ [x^a,_2 x^-1]", ncl({"[x,x^{-a^-1},x^{-a^-1}]"}),
                  ncl({"[x^a,x^-1,x^-1]"}));
  c.same_subgroup("(b) both signs of a ~ class(<x^a,x>) <= 2",
                  ncl({"[b^-1,a,a,a,a]", "[b^-1,a^-1,a^-1,a^-1,a^-1]"}), ncl({"[x^a,x,x]", "[x^a,x,x^a]"}));
  c.bind("y", "[a^b,a]");
  c.same_subgroup("(c) all four signs ~ class(<a,y>), class(<a^b,y>) <= 2",
                  ncl({"[b,a,a,a,a]", "[b,a^-1,a^-1,a^-1,a^-1]", "[b^-1,a,a,a,a]", "[b^-1,a^-1,a^-1,a^-1,a^-1]"}),
                  ncl({"[y,a,a]", "[y,a,y]", "[y,a^b,a^b]", "[y,a^b,y]"}));
}

void co2_items(Checker& c) {
  c.bind("x", "[a^b,a]");
  const auto abelian_closure = [&](const std::string& by) {
    const auto s = normal_closure(c.pcp(), c.elements({"x"}), c.elements({by}));
    return is_abelian(c.pcp(), s);
  };
  const bool first = abelian_closure("a");
  const bool second = abelian_closure("a^b");
  c.holds("(1) <x>^<a> and <x>^<a^b> abelian", first && second, "both abelian",
          cat(first ? "abelian" : "nonabelian", ", ", second ? "abelian" : "nonabelian"));
  c.equal("(2)", "x^{a^2}", "x^{2a-1}");
  c.equal("(3)", "x^{a^{2b}}", "x^{2a^b-1}");
  c.equal("(4)", "x^{a^-1}", "x^{-a+2}");
  c.equal("(5)", "x^{a^{-b}}", "x^{-a^b+2}");
  c.equal("(6)", "x^{a^ba}", "x^{-1+aa^b+1}");
  c.equal("(7)", "x^{aa^ba}", "x^{-1+2aa^b-a^b+1}");
  c.equal("(8)", "x^{aa^{2b}}", "x^{a^b+2aa^b-a-a^b}");
}

void co2(SuiteReport& rep, QuotientRegistry& reg, const SuiteOptions&) {
  Checker c(rep, reg, "G0", suite_class_bound);
  co2_items(c);
}

void lm2(SuiteReport& rep, QuotientRegistry& reg, const SuiteOptions&) {
  Checker c(rep, reg, "G0", suite_class_bound);
  c.bind("x", "[a^b,a]");
  c.chain("derivation", {
                            "[a^b,a,a,a^b,a^b]",
                            "[x^{(-1+a)},a^b,a^b]",
                            "x^{(-1+a)(-1+a^b)(-1+a^b)}",
                            "x^{-aa^b+a^b-1+a-aa^b+a^b-a^{2b}+aa^{2b}}",
                            "x^{-aa^b+a^b-1+a-aa^b+1+2aa^b-a-a^b}",
                            "x^{-aa^b-1-aa^b+1+2aa^b}",
                            "x^{-aa^b}[x,x^{aa^b}]x^{aa^b}",
                        });
  c.equal("identity", "[a^b,a,a,a^b,a^b]", "[x,x^{aa^b}]^{x^{aa^b}}");
  const auto s = c.subgroup({"a", "a^b"});
  c.same_subgroup("gamma_5(<a,a^b>) = <x_3>^<a,a^b>", c.gamma(s, 5),
                  normal_closure(c.pcp(), c.elements({"[a^b,a,a,a^b,a^b]"}), c.elements({"a", "a^b"})));
  for (const auto* w : {"[a^b,a,a,a,a]", "[a^b,a,a,a,a^b]", "[a^b,a,a^b,a^b,a^b]", "[[a^b,a,a],[a^b,a]]",
                        "[[a^b,a,a^b],[a^b,a]]"})
    c.equal("basic commutator vanishes", w, "1");
}

void th3_checks(Checker& c) {
  c.bind("x", "[a^b,a]");
  c.equal("inverse", "[a^b,a^-1]", "x^{-a^-1}");
  c.equal("substitution", "[a^{-b},a]", "x^{-a^{-b}}");
  c.same_subgroup("<a,x^{-a^{-b}}> = <a,x^{-a^b+2}>", c.subgroup({"a", "x^{-a^{-b}}"}),
                  c.subgroup({"a", "x^{-a^b+2}"}));
  c.class_at_most("<a,x^{-a^b+2}> class", {"a", "x^{-a^b+2}"}, 2);
  c.chain("(1)", {
                     "[x^{-a^b+2},a,a]",
                     "x^{(-a^b+2)(-1+a)(-1+a)}",
                     "x^{(-2+a^b-a^ba+2a)(-1+a)}",
                     "x^{(-3+a^b-aa^b+1+2a)(-1+a)}",
                     "x^{-2a-1+aa^b-a^b+3-3a+a^ba-aa^ba+a+2a^2}",
                     "x^{aa^b-a^b+2-3a+a^b-aa^b+3a-2}",
                     "x^{-aa^b-2+aa^b+2}x^{-a^b-3a+a^b+3a}",
                     "[x^{aa^b},x^2][x^{a^b},x^{3a}]",
                     "1",
                 });
  c.equal("(1)", "[x^2,x^{aa^b}]", "[x^{a^b},x^{3a}]");
  c.chain("(2)", {
                     "[x^{-a^b+2},a,x^{-a^b+2}]",
                     "[x^{(-a^b+2)(-1+a)},x^{-a^b+2}]",
                     "[x^{(-2+a^b-a^ba+2a)},x^{-a^b+2}]",
                     "[x^{(-3+a^b-aa^b+1+2a)},x^{-a^b+2}]",
                     "[x^{-aa^b+2a},x^{-a^b+2}]",
                     "[x^{-aa^b},x^{-a^b+2}]^{x^{2a}}[x^{2a},x^{-a^b+2}]",
                     "[x^{-aa^b},x^2][x^{2a},x^{-a^b}]",
                     "[x^2,x^{aa^b}][x^{a^b},x^{2a}]",
                     "1",
                 });
  c.equal("(2)", "[x^2,x^{aa^b}]", "[x^{a^b},x^{2a}]^-1");
  c.chain("(3)", {
                     "[x^{a^b-2},a,a]",
                     "x^{(a^b-2)(-1+a)(-1+a)}",
                     "x^{(1-a^b+aa^b+1-2a)(-1+a)}",
                     "x^{2a-1-aa^b+a^b-1+a-a^ba+aa^ba+a-2a^2}",
                     "x^{2a-1-aa^b+a^b-1+a-1-aa^b+1-1+2aa^b-a^b+1+a-4a+2}",
                     "x^{-aa^b+a^b-2+a+aa^b-a^b+2-a}",
                     "x^{-aa^b-2+aa^b+2}x^{-a^b-a+a^b+a}",
                     "[x^{aa^b},x^2][x^{a^b},x^a]",
                     "1",
                 });
  c.equal("(3)", "[x^2,x^{aa^b}]", "[x^{a^b},x^a]");
  c.bind("w", "[x^{a^b},x^a]");
  c.equal("w central in <x^a>", "w^{x^a}", "w");
  c.equal("from (1),(3)", "w^3", "[x^{a^b},x^{3a}]");
  c.equal("(*)", "w^2", "1");
  c.equal("from (2),(3)", "w^{-2}", "[x^{a^b},x^{2a}]^-1");
  c.equal("(**)", "w^3", "1");
  c.equal("conclusion", "w", "1");
  c.class_at_most("<a,a^b> class", {"a", "a^b"}, 4);
}

void th3(SuiteReport& rep, QuotientRegistry& reg, const SuiteOptions&) {
  {
    Checker c(rep, reg, "G0", suite_class_bound, "G0 ");
    th3_checks(c);
  }
  // In K the right Engel element is a, which plays b here.
  Checker c(rep, reg, "K", suite_class_bound, "K ");
  const auto a = c.env().at("a");
  c.env()["a"] = c.env().at("b");
  c.env()["b"] = a;
  th3_checks(c);
}

void lm5_th4(SuiteReport& rep, QuotientRegistry& reg, const SuiteOptions&) {
  Checker c(rep, reg, "L", suite_class_bound);
  c.bind("x", "[a^b,a]");
  c.equal("<a,[a^bx,a]> class 2", "[a^{bx},a^-1,a,a]", "1");
  c.chain("[a^bx,a]", {
                          "[a^{bx},a]",
                          "[x^-1a^bx,a]",
                          "[x^-1a^b,a]^x[x,a]",
                          "[x^-1,a]^{a^bx}[a^b,a]x^-1x^a",
                          "(xx^{-a})^{a^bx}x^a",
                          "x^{-1-aa^b+a^b+1+a}",
                      });
  c.bind("y", "[a^{bx},a^-1]");
  c.chain("y", {
                   "y",
                   "[a^{bx},a]^{-a^-1}",
                   "x^{-1-a^-1-a^ba^-1+aa^ba^-1+a^-1}",
                   "x^{-1-a^-1+(a^-1-a^-1a^b-a^-1)+(a^-1+a^b-a^-1)+a^-1}",
                   "x^{-1+aa^b-a^b}",
               });
  c.equal("y^-a", "y^{-a}", "[a^{bx},a]");
  c.chain("y^a^2", {"y^{a^2}", "x^{-a^2-a-a^ba+aa^ba+a}", "x^{-3a+aa^b-a^b+1+a}"});
  c.chain("product", {
                         "1",
                         "y^{-a}yy^{-a}y^{a^2}",
                         "x^{-1-aa^b+a^b+1+a}x^{-1+aa^b-a^b}x^{-1-aa^b+a^b+1+a}x^{-3a+aa^b-a^b+1+a}",
                         "x^{-1+a^b+a-a^b}x^{-1-aa^b+a^b+1-2a+aa^b-a^b+1+a}",
                         "x^{-1+a^b-1-aa^b+1-a+aa^b-a^b+1+a}",
                         "x^{-1+a^b}x^{-1-aa^b+1+aa^b}x^{-a-a^b+a+a^b}x^{-a^b+1}",
                         "x^{-1+a^b}[x,x^{aa^b}][x^a,x^{a^b}]x^{-a^b+1}",
                     });
  c.equal("conjugated", "[x,x^{aa^b}][x^a,x^{a^b}]", "1");

  c.bind("u", "[x^{a^b},x^a]");
  c.equal("u", "u", "[x,x^{aa^b}]");
  c.chain("x_3", {"[a^b,a,a,a^b,a^b]", "u^{x^{aa^b}}", "u"});
  const auto s = c.subgroup({"a", "a^b"});
  c.same_subgroup("gamma_5(S) = <u>^S", c.gamma(s, 5),
                  normal_closure(c.pcp(), c.elements({"u"}), c.elements({"a", "a^b"})));
  c.chain("u^a", {"u^a", "[x^a,x^{aa^ba}]", "[x^a,x^{-1+2aa^b-a^b+1}]", "[x^a,x^{-a^b}]", "u"});
  c.chain("u^a^b", {"u^{a^b}", "[x^{a^{2b}},x^{aa^b}]", "[x^{2a^b-1},x^{aa^b}]", "[x^-1,x^{aa^b}]", "u^-1"});
  c.same_subgroup("gamma_5(S) = <u>", c.gamma(s, 5), c.subgroup({"u"}));
  c.same_subgroup("gamma_6(S) = <u^2>", c.gamma(s, 6), c.subgroup({"u^2"}));
  c.chain("[u,a^b,a^b]", {"1", "[u,a^b,a^b]", "[u^{-2},a^b]"});
  c.same_subgroup("gamma_7(S) = 1", c.gamma(s, 7), {});
  c.chain("u^-1", {"[[a^b,a,a,a^b],[a^b,a]]", "[x^{-a+1-a^b+aa^b},x]", "[x^{aa^b},x]", "u^-1"});
  c.holds("u^-1 in gamma_6(S)", contains(c.pcp(), c.gamma(s, 6), c.eval("u^-1")), "member",
          contains(c.pcp(), c.gamma(s, 6), c.eval("u^-1")) ? "member" : "not a member");
  c.equal("conclusion", "u", "1");
  c.class_at_most("S = <a,a^b> class", {"a", "a^b"}, 4);
  const bool ab = is_abelian(c.pcp(), derived_subgroup(c.pcp(), s));
  c.holds("S' abelian", ab, "abelian", ab ? "abelian" : "nonabelian");
}

ExponentVector random_element(const PcPresentation& p, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  ExponentVector v = pc_identity(p);
  for (std::size_t g = 0; g < p.size(); ++g) pc_multiply_generator(p, v, static_cast<int>(g), d(rng));
  return v;
}

void co4(SuiteReport& rep, QuotientRegistry& reg, const SuiteOptions& options) {
  Checker c(rep, reg, "L", suite_class_bound);
  std::mt19937_64 rng(options.seed);
  for (int i : {2, 3}) {
    c.bind("c", cat("a^", i));
    int bad = 0;
    std::string witness = "none";
    for (int k = 0; k < 100; ++k) {
      c.env()["w"] = random_element(c.pcp(), rng);
      const auto v = c.eval("[w,c,c,c,c]");
      if (!is_identity(v) && bad++ == 0) witness = format_element(c.pcp(), c.env()["w"]);
    }
    c.holds(cat("[w,a^", i, ",a^", i, ",a^", i, ",a^", i, "] = 1 for 100 random w"), bad == 0, "0 failures",
            cat(bad, " failures, first w = ", witness));
  }
}

void over_instances(Checker& c, const std::string& label, const std::string& expr) {
  const auto inst = instance_set(c.pcp(), suite_class_bound + 1);
  int bad = 0;
  for (const auto& g : inst) {
    c.env()["g"] = g;
    if (!is_identity(c.eval(expr))) ++bad;
  }
  c.holds(cat(label, " = 1 over I (", inst.size(), " instances)"), bad == 0, "0 failures",
          cat(bad, " failures"));
}

void lm6_lm7(SuiteReport& rep, QuotientRegistry& reg, const SuiteOptions&) {
  {
    Checker c(rep, reg, "T8", suite_class_bound, "T8 ");
    c.bind("x", "[a^b,a]");
    for (int r : {1, 2})
      for (int m : {1, 2})
        c.equal(cat("3.5(1) r=", r, " m=", m), cat("[a^b,a^", r, "]^{a^", 2 * m, "+1}"),
                cat("[a^b,a^", r, "]^{2a^", m, "}"));
    for (int n : {1, 2})
      for (int r : {1, 2})
        for (int m : {1, 2})
          c.equal(cat("3.5(2) n=", n, " r=", r, " m=", m),
                  cat("[a^{", n, "b},a^", r, "]^{a^{", 2 * m, "b}+1}"),
                  cat("[a^{", n, "b},a^", r, "]^{2a^{", m, "b}}"));
    c.equal("3.5(3) s=8", "[a^b,a,a^8]", "[a^b,a,a]^8");
    for (int n : {1, 2}) {
      c.equal(cat("3.5(4) n=", n), cat("x^{a^", n, "}"), cat("x^{", n, "a-", n - 1, "}"));
      c.equal(cat("3.5(5) n=", n), cat("x^{a^{", n, "b}}"),
              cat("x^{", n, "a^b-", n - 1, "}"));
    }
    c.chain("a^8 = 1", {"1", "[a^b,a^8]", "[a^b,a^4]^{1+a^4}", "[a^b,a^4]^2"});
    c.equal("[a^b,a^4]^2", "[a^b,a^4]^2", "1");
    c.equal("[b,a^4,a^4]", "[b,a^4,a^4]", "[a^{4b},a^4]^{-a^{4(-b+1)}}");
    c.chain("[a^4b,a^4]", {
                              "[a^{4b},a^4]",
                              "[a^{2b},a^4]^{a^{2b}+1}",
                              "[a^{2b},a^4]^{2a^b}",
                              "[a^b,a^4]^{(a^b+1)(2a^b)}",
                              "1",
                          });
    over_instances(c, "[g,a^4,a^4]", "[g,a^4,a^4]");
  }
  Checker c(rep, reg, "T9", suite_class_bound, "T9 ");
  c.bind("x", "[a^b,a]");
  c.chain("a^9 = 1", {
                         "1",
                         "[a^b,a^9]",
                         "x^{1+a+a^2+a^3+a^4+a^5+a^6+a^7+a^8}",
                         "x^{1+a+2a-1+3a-2+4a-3+5a-4+6a-5+7a-6+8a-7}",
                         "x^{36a-36+9}",
                         "x^{(9a-9)4}x^9",
                     });
  c.chain("3.5(3) s=9", {"1", "[a^b,a,a^9]", "[a^b,a,a]^9", "x^{9a-9}"});
  c.equal("[a^b,a]^9", "x^9", "1");
  c.equal("[a^b,a,a]^9", "[a^b,a,a]^9", "1");
  c.equal("[b,a^3,a^3]", "[b,a^3,a^3]", "[a^{3b},a^3]^{-a^{-3b+3}}");
  c.chain("[a^3b,a^3]", {
                            "[a^{3b},a^3]",
                            "[a^b,a^3]^{1+a^b+a^{2b}}",
                            "[a^b,a^3]^{1+a^b+2a^b-1}",
                            "x^{(1+a+2a-1)(1+a^b+2a^b-1)}",
                            "x^{(3a-3+3)(3a^b-3+3)}",
                            "x^{9(a)(a^b)}",
                            "1",
                        });
  over_instances(c, "[g,a^3,a^3]", "[g,a^3,a^3]");
}

void sims(SuiteReport& rep, QuotientRegistry& reg, const SuiteOptions&) {
  // b stands for a^b.
  Checker c(rep, reg, "free2", 5);
  const auto n5 = c.closure({"[b,a,a,a,a]", "[b,a,a,a,b]", "[b,a,a,b,b]", "[b,a,b,b,b]", "[[b,a,a],[b,a]]",
                             "[[b,a,b],[b,a]]"});
  c.same_subgroup("<x_1,...,x_6>^F = gamma_5(F)", n5, c.gamma(whole_group(c.pcp()), 5));
}

using SuiteFn = void (*)(SuiteReport&, QuotientRegistry&, const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"trick", trick}, {"co2", co2}, {"lm2", lm2},         {"th3", th3},
      {"lm5_th4", lm5_th4}, {"co4", co4}, {"lm6_lm7", lm6_lm7}, {"sims", sims},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : suite_table()) out.push_back(entry.first);
    return out;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, QuotientRegistry& registry, const SuiteOptions& options) {
  for (const auto& [n, fn] : suite_table()) {
    if (n != name) continue;
    SuiteReport rep;
    rep.name = name;
    fn(rep, registry, options);
    return rep;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

SuiteReport run_suite(const std::string& name) {
  QuotientRegistry registry;
  return run_suite(name, registry);
}

std::vector<SuiteReport> run_suites(const std::string& name, QuotientRegistry& registry,
                                    const SuiteOptions& options) {
  if (name != "all") return {run_suite(name, registry, options)};
  std::vector<SuiteReport> out;
  for (const auto& n : suite_names()) out.push_back(run_suite(n, registry, options));
  return out;
}

SuiteReport run_negative_controls(QuotientRegistry& registry) {
  SuiteReport rep;
  rep.name = "controls";
  Checker c(rep, registry, "free2", suite_class_bound);
  c.bind("x", "[a^b,a]");
  auto item2 = verify_identity(c.pcp(), c.env(), "x^{a^2}", "x^{2a-1}");
  c.holds("co2 (2) fails without Engel relators: " + item2.label, !item2.pass, "inequality",
          item2.pass ? "equal" : "differs");
  const int k = nilpotency_class(c.pcp(), c.subgroup({"a", "a^b"}));
  c.holds("class(<a,a^b>) > 4 without Engel relators", k > 4, "class > 4", cat("class ", k));
  return rep;
}

std::vector<TableRow> reproduce_section4(QuotientRegistry& registry, int max_class) {
  std::vector<TableRow> rows;
  const auto whole = [&](const std::string& label, const std::string& group, int expected) {
    const auto q = registry.quotient(group, max_class);
    TableRow row{label, group, {}, expected, false, q->nilpotency_class, q->stabilized, false};
    row.pass = row.exact && row.computed == expected;
    rows.push_back(row);
  };
  const auto sub = [&](const std::string& label, const std::string& group, const std::string& gens, int expected,
                       bool at_most) {
    const auto q = registry.quotient(group, max_class);
    const auto p = registry.presentation(group);
    TableRow row{label, group, gens, expected, at_most, subgroup_class(*q, p, parse_word_list(gens, p.generators)),
                 q->stabilized, false};
    row.pass = row.exact && (at_most ? row.computed <= expected : row.computed == expected);
    rows.push_back(row);
  };
  whole("H", "H", 8);
  whole("K", "K", 7);
  sub("<b,b^a> in K", "K", "b, b^a", 4, true);
  whole("N", "N", 10);
  sub("S = <a,a^b> in N", "N", "a, a^b", 6, false);
  whole("M", "M", 7);
  sub("<a,a^b> in M", "M", "a, a^b", 4, true);
  return rows;
}

}  // namespace engelkit
