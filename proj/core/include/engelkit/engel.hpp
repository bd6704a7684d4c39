#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "engelkit/expr.hpp"
#include "engelkit/nq.hpp"
#include "engelkit/subgroup.hpp"
#include "engelkit/words.hpp"

namespace engelkit {

/// Class bound of the quotients the identity suites run in.
inline constexpr int suite_class_bound = 8;
/// Class bound for the H, K, N, M table; each of them stabilizes below it.
inline constexpr int table_class_bound = 12;
inline constexpr std::uint64_t default_suite_seed = 0x5eed;

enum class EngelSide { Left, Right };

/// Right: [fixed, var, ..., var]; left: [var, fixed, ..., fixed]; n copies each.
GroupWord engel_relator(EngelSide side, int n, const GroupWord& fixed, const GroupWord& var);

struct CheckResult {
  std::string label;
  std::string expected;
  std::string computed;
  bool pass = false;
};

/// Collects both sides and compares normal forms. `expected` is the normal
/// form of rhs, `computed` that of lhs. Throws ExprError on unknown names.
CheckResult verify_identity(const PcPresentation& p, const Environment& env, std::string_view lhs,
                            std::string_view rhs);

/// Which quotient a suite ran in.
struct QuotientUse {
  std::string presentation;
  std::string source;
  int class_bound = 0;
  int nilpotency_class = 0;
  bool stabilized = false;
};

struct SuiteReport {
  std::string name;
  std::vector<CheckResult> checks;
  std::vector<QuotientUse> quotients;

  [[nodiscard]] bool pass() const;
  [[nodiscard]] int failures() const;
};

/// Named presentations with their nilpotent quotients computed on demand.
///
/// Defaults: G0, H, K, N, M, L, T8, T9 and free2. Quotients are cached per
/// (name, class bound); computing one holds the registry lock, reading a
/// cached one does not block other readers for long.
class QuotientRegistry {
 public:
  QuotientRegistry();

  /// Replaces (or adds) a presentation and drops its cached quotients.
  void set_presentation(const std::string& name, const Presentation& p);
  [[nodiscard]] Presentation presentation(const std::string& name) const;
  [[nodiscard]] std::vector<std::string> names() const;
  std::shared_ptr<const NqResult> quotient(const std::string& name, int max_class);

  static std::string default_text(const std::string& name);

 private:
  mutable std::mutex mutex_;
  std::map<std::string, Presentation> presentations_;
  std::map<std::pair<std::string, int>, std::shared_ptr<const NqResult>> cache_;
};

struct SuiteOptions {
  std::uint64_t seed = default_suite_seed;
};

/// trick, co2, lm2, th3, lm5_th4, co4, lm6_lm7, sims.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name ("all" is not a suite).
SuiteReport run_suite(const std::string& name, QuotientRegistry& registry, const SuiteOptions& options = {});
SuiteReport run_suite(const std::string& name);

/// "all" expands to every suite in fixed order.
std::vector<SuiteReport> run_suites(const std::string& name, QuotientRegistry& registry,
                                    const SuiteOptions& options = {});

/// The co2 item (2) identity and class(<a,a^b>) in nq(free2, 8), each
/// recorded as passing when the Engel consequence does not hold there.
SuiteReport run_negative_controls(QuotientRegistry& registry);

struct TableRow {
  std::string label;
  std::string group;
  /// Empty for the whole group.
  std::string subgroup;
  int expected = 0;
  /// True when the expected value is an upper bound.
  bool at_most = false;
  int computed = 0;
  /// False when the quotient did not stabilize, so `computed` is a lower bound.
  bool exact = false;
  bool pass = false;
};

/// Classes of H, K, N, M and the subgroup checks, from quotients with the given bound.
std::vector<TableRow> reproduce_section4(QuotientRegistry& registry, int max_class = table_class_bound);

/// Class of <gens> inside an nq result; gens are words in the presentation generators.
int subgroup_class(const NqResult& q, const Presentation& p, const std::vector<GroupWord>& gens);

}  // namespace engelkit
