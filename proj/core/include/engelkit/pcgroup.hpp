#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "engelkit/integer.hpp"
#include "engelkit/words.hpp"

namespace engelkit {

/// Normal form g1^e1 ... gn^en of a pc-group element.
using ExponentVector = std::vector<Integer>;

/// Word in pc generators; letters need not be in normal order.
using PcWord = std::vector<Letter>;

/// Weighted polycyclic presentation.
///
/// Build with the setters, then call finalize(); afterwards the object is
/// read-only and may be shared between threads. Conjugation relations are
/// stored as tails: g_j^{g_i} = g_j * tail(j, i) with the tail in generators
/// > j. The relations for conjugation by g_i^-1 are derived in finalize().
class PcPresentation {
 public:
  PcPresentation() = default;
  /// n generators, all of weight 1 and infinite order, pairwise commuting.
  explicit PcPresentation(std::size_t n);

  void set_name(int g, std::string name);
  void set_weight(int g, int w);
  /// 0 means infinite order.
  void set_relative_order(int g, Integer m);
  /// g^m = rhs, rhs in generators > g.
  void set_power(int g, PcWord rhs);
  /// g_j^{g_i} = g_j * tail for j > i; tail in generators > j.
  void set_conjugate_tail(int j, int i, PcWord tail);
  void finalize();

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] bool finalized() const noexcept { return finalized_; }
  [[nodiscard]] const std::string& name(int g) const { return names_[g]; }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
  [[nodiscard]] int weight(int g) const { return weights_[g]; }
  [[nodiscard]] const std::vector<int>& weights() const noexcept { return weights_; }
  [[nodiscard]] int max_weight() const;
  [[nodiscard]] const Integer& relative_order(int g) const { return orders_[g]; }
  [[nodiscard]] bool is_finite(int g) const { return !orders_[g].is_zero(); }
  [[nodiscard]] const PcWord& power(int g) const { return powers_[g]; }
  /// Tail of g_j^{g_i} (j > i); empty when the generators commute.
  [[nodiscard]] const PcWord& conjugate_tail(int j, int i) const;
  /// Tail of g_j^{g_i^-1} (j > i).
  [[nodiscard]] const PcWord& conjugate_inverse_tail(int j, int i) const;
  [[nodiscard]] bool commute(int j, int i) const { return conjugate_tail(j, i).empty(); }
  /// Every generator with index >= central_from() is central.
  [[nodiscard]] int central_from() const noexcept { return central_from_; }
  /// Nontrivial conjugation pairs (j, i), as supplied to the builder.
  [[nodiscard]] const std::map<std::pair<int, int>, PcWord>& conjugate_tails() const noexcept {
    return tails_;
  }

 private:
  friend class Collector;

  std::size_t n_ = 0;
  bool finalized_ = false;
  std::vector<std::string> names_;
  std::vector<int> weights_;
  std::vector<Integer> orders_;
  std::vector<PcWord> powers_;
  std::map<std::pair<int, int>, PcWord> tails_;
  int central_from_ = 0;
  // Dense tables over [0, central_from_)^2, index j * central_from_ + i.
  std::vector<PcWord> conj_;
  std::vector<PcWord> conj_inv_;
  // Normal forms of g_j^{g_i}, g_j^{g_i^-1} and of the power relations.
  std::vector<PcWord> conj_nf_;
  std::vector<PcWord> conj_inv_nf_;
  std::vector<PcWord> pow_nf_;
  // Conjugation by g^(+-2^k), filled lazily by the collector; shared by copies.
  struct ConjugationCache;
  std::shared_ptr<ConjugationCache> powers_cache_;
  // For each generator below central_from_, the later generators it does not commute with.
  std::vector<std::vector<int>> noncomm_;
};

ExponentVector pc_identity(const PcPresentation& p);
ExponentVector pc_generator(const PcPresentation& p, int g, const Integer& e = 1);
bool is_identity(const ExponentVector& v);
/// Index of the first nonzero exponent, or -1.
int depth(const ExponentVector& v);

/// Collection from the left: normal form of a word in the pc generators.
ExponentVector collect(const PcPresentation& p, const GroupWord& w);
ExponentVector collect(const PcPresentation& p, const PcWord& w);
ExponentVector pc_multiply(const PcPresentation& p, const ExponentVector& u, const ExponentVector& v);
ExponentVector pc_invert(const PcPresentation& p, const ExponentVector& u);
ExponentVector pc_power(const PcPresentation& p, const ExponentVector& u, const Integer& n);
/// u^-1 v^-1 u v
ExponentVector pc_comm(const PcPresentation& p, const ExponentVector& u, const ExponentVector& v);
/// t^-1 u t
ExponentVector pc_conj(const PcPresentation& p, const ExponentVector& u, const ExponentVector& t);
/// Left-normed commutator of a nonempty sequence.
ExponentVector pc_left_normed_comm(const PcPresentation& p, const std::vector<ExponentVector>& parts);
/// In-place right multiplication by g^e.
void pc_multiply_generator(const PcPresentation& p, ExponentVector& v, int g, const Integer& e);

/// Evaluates a free-group word under an assignment generator -> element.
ExponentVector evaluate_word(const PcPresentation& p, const GroupWord& w,
                             const std::vector<ExponentVector>& values);

GroupWord to_word(const ExponentVector& v);
/// "g1^2 g3" style; "1" for the identity.
std::string format_element(const PcPresentation& p, const ExponentVector& v);

struct Overlap {
  std::string label;
  ExponentVector lhs;
  ExponentVector rhs;
};

/// Collects both sides of every consistency overlap and passes them to
/// `sink` until it returns false. Associativity triples are restricted to
/// weight sum <= weight_bound when weight_bound > 0; triples involving
/// central generators are skipped.
void enumerate_overlaps(const PcPresentation& p, int weight_bound,
                        const std::function<bool(Overlap&&)>& sink);

struct ConsistencyViolation {
  std::string overlap;
  ExponentVector lhs;
  ExponentVector rhs;
};

std::vector<ConsistencyViolation> consistency_check(const PcPresentation& p);

}  // namespace engelkit
