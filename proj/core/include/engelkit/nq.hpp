#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "engelkit/expr.hpp"
#include "engelkit/pcgroup.hpp"
#include "engelkit/words.hpp"
#include "engelkit/zlinalg.hpp"

namespace engelkit {

/// How a pc generator (or a tail) came about.
///   Image:     first = presentation generator whose image it completes
///   Conjugate: relation g_first^{g_second}, first > second
///   Power:     power relation of g_first
enum class DefinitionKind { Image, Conjugate, Power };

struct Definition {
  DefinitionKind kind = DefinitionKind::Image;
  int first = 0;
  int second = 0;

  friend bool operator==(const Definition&, const Definition&) = default;
};

/// Abelian invariants of gamma_w / gamma_{w+1}.
struct LayerInvariants {
  int weight = 0;
  int rank = 0;                   // torsion-free rank
  std::vector<Integer> divisors;  // elementary divisors > 1, divisibility order

  friend bool operator==(const LayerInvariants&, const LayerInvariants&) = default;
};

struct NqOptions {
  int max_class = 12;
  std::uint64_t seed = 0x6e71;
  /// Random law instances checked in each new quotient.
  int soundness_samples = 24;
  /// Re-eliminations allowed when the random check finds a violated law.
  int soundness_rounds = 6;
};

/// A consistent quotient of class `nilpotency_class` with its epimorphism.
struct NqState {
  PcPresentation pcp;
  /// Indexed by presentation generator; empty vectors for identical generators.
  std::vector<ExponentVector> images;
  /// One entry per pc generator.
  std::vector<Definition> definitions;
  int nilpotency_class = 0;
};

struct NqResult {
  PcPresentation pcp;
  std::vector<ExponentVector> images;
  std::vector<Definition> definitions;
  int nilpotency_class = 0;
  bool stabilized = false;
  std::vector<LayerInvariants> layers;
  /// Number of extra law instances the soundness check had to add.
  int escalations = 0;

  /// Image of a non-identical presentation generator by name.
  [[nodiscard]] const ExponentVector& image(const Presentation& p, std::string_view name) const;
  /// Names of the non-identical presentation generators bound to their images.
  [[nodiscard]] Environment environment(const Presentation& p) const;
};

NqResult nilpotent_quotient(const Presentation& p, int max_class = 12);
NqResult nilpotent_quotient(const Presentation& p, const NqOptions& options);

/// Q_c together with one free central tail per non-defining relation.
struct Extension {
  PcPresentation cover;
  /// Source relation of each tail, in column order.
  std::vector<Definition> tails;
  /// Presentation generator images in the cover.
  std::vector<ExponentVector> images;
  NqState base;
};

Extension build_extension(const NqState& current, const Presentation& p);

/// Eliminates tails modulo the row space of `tail_matrix` (columns = tails).
/// Unit pivots die, other pivots become torsion, free columns survive.
NqState enforce_relations(const IntMatrix& tail_matrix, const Extension& ext);
NqState enforce_relations(const HermiteAccumulator& relations, const Extension& ext);

struct ExtendResult {
  NqState next;
  bool grew = false;
  int escalations = 0;
};

/// One class step. When nothing survives, `next` equals `current`.
ExtendResult extend_step(const NqState& current, const Presentation& p, const NqOptions& options = {});

/// { normal-form products g_i1 ... g_ik with i1 < ... < ik and weight sum <= budget }
/// together with all inverses g_i^-1.
std::vector<ExponentVector> instance_set(const PcPresentation& pcp, int budget);

/// Substitutes every identical generator of `r` independently by each element
/// of instance_set(pcp, budget) and every other generator by its image; the
/// result is written over the pc generators of `pcp`.
std::vector<GroupWord> instantiate_identicals(const GroupWord& r, const Presentation& p, const PcPresentation& pcp,
                                              const std::vector<ExponentVector>& images, int budget);

/// Products g^beta, beta >= 0, of weighted degree sum beta_i wt_i <= degree.
/// These span every polynomial law deviation of that degree (binomial basis).
std::vector<ExponentVector> monomial_instances(const PcPresentation& pcp, int degree);

/// Minimal number of non-identical letters in a nonconstant monomial of the
/// Magnus expansion of `law`, truncated at total degree `truncation`.
/// Returns truncation + 1 when the expansion is trivial up to that degree.
int law_constant_degree(const GroupWord& law, const Presentation& p, int truncation);

/// Minimal length of a nonconstant monomial in the same truncated expansion.
int law_min_length(const GroupWord& law, const Presentation& p, int truncation);

std::vector<LayerInvariants> layer_invariants(const PcPresentation& pcp);

}  // namespace engelkit
