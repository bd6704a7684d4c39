#pragma once

#include <optional>
#include <vector>

#include "engelkit/pcgroup.hpp"

namespace engelkit {

/// Canonical induced generating sequence of a subgroup of a pc group.
///
/// Entries are ordered by strictly increasing depth; each leading exponent
/// is positive and, at a finite relative order m, divides m. Exponents of an
/// entry at the other pivots are reduced into [0, leading exponent there),
/// so two subgroups are equal iff their sequences are equal.
struct InducedSubgroup {
  std::vector<ExponentVector> gens;
  std::vector<int> pivots;

  [[nodiscard]] bool trivial() const noexcept { return gens.empty(); }
  friend bool operator==(const InducedSubgroup&, const InducedSubgroup&) = default;
};

struct SiftResult {
  ExponentVector residue;
  bool member = false;
};

SiftResult sift(const PcPresentation& p, const InducedSubgroup& s, const ExponentVector& x);
bool contains(const PcPresentation& p, const InducedSubgroup& s, const ExponentVector& x);
/// True iff every generator of `t` lies in `s`.
bool contains(const PcPresentation& p, const InducedSubgroup& s, const InducedSubgroup& t);

InducedSubgroup induced_subgroup(const PcPresentation& p, const std::vector<ExponentVector>& gens);
InducedSubgroup whole_group(const PcPresentation& p);

/// Smallest subgroup containing `gens` and normalised by `conjugators` and
/// their inverses; by default the conjugators are all pc generators.
InducedSubgroup normal_closure(const PcPresentation& p, const std::vector<ExponentVector>& gens,
                               const std::optional<std::vector<ExponentVector>>& conjugators = std::nullopt);

/// Nontrivial terms gamma_1 = S, gamma_2, ... of the lower central series of S.
std::vector<InducedSubgroup> lower_central_series(const PcPresentation& p, const InducedSubgroup& s);
int nilpotency_class(const PcPresentation& p, const InducedSubgroup& s);
InducedSubgroup derived_subgroup(const PcPresentation& p, const InducedSubgroup& s);
bool is_abelian(const PcPresentation& p, const InducedSubgroup& s);
/// Subgroup order, or nullopt when infinite.
std::optional<Integer> subgroup_order(const PcPresentation& p, const InducedSubgroup& s);

}  // namespace engelkit
