#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "engelkit/nq.hpp"
#include "engelkit/pcgroup.hpp"
#include "engelkit/words.hpp"
#include "engelkit/zlinalg.hpp"

namespace engelkit::support {

using Rng = std::mt19937_64;

/// Reads presentations/<name>.pres from the source tree.
Presentation load_presentation(const std::string& name);

GroupWord random_word(Rng& rng, int ngens, int max_length);
ExponentVector random_element(Rng& rng, const PcPresentation& p, int max_length);

/// Cases where u(vw) != (uv)w or u u^-1 != 1 for random words of length <= 8.
int associativity_failures(const PcPresentation& p, int cases, Rng& rng);

/// Random substitutions of words of length <= max_length for the identical
/// generators under which some law relator does not vanish.
int law_failures(const NqResult& q, const Presentation& p, int cases, int max_length, Rng& rng);

/// Elementary divisors d_k = g_k / g_{k-1}, g_k = gcd of k x k minors
/// (cofactor expansion, independent of the library). Only nonzero ones.
std::vector<Integer> minor_gcd_divisors(const IntMatrix& m);
IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int bound);

/// (1/k) sum_{d | k} mu(d) 2^{k/d}.
int witt_rank2(int k);

/// The nilpotent groups of order <= 16, one per isomorphism type, as nq
/// outputs labelled by name.
struct SmallGroup {
  std::string name;
  PcPresentation pcp;
};
std::vector<SmallGroup> small_groups();

/// Over all subgroups generated by at most `max_gens` elements, the number of
/// (subgroup, element) pairs where sift disagrees with enumeration.
int sift_mismatches(const PcPresentation& p, int max_gens);

/// All elements of a finite pc group.
std::vector<ExponentVector> enumerate_elements(const PcPresentation& p);

}  // namespace engelkit::support
