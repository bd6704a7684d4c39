#include "engelkit/subgroup.hpp"

#include <deque>
#include <map>

namespace engelkit {

namespace {

class SubgroupBuilder {
 public:
  explicit SubgroupBuilder(const PcPresentation& p) : p_(p) {}

  /// Adds x and closes up; returns true iff x was not already a member.
  bool add(const ExponentVector& x) {
    if (sift_residue_trivial(x)) return false;
    queue_.push_back(x);
    while (!queue_.empty()) {
      ExponentVector y = std::move(queue_.front());
      queue_.pop_front();
      insert(std::move(y));
    }
    return true;
  }

  InducedSubgroup result() const {
    InducedSubgroup s;
    std::vector<std::pair<int, ExponentVector>> entries(seq_.begin(), seq_.end());
    // Reduce bottom-up against later pivots; later entries are already canonical.
    for (std::size_t e = entries.size(); e-- > 0;) {
      ExponentVector& x = entries[e].second;
      for (std::size_t f = e + 1; f < entries.size(); ++f) {
        const int d = entries[f].first;
        const ExponentVector& y = entries[f].second;
        const Integer q = floor_div(x[d], y[d]);
        if (!q.is_zero()) x = pc_multiply(p_, x, pc_power(p_, y, -q));
      }
    }
    for (auto& [d, x] : entries) {
      s.pivots.push_back(d);
      s.gens.push_back(std::move(x));
    }
    return s;
  }

 private:
  bool sift_residue_trivial(ExponentVector x) const {
    while (true) {
      const int d = depth(x);
      if (d < 0) return true;
      auto it = seq_.find(d);
      if (it == seq_.end() || !divides(it->second[d], x[d])) return false;
      x = pc_multiply(p_, x, pc_power(p_, it->second, -div_exact(x[d], it->second[d])));
    }
  }

  void enqueue_closure(int d) {
    const ExponentVector& x = seq_.at(d);
    if (p_.is_finite(d)) queue_.push_back(pc_power(p_, x, div_exact(p_.relative_order(d), x[d])));
    for (const auto& [e, y] : seq_)
      if (e != d) queue_.push_back(pc_comm(p_, x, y));
  }

  ExponentVector canonical_leading(ExponentVector x, int d) const {
    if (p_.is_finite(d)) {
      const ExtendedGcd eg = xgcd(x[d], p_.relative_order(d));
      if (eg.g != x[d]) x = pc_power(p_, x, eg.s);
    } else if (x[d].sign() < 0) {
      x = pc_invert(p_, x);
    }
    return x;
  }

  void insert(ExponentVector x) {
    while (true) {
      const int d = depth(x);
      if (d < 0) return;
      auto it = seq_.find(d);
      if (it == seq_.end()) {
        seq_.emplace(d, canonical_leading(std::move(x), d));
        enqueue_closure(d);
        return;
      }
      const Integer& a = it->second[d];
      const Integer& b = x[d];
      if (divides(a, b)) {
        x = pc_multiply(p_, x, pc_power(p_, it->second, -div_exact(b, a)));
        continue;
      }
      const ExtendedGcd eg = xgcd(a, b);
      ExponentVector z = pc_multiply(p_, pc_power(p_, it->second, eg.s), pc_power(p_, x, eg.t));
      queue_.push_back(std::move(it->second));
      queue_.push_back(std::move(x));
      it->second = canonical_leading(std::move(z), d);
      enqueue_closure(d);
      return;
    }
  }

  const PcPresentation& p_;
  std::map<int, ExponentVector> seq_;
  std::deque<ExponentVector> queue_;
};

std::vector<ExponentVector> with_inverses(const PcPresentation& p, const std::vector<ExponentVector>& xs) {
  std::vector<ExponentVector> out;
  for (const auto& x : xs) {
    if (is_identity(x)) continue;
    out.push_back(x);
    out.push_back(pc_invert(p, x));
  }
  return out;
}

}  // namespace

SiftResult sift(const PcPresentation& p, const InducedSubgroup& s, const ExponentVector& x) {
  SiftResult r{x, false};
  std::size_t k = 0;
  while (true) {
    const int d = depth(r.residue);
    if (d < 0) {
      r.member = true;
      return r;
    }
    while (k < s.pivots.size() && s.pivots[k] < d) ++k;
    if (k == s.pivots.size() || s.pivots[k] != d) return r;
    const ExponentVector& y = s.gens[k];
    if (!divides(y[d], r.residue[d])) return r;
    r.residue = pc_multiply(p, r.residue, pc_power(p, y, -div_exact(r.residue[d], y[d])));
  }
}

bool contains(const PcPresentation& p, const InducedSubgroup& s, const ExponentVector& x) {
  return sift(p, s, x).member;
}

bool contains(const PcPresentation& p, const InducedSubgroup& s, const InducedSubgroup& t) {
  for (const auto& x : t.gens)
    if (!contains(p, s, x)) return false;
  return true;
}

InducedSubgroup induced_subgroup(const PcPresentation& p, const std::vector<ExponentVector>& gens) {
  SubgroupBuilder b(p);
  for (const auto& x : gens) b.add(x);
  return b.result();
}

InducedSubgroup whole_group(const PcPresentation& p) {
  std::vector<ExponentVector> gens;
  for (std::size_t g = 0; g < p.size(); ++g) gens.push_back(pc_generator(p, static_cast<int>(g)));
  return induced_subgroup(p, gens);
}

InducedSubgroup normal_closure(const PcPresentation& p, const std::vector<ExponentVector>& gens,
                               const std::optional<std::vector<ExponentVector>>& conjugators) {
  std::vector<ExponentVector> conj;
  if (conjugators) {
    conj = with_inverses(p, *conjugators);
  } else {
    std::vector<ExponentVector> all;
    for (std::size_t g = 0; g < p.size(); ++g) all.push_back(pc_generator(p, static_cast<int>(g)));
    conj = with_inverses(p, all);
  }
  SubgroupBuilder b(p);
  for (const auto& x : gens) b.add(x);
  while (true) {
    const InducedSubgroup cur = b.result();
    bool grew = false;
    for (const auto& x : cur.gens)
      for (const auto& t : conj) grew = b.add(pc_conj(p, x, t)) || grew;
    if (!grew) return cur;
  }
}

std::vector<InducedSubgroup> lower_central_series(const PcPresentation& p, const InducedSubgroup& s) {
  std::vector<InducedSubgroup> series;
  InducedSubgroup cur = s;
  while (!cur.trivial()) {
    series.push_back(cur);
    std::vector<ExponentVector> comms;
    for (const auto& x : cur.gens)
      for (const auto& y : s.gens) comms.push_back(pc_comm(p, x, y));
    InducedSubgroup next = normal_closure(p, comms, s.gens);
    if (next == cur) throw std::runtime_error("lower central series does not terminate");
    cur = std::move(next);
  }
  return series;
}

int nilpotency_class(const PcPresentation& p, const InducedSubgroup& s) {
  return static_cast<int>(lower_central_series(p, s).size());
}

InducedSubgroup derived_subgroup(const PcPresentation& p, const InducedSubgroup& s) {
  std::vector<ExponentVector> comms;
  for (std::size_t i = 0; i < s.gens.size(); ++i)
    for (std::size_t j = i + 1; j < s.gens.size(); ++j) comms.push_back(pc_comm(p, s.gens[i], s.gens[j]));
  return normal_closure(p, comms, s.gens);
}

bool is_abelian(const PcPresentation& p, const InducedSubgroup& s) {
  for (std::size_t i = 0; i < s.gens.size(); ++i)
    for (std::size_t j = i + 1; j < s.gens.size(); ++j)
      if (!is_identity(pc_comm(p, s.gens[i], s.gens[j]))) return false;
  return true;
}

std::optional<Integer> subgroup_order(const PcPresentation& p, const InducedSubgroup& s) {
  Integer order(1);
  for (std::size_t k = 0; k < s.gens.size(); ++k) {
    const int d = s.pivots[k];
    if (!p.is_finite(d)) return std::nullopt;
    order *= div_exact(p.relative_order(d), s.gens[k][d]);
  }
  return order;
}

}  // namespace engelkit
