#include "engelkit/nq.hpp"

#include <algorithm>
#include <climits>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace engelkit {

namespace {

ExponentVector padded(const ExponentVector& v, std::size_t n) {
  ExponentVector out(n);
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

SparseRow tail_row(const ExponentVector& v, int base) {
  SparseRow row;
  for (std::size_t g = base; g < v.size(); ++g)
    if (!v[g].is_zero()) row.emplace_back(static_cast<std::uint32_t>(g - base), v[g]);
  return row;
}

bool prefix_trivial(const ExponentVector& v, int base) {
  for (int g = 0; g < base; ++g)
    if (!v[g].is_zero()) return false;
  return true;
}

std::vector<int> identical_vars(const GroupWord& r, const Presentation& p) {
  std::set<int> vars;
  for (const auto& l : r.letters())
    if (p.is_identical(l.gen)) vars.insert(l.gen);
  return {vars.begin(), vars.end()};
}

/// Enumerates g^beta in increasing generator order with sum beta_i wt_i <= budget,
/// optionally restricting beta to 0/1 entries.
void enumerate_products(const PcPresentation& pcp, int start, int budget, bool squarefree, int max_weight,
                        ExponentVector& cur, int used, std::vector<std::pair<ExponentVector, int>>& out) {
  out.emplace_back(cur, used);
  for (int g = start; g < static_cast<int>(pcp.size()); ++g) {
    const int w = pcp.weight(g);
    if (w > budget || w > max_weight) break;
    ExponentVector next = cur;
    int spent = 0;
    for (int k = 1; spent + w <= budget && (!squarefree || k == 1); ++k) {
      pc_multiply_generator(pcp, next, g, 1);
      spent += w;
      enumerate_products(pcp, g + 1, budget - spent, squarefree, max_weight, next, used + spent, out);
    }
  }
}

std::vector<std::pair<ExponentVector, int>> weighted_products(const PcPresentation& pcp, int budget, bool squarefree,
                                                             int max_weight = INT_MAX) {
  std::vector<std::pair<ExponentVector, int>> out;
  if (budget < 0) return out;
  ExponentVector cur = pc_identity(pcp);
  enumerate_products(pcp, 0, budget, squarefree, max_weight, cur, 0, out);
  return out;
}

// Relation rows of one extension, accumulated in Hermite form.
class RowCollector {
 public:
  RowCollector(const Extension& ext, const Presentation& p)
      : ext_(ext), p_(p), base_(static_cast<int>(ext.base.pcp.size())), acc_(ext.tails.size()) {}

  HermiteAccumulator& accumulator() { return acc_; }
  bool done() const { return acc_.is_full_unimodular(); }

  void add(const ExponentVector& v, const char* what) {
    if (!prefix_trivial(v, base_))
      throw std::logic_error(std::string("nq: ") + what + " does not vanish in the previous quotient");
    acc_.add(tail_row(v, base_));
  }

  void overlaps() {
    const int bound = ext_.base.nilpotency_class + 1;
    enumerate_overlaps(ext_.cover, bound, [&](Overlap&& o) {
      if (!std::equal(o.lhs.begin(), o.lhs.begin() + base_, o.rhs.begin()))
        throw std::logic_error("nq: previous quotient is inconsistent at " + o.label);
      SparseRow row;
      for (std::size_t g = base_; g < o.lhs.size(); ++g) {
        Integer d = o.lhs[g] - o.rhs[g];
        if (!d.is_zero()) row.emplace_back(static_cast<std::uint32_t>(g - base_), std::move(d));
      }
      acc_.add(std::move(row));
      return !done();
    });
  }

  void relators() {
    for (const auto& r : p_.relators) {
      if (done()) return;
      if (p_.mentions_identical(r)) continue;
      add(evaluate_word(ext_.cover, r, ext_.images), "relator");
    }
  }

  /// Law instances spanning every deviation of the appropriate degree.
  void laws() {
    const int top = ext_.base.nilpotency_class + 1;
    for (const auto& r : p_.relators) {
      if (done()) return;
      if (!p_.mentions_identical(r)) continue;
      const int degree = top - law_constant_degree(r, p_, top);
      if (degree < 0) continue;
      const auto vars = identical_vars(r, p_);
      // Generators of weight > top + 1 - length only move the law value above `top`.
      const int relevant = top + 1 - law_min_length(r, p_, top);
      const auto inst = weighted_products(ext_.cover, degree, false, relevant);
      std::vector<ExponentVector> values = ext_.images;
      assign(r, vars, 0, degree, inst, values);
    }
  }

  void law_instance(const GroupWord& r, const std::vector<int>& vars, const std::vector<ExponentVector>& xs) {
    std::vector<ExponentVector> values = ext_.images;
    for (std::size_t k = 0; k < vars.size(); ++k) values[vars[k]] = xs[k];
    add(evaluate_word(ext_.cover, r, values), "law");
  }

 private:
  void assign(const GroupWord& r, const std::vector<int>& vars, std::size_t k, int budget,
              const std::vector<std::pair<ExponentVector, int>>& inst, std::vector<ExponentVector>& values) {
    if (done()) return;
    if (k == vars.size()) {
      add(evaluate_word(ext_.cover, r, values), "law");
      return;
    }
    for (const auto& [x, deg] : inst) {
      if (deg > budget) continue;
      values[vars[k]] = x;
      assign(r, vars, k + 1, budget - deg, inst, values);
      if (done()) return;
    }
  }

  const Extension& ext_;
  const Presentation& p_;
  int base_;
  HermiteAccumulator acc_;
};

Integer binomial(const Integer& e, int k) {
  Integer b(1);
  for (int i = 1; i <= k; ++i) b = div_exact(b * (e - (i - 1)), Integer(i));
  return b;
}

}  // namespace

const ExponentVector& NqResult::image(const Presentation& p, std::string_view name) const {
  const int g = p.generator_index(name);
  if (g < 0 || p.is_identical(g)) throw std::invalid_argument("no image for generator '" + std::string(name) + "'");
  return images.at(g);
}

Environment NqResult::environment(const Presentation& p) const {
  Environment env;
  for (int g : p.group_generators()) env[p.generators[g]] = images.at(g);
  return env;
}

namespace {

struct MagnusProfile {
  int constants;
  int length;
};

MagnusProfile magnus_profile(const GroupWord& law, const Presentation& p, int truncation) {
  // Monomials are strings of generator indices; coefficients exact.
  std::unordered_map<std::string, Integer> series{{"", Integer(1)}};
  for (const auto& l : law.letters()) {
    std::unordered_map<std::string, Integer> next;
    std::vector<Integer> binoms;
    for (int k = 0; k <= truncation; ++k) binoms.push_back(binomial(l.exp, k));
    for (const auto& [mono, coef] : series) {
      std::string m = mono;
      for (int k = 0; k + static_cast<int>(mono.size()) <= truncation; ++k) {
        if (binoms[k].is_zero()) break;
        next[m] += coef * binoms[k];
        m.push_back(static_cast<char>(l.gen));
      }
    }
    series.clear();
    for (auto& [mono, coef] : next)
      if (!coef.is_zero()) series.emplace(mono, std::move(coef));
  }
  MagnusProfile best{truncation + 1, truncation + 1};
  for (const auto& [mono, coef] : series) {
    if (mono.empty()) continue;
    const int consts = static_cast<int>(
        std::count_if(mono.begin(), mono.end(), [&](char c) { return !p.is_identical(static_cast<int>(c)); }));
    best.constants = std::min(best.constants, consts);
    best.length = std::min(best.length, static_cast<int>(mono.size()));
  }
  return best;
}

}  // namespace

int law_constant_degree(const GroupWord& law, const Presentation& p, int truncation) {
  return magnus_profile(law, p, truncation).constants;
}

int law_min_length(const GroupWord& law, const Presentation& p, int truncation) {
  return magnus_profile(law, p, truncation).length;
}

std::vector<ExponentVector> instance_set(const PcPresentation& pcp, int budget) {
  std::vector<ExponentVector> out;
  for (auto& [x, deg] : weighted_products(pcp, budget, true))
    if (deg > 0) out.push_back(std::move(x));
  for (std::size_t g = 0; g < pcp.size(); ++g) out.push_back(pc_generator(pcp, static_cast<int>(g), -1));
  return out;
}

std::vector<ExponentVector> monomial_instances(const PcPresentation& pcp, int degree) {
  std::vector<ExponentVector> out;
  for (auto& [x, deg] : weighted_products(pcp, degree, false)) out.push_back(std::move(x));
  return out;
}

std::vector<GroupWord> instantiate_identicals(const GroupWord& r, const Presentation& p, const PcPresentation& pcp,
                                              const std::vector<ExponentVector>& images, int budget) {
  const auto vars = identical_vars(r, p);
  const auto inst = instance_set(pcp, budget);
  std::vector<GroupWord> subst(p.generators.size());
  for (int g : p.group_generators()) subst[g] = to_word(images.at(g));
  std::vector<GroupWord> out;
  std::vector<std::size_t> idx(vars.size(), 0);
  while (true) {
    for (std::size_t k = 0; k < vars.size(); ++k) subst[vars[k]] = to_word(inst[idx[k]]);
    GroupWord w;
    for (const auto& l : r.letters()) w = multiply(w, power(subst[l.gen], l.exp));
    out.push_back(std::move(w));
    std::size_t k = 0;
    while (k < vars.size() && ++idx[k] == inst.size()) idx[k++] = 0;
    if (k == vars.size()) break;
  }
  return out;
}

Extension build_extension(const NqState& cur, const Presentation& p) {
  const PcPresentation& q = cur.pcp;
  const int n = static_cast<int>(q.size());
  const int c = cur.nilpotency_class;
  std::set<int> image_defs, power_defs;
  std::set<std::pair<int, int>> conj_defs;
  for (const auto& d : cur.definitions) {
    if (d.kind == DefinitionKind::Image) image_defs.insert(d.first);
    if (d.kind == DefinitionKind::Power) power_defs.insert(d.first);
    if (d.kind == DefinitionKind::Conjugate) conj_defs.insert({d.first, d.second});
  }

  Extension ext;
  ext.base = cur;
  std::vector<Definition> late;
  for (int k : p.group_generators())
    if (!image_defs.count(k)) ext.tails.push_back({DefinitionKind::Image, k, 0});
  for (int i = 0; i < n; ++i)
    if (q.is_finite(i) && !power_defs.count(i)) ext.tails.push_back({DefinitionKind::Power, i, 0});
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      if (q.weight(i) + q.weight(j) > c + 1 || conj_defs.count({j, i})) continue;
      (q.weight(i) > 1 ? ext.tails : late).push_back({DefinitionKind::Conjugate, j, i});
    }
  ext.tails.insert(ext.tails.end(), late.begin(), late.end());

  const int t = static_cast<int>(ext.tails.size());
  PcPresentation e(n + t);
  for (int g = 0; g < n; ++g) {
    e.set_name(g, q.name(g));
    e.set_weight(g, q.weight(g));
    e.set_relative_order(g, q.relative_order(g));
  }
  for (int k = 0; k < t; ++k) {
    e.set_name(n + k, "t" + std::to_string(k + 1));
    e.set_weight(n + k, c + 1);
  }
  std::map<std::pair<int, int>, PcWord> conj = q.conjugate_tails();
  std::vector<PcWord> powers(n);
  for (int g = 0; g < n; ++g) powers[g] = q.power(g);
  std::vector<ExponentVector> images(p.generators.size());
  for (int g : p.group_generators()) images[g] = padded(cur.images.at(g), n + t);
  for (int k = 0; k < t; ++k) {
    const Definition& d = ext.tails[k];
    const Letter tl{n + k, Integer(1)};
    switch (d.kind) {
      case DefinitionKind::Image:
        images[d.first][n + k] = 1;
        break;
      case DefinitionKind::Power:
        powers[d.first].push_back(tl);
        break;
      case DefinitionKind::Conjugate:
        conj[{d.first, d.second}].push_back(tl);
        break;
    }
  }
  for (int g = 0; g < n; ++g)
    if (q.is_finite(g)) e.set_power(g, powers[g]);
  for (auto& [key, tail] : conj) e.set_conjugate_tail(key.first, key.second, std::move(tail));
  e.finalize();
  ext.cover = std::move(e);
  ext.images = std::move(images);
  return ext;
}

NqState enforce_relations(const IntMatrix& tail_matrix, const Extension& ext) {
  HermiteAccumulator acc(ext.tails.size());
  for (std::size_t r = 0; r < tail_matrix.rows(); ++r) acc.add_dense(tail_matrix.row(r));
  return enforce_relations(acc, ext);
}

NqState enforce_relations(const HermiteAccumulator& relations, const Extension& ext) {
  const NqState& base = ext.base;
  const PcPresentation& q = base.pcp;
  const int n = static_cast<int>(q.size());
  const int t = static_cast<int>(ext.tails.size());
  const auto& rows = relations.rows();

  std::vector<int> newidx(t, -1);
  std::vector<int> survivors;
  std::vector<Integer> orders;
  for (int k = 0; k < t; ++k) {
    auto it = rows.find(static_cast<std::uint32_t>(k));
    if (it != rows.end() && it->second.front().second.is_one()) continue;
    newidx[k] = static_cast<int>(survivors.size());
    survivors.push_back(k);
    orders.push_back(it == rows.end() ? Integer(0) : it->second.front().second);
  }
  if (survivors.empty()) return base;
  const int s = static_cast<int>(survivors.size());

  // Power relations among the new generators, normalised from the top down.
  std::vector<ExponentVector> rhs(s);
  auto normalise = [&](ExponentVector& x, int from) {
    for (int a = from; a < s; ++a) {
      if (orders[a].is_zero()) continue;
      const Integer qd = floor_div(x[a], orders[a]);
      if (qd.is_zero()) continue;
      x[a] -= qd * orders[a];
      for (int b = a + 1; b < s; ++b)
        if (!rhs[a][b].is_zero()) x[b] += qd * rhs[a][b];
    }
  };
  for (int a = s - 1; a >= 0; --a) {
    rhs[a].assign(s, Integer());
    if (orders[a].is_zero()) continue;
    for (const auto& [col, v] : rows.at(static_cast<std::uint32_t>(survivors[a]))) {
      if (static_cast<int>(col) == survivors[a]) continue;
      if (newidx[col] < 0) throw std::logic_error("nq: Hermite basis is not reduced");
      rhs[a][newidx[col]] -= v;
    }
    normalise(rhs[a], a + 1);
  }

  // Every tail rewritten over the new generators.
  std::vector<ExponentVector> expr(t, ExponentVector(s));
  for (int k = 0; k < t; ++k) {
    if (newidx[k] >= 0) {
      expr[k][newidx[k]] = 1;
      continue;
    }
    for (const auto& [col, v] : rows.at(static_cast<std::uint32_t>(k))) {
      if (static_cast<int>(col) == k) continue;
      if (newidx[col] < 0) throw std::logic_error("nq: Hermite basis is not reduced");
      expr[k][newidx[col]] -= v;
    }
    normalise(expr[k], 0);
  }
  auto letters = [&](const ExponentVector& x) {
    PcWord w;
    for (int a = 0; a < s; ++a)
      if (!x[a].is_zero()) w.push_back(Letter{n + a, x[a]});
    return w;
  };

  NqState next;
  PcPresentation r(n + s);
  const int c = base.nilpotency_class + 1;
  for (int g = 0; g < n; ++g) {
    r.set_name(g, q.name(g));
    r.set_weight(g, q.weight(g));
    r.set_relative_order(g, q.relative_order(g));
  }
  for (int a = 0; a < s; ++a) {
    r.set_weight(n + a, c);
    r.set_relative_order(n + a, orders[a]);
  }
  std::map<std::pair<int, int>, PcWord> conj = q.conjugate_tails();
  std::vector<PcWord> powers(n + s);
  for (int g = 0; g < n; ++g) powers[g] = q.power(g);
  for (int a = 0; a < s; ++a) powers[n + a] = letters(rhs[a]);
  next.images.resize(ext.images.size());
  for (std::size_t g = 0; g < ext.images.size(); ++g)
    if (!base.images[g].empty() || !ext.images[g].empty()) next.images[g] = padded(base.images[g], n + s);
  for (int k = 0; k < t; ++k) {
    const Definition& d = ext.tails[k];
    const PcWord w = letters(expr[k]);
    if (w.empty()) continue;
    switch (d.kind) {
      case DefinitionKind::Image:
        for (const auto& l : w) next.images[d.first][l.gen] += l.exp;
        break;
      case DefinitionKind::Power:
        powers[d.first].insert(powers[d.first].end(), w.begin(), w.end());
        break;
      case DefinitionKind::Conjugate: {
        PcWord& tail = conj[{d.first, d.second}];
        tail.insert(tail.end(), w.begin(), w.end());
        break;
      }
    }
  }
  for (int g = 0; g < n + s; ++g)
    if (r.is_finite(g)) r.set_power(g, powers[g]);
  for (auto& [key, tail] : conj) r.set_conjugate_tail(key.first, key.second, std::move(tail));
  r.finalize();

  next.pcp = std::move(r);
  next.definitions = base.definitions;
  for (int a = 0; a < s; ++a) next.definitions.push_back(ext.tails[survivors[a]]);
  next.nilpotency_class = c;
  return next;
}

ExtendResult extend_step(const NqState& current, const Presentation& p, const NqOptions& options) {
  const Extension ext = build_extension(current, p);
  ExtendResult res;
  if (ext.tails.empty()) {
    res.next = current;
    return res;
  }
  RowCollector rows(ext, p);
  rows.overlaps();
  rows.relators();
  rows.laws();
  NqState next = enforce_relations(rows.accumulator(), ext);
  const int n = static_cast<int>(current.pcp.size());
  if (static_cast<int>(next.pcp.size()) == n) {
    res.next = current;
    return res;
  }

  // Randomised law check in the new quotient; a violation is pulled back to
  // the cover as an extra instance and the elimination is redone.
  std::vector<const GroupWord*> laws;
  for (const auto& r : p.relators)
    if (p.mentions_identical(r)) laws.push_back(&r);
  std::mt19937_64 rng(options.seed + 0x9e37u * static_cast<std::uint64_t>(current.nilpotency_class + 1));
  for (int round = 0; !laws.empty(); ++round) {
    const PcPresentation& pc = next.pcp;
    const int m = static_cast<int>(pc.size());
    // New generators are surviving tails; find their cover columns.
    std::vector<int> to_cover(m - n);
    for (int a = n; a < m; ++a)
      to_cover[a - n] =
          n + static_cast<int>(std::find(ext.tails.begin(), ext.tails.end(), next.definitions[a]) - ext.tails.begin());
    bool violated = false;
    for (const GroupWord* r : laws) {
      const auto vars = identical_vars(*r, p);
      for (int sample = 0; sample < options.soundness_samples; ++sample) {
        std::vector<ExponentVector> xs;
        std::vector<ExponentVector> values = next.images;
        for (int var : vars) {
          ExponentVector x(m);
          const bool sparse = sample % 2 == 0;
          for (int g = 0; g < m; ++g) {
            if (sparse && rng() % 3 != 0) continue;
            if (pc.is_finite(g)) {
              x[g] = Integer(static_cast<long long>(rng() % pc.relative_order(g).to_int64()));
            } else {
              x[g] = Integer(static_cast<long long>(rng() % 5) - 2);
            }
          }
          values[var] = x;
          xs.push_back(std::move(x));
        }
        if (is_identity(evaluate_word(pc, *r, values))) continue;
        violated = true;
        std::vector<ExponentVector> lifted;
        for (const auto& x : xs) {
          ExponentVector y(ext.cover.size());
          for (int g = 0; g < n; ++g) y[g] = x[g];
          for (int a = n; a < m; ++a) y[to_cover[a - n]] = x[a];
          lifted.push_back(std::move(y));
        }
        rows.law_instance(*r, vars, lifted);
      }
    }
    if (!violated) break;
    if (round + 1 >= options.soundness_rounds)
      throw std::runtime_error("nq: identical relator still violated after escalation");
    ++res.escalations;
    next = enforce_relations(rows.accumulator(), ext);
    if (static_cast<int>(next.pcp.size()) == n) {
      res.next = current;
      return res;
    }
  }
  res.next = std::move(next);
  res.grew = true;
  return res;
}

std::vector<LayerInvariants> layer_invariants(const PcPresentation& pcp) {
  std::vector<LayerInvariants> out;
  const int n = static_cast<int>(pcp.size());
  int g = 0;
  while (g < n) {
    const int w = pcp.weight(g);
    int end = g;
    while (end < n && pcp.weight(end) == w) ++end;
    const int k = end - g;
    IntMatrix rel(0, k);
    for (int a = g; a < end; ++a) {
      if (!pcp.is_finite(a)) continue;
      std::vector<Integer> row(k);
      row[a - g] = pcp.relative_order(a);
      for (const auto& l : pcp.power(a))
        if (l.gen < end) row[l.gen - g] -= l.exp;
      rel.append_row(row);
    }
    const QuotientStructure qs = quotient_structure(rel, k);
    LayerInvariants li;
    li.weight = w;
    for (const auto& d : qs.divisors) {
      if (d.is_zero())
        ++li.rank;
      else if (!d.is_one())
        li.divisors.push_back(d);
    }
    out.push_back(std::move(li));
    g = end;
  }
  return out;
}

NqResult nilpotent_quotient(const Presentation& p, int max_class) {
  NqOptions o;
  o.max_class = max_class;
  return nilpotent_quotient(p, o);
}

NqResult nilpotent_quotient(const Presentation& p, const NqOptions& options) {
  if (options.max_class < 1) throw std::invalid_argument("max_class must be at least 1");
  NqState state;
  state.pcp = PcPresentation(0);
  state.pcp.finalize();
  state.images.resize(p.generators.size());
  for (int g : p.group_generators()) state.images[g] = ExponentVector{};
  NqResult result;
  bool stabilized = false;
  while (state.nilpotency_class < options.max_class) {
    ExtendResult step = extend_step(state, p, options);
    result.escalations += step.escalations;
    if (!step.grew) {
      stabilized = true;
      break;
    }
    state = std::move(step.next);
  }
  result.pcp = std::move(state.pcp);
  result.images = std::move(state.images);
  result.definitions = std::move(state.definitions);
  result.nilpotency_class = result.pcp.size() == 0 ? 0 : result.pcp.max_weight();
  result.stabilized = stabilized;
  result.layers = layer_invariants(result.pcp);
  return result;
}

}  // namespace engelkit
