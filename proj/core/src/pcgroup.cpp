#include "engelkit/pcgroup.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <tuple>
#include <sstream>
#include <stdexcept>

namespace engelkit {

namespace {

const PcWord kEmptyWord;

PcWord normal_word(const ExponentVector& v) {
  PcWord out;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) out.push_back(Letter{static_cast<int>(k), v[k]});
  return out;
}

std::int64_t loop_count(const Integer& e) {
  const Integer a = abs(e);
  if (!a.fits_int64()) throw std::overflow_error("collection exponent too large");
  return a.to_int64();
}

}  // namespace

PcPresentation::PcPresentation(std::size_t n)
    : n_(n), names_(n), weights_(n, 1), orders_(n), powers_(n) {
  for (std::size_t g = 0; g < n; ++g) names_[g] = "g" + std::to_string(g + 1);
}

void PcPresentation::set_name(int g, std::string name) { names_.at(g) = std::move(name); }

void PcPresentation::set_weight(int g, int w) {
  if (w < 1) throw std::invalid_argument("pc generator weight must be positive");
  weights_.at(g) = w;
  finalized_ = false;
}

void PcPresentation::set_relative_order(int g, Integer m) {
  if (m.sign() < 0) throw std::invalid_argument("relative order must be nonnegative");
  orders_.at(g) = std::move(m);
  finalized_ = false;
}

void PcPresentation::set_power(int g, PcWord rhs) {
  for (const auto& l : rhs)
    if (l.gen <= g || l.gen >= static_cast<int>(n_))
      throw std::invalid_argument("power relation of " + names_.at(g) + " uses an earlier generator");
  std::erase_if(rhs, [](const Letter& l) { return l.exp.is_zero(); });
  powers_.at(g) = std::move(rhs);
  finalized_ = false;
}

void PcPresentation::set_conjugate_tail(int j, int i, PcWord tail) {
  if (!(j > i && i >= 0 && j < static_cast<int>(n_)))
    throw std::invalid_argument("conjugate relation needs j > i");
  for (const auto& l : tail)
    if (l.gen <= j || l.gen >= static_cast<int>(n_))
      throw std::invalid_argument("conjugate tail must use generators after g_j");
  std::erase_if(tail, [](const Letter& l) { return l.exp.is_zero(); });
  if (tail.empty())
    tails_.erase({j, i});
  else
    tails_[{j, i}] = std::move(tail);
  finalized_ = false;
}

int PcPresentation::max_weight() const {
  int m = 0;
  for (int w : weights_) m = std::max(m, w);
  return m;
}

const PcWord& PcPresentation::conjugate_tail(int j, int i) const {
  if (j >= central_from_) return kEmptyWord;
  return conj_[static_cast<std::size_t>(j) * central_from_ + i];
}

const PcWord& PcPresentation::conjugate_inverse_tail(int j, int i) const {
  if (j >= central_from_) return kEmptyWord;
  return conj_inv_[static_cast<std::size_t>(j) * central_from_ + i];
}

struct PcPresentation::ConjugationCache {
  std::mutex mutex;
  std::map<std::tuple<int, int, int>, std::shared_ptr<const std::vector<PcWord>>> tables;
};

/// Collection from the left on a dense exponent vector. Multiplying by g^e
/// lifts the non-central part u above g off the vector, bumps e_g (applying
/// the power relation on wrap-around) and multiplies u^(g^e) back in, where
/// u is conjugated one generator image at a time and the images are raised
/// to their exponents by repeated squaring.
class Collector {
 public:
  explicit Collector(const PcPresentation& p) : p_(p), cf_(p.central_from_), n_(static_cast<int>(p.n_)) {}

  void mul_gen(ExponentVector& v, int g, const Integer& e) const {
    if (e.is_zero()) return;
    if (g >= cf_) {
      v[g] += e;
      wrap(v, g);
      return;
    }
    if (commutes_with_suffix(v, g)) {
      v[g] += e;
      if (p_.is_finite(g) && (v[g].sign() < 0 || v[g] >= p_.orders_[g])) {
        const Integer q = floor_div(v[g], p_.orders_[g]);
        v[g] -= q * p_.orders_[g];
        ExponentVector u = lift_suffix(v, g);
        mul_word_power(v, p_.pow_nf_[g], q);
        mul_vec(v, u);
      }
      return;
    }
    if (!p_.is_finite(g)) {
      step(v, g, e);
      return;
    }
    // Only nonnegative powers of a finite generator are collected letter by
    // letter; g^-s is rewritten as g^(qm + r) = g^r (g^m)^q first.
    const Integer& m = p_.orders_[g];
    Integer q = floor_div(e, m);
    Integer r = e - q * m;
    if (q.sign() > 0) {
      r = e;
      q = Integer();
    }
    while (!r.is_zero()) {
      const Integer room = m - v[g];
      const Integer s = r < room ? r : room;
      step(v, g, s);
      r -= s;
    }
    if (!q.is_zero()) mul_word_power(v, p_.pow_nf_[g], q);
  }

  /// Multiplies by w^k for a word w in any order.
  void mul_letters(ExponentVector& v, const PcWord& w, const Integer& k) const {
    if (k.is_zero() || w.empty()) return;
    if (w.size() == 1) {
      mul_gen(v, w[0].gen, w[0].exp * k);
      return;
    }
    if (abs(k) <= Integer(2)) {
      for (std::int64_t c = loop_count(k); c > 0; --c) {
        if (k.sign() > 0)
          for (const auto& l : w) mul_gen(v, l.gen, l.exp);
        else
          for (auto it = w.rbegin(); it != w.rend(); ++it) mul_gen(v, it->gen, -it->exp);
      }
      return;
    }
    ExponentVector x(n_);
    for (const auto& l : w) mul_gen(x, l.gen, l.exp);
    mul_vec(v, power(x, k));
  }

  /// v * x for a normal-form vector x.
  void mul_vec(ExponentVector& v, const ExponentVector& x) const {
    for (int k = 0; k < n_; ++k)
      if (!x[k].is_zero()) mul_gen(v, k, x[k]);
  }

  ExponentVector invert(const ExponentVector& x) const {
    ExponentVector w(n_);
    for (int k = n_ - 1; k >= 0; --k)
      if (!x[k].is_zero()) mul_gen(w, k, -x[k]);
    return w;
  }

  ExponentVector power(const ExponentVector& x, const Integer& k) const {
    ExponentVector acc(n_);
    if (k.is_zero()) return acc;
    ExponentVector base = k.sign() < 0 ? invert(x) : x;
    Integer e = abs(k);
    bool first = true;
    while (true) {
      if (e.is_odd()) {
        if (first)
          acc = base;
        else
          mul_vec(acc, base);
        first = false;
      }
      e = floor_div(e, Integer(2));
      if (e.is_zero()) break;
      ExponentVector sq = base;
      mul_vec(sq, base);
      base = std::move(sq);
    }
    return acc;
  }

 private:
  bool commutes_with_suffix(const ExponentVector& v, int g) const {
    for (int j : p_.noncomm_[g])
      if (!v[j].is_zero()) return false;
    return true;
  }

  ExponentVector lift_suffix(ExponentVector& v, int g) const {
    ExponentVector u(n_);
    for (int j = g + 1; j < cf_; ++j)
      if (!v[j].is_zero()) {
        u[j] = std::move(v[j]);
        v[j] = Integer();
      }
    return u;
  }

  void wrap(ExponentVector& v, int g) const {
    if (!p_.is_finite(g)) return;
    const Integer& m = p_.orders_[g];
    if (v[g].sign() >= 0 && v[g] < m) return;
    const Integer q = floor_div(v[g], m);
    v[g] -= q * m;
    mul_word_power(v, p_.pow_nf_[g], q);
  }

  /// v * w^k for a normal-form word w.
  void mul_word_power(ExponentVector& v, const PcWord& w, const Integer& k) const {
    if (k.is_zero() || w.empty()) return;
    if (w.size() == 1) {
      mul_gen(v, w[0].gen, w[0].exp * k);
      return;
    }
    if (k.is_one()) {
      for (const auto& l : w) mul_gen(v, l.gen, l.exp);
      return;
    }
    ExponentVector x(n_);
    for (const auto& l : w) x[l.gen] = l.exp;
    mul_vec(v, power(x, k));
  }

  // v * g^r; for finite g, 0 < r and e_g + r <= m.
  void step(ExponentVector& v, int g, const Integer& r) const {
    ExponentVector u = lift_suffix(v, g);
    v[g] += r;
    const int sign = r.sign();
    std::uint64_t bits = static_cast<std::uint64_t>(loop_count(r));
    for (int k = 0; bits != 0; ++k, bits >>= 1)
      if (bits & 1) u = apply(*table(g, sign, k), u, g);
    if (p_.is_finite(g) && v[g] == p_.orders_[g]) {
      v[g] = Integer();
      mul_word_power(v, p_.pow_nf_[g], 1);
    }
    mul_vec(v, u);
  }

  /// Image of x (supported above g) under the automorphism given by images of g_{g+1} ... g_{cf-1}.
  ExponentVector apply(const std::vector<PcWord>& images, const ExponentVector& x, int g) const {
    ExponentVector w(n_);
    for (int j = g + 1; j < n_; ++j) {
      if (x[j].is_zero()) continue;
      if (j >= cf_ || images[j - g - 1].empty())
        mul_gen(w, j, x[j]);
      else
        mul_word_power(w, images[j - g - 1], x[j]);
    }
    return w;
  }

  /// Images under conjugation by g^(sign * 2^k); empty words for fixed generators.
  std::shared_ptr<const std::vector<PcWord>> table(int g, int sign, int k) const {
    auto& cache = *p_.powers_cache_;
    const auto key = std::make_tuple(g, sign, k);
    {
      std::lock_guard<std::mutex> lock(cache.mutex);
      auto it = cache.tables.find(key);
      if (it != cache.tables.end()) return it->second;
    }
    auto t = std::make_shared<std::vector<PcWord>>(cf_ - g - 1);
    if (k == 0) {
      const std::size_t cf = static_cast<std::size_t>(cf_);
      for (int j = g + 1; j < cf_; ++j)
        (*t)[j - g - 1] = sign > 0 ? p_.conj_nf_[j * cf + g] : p_.conj_inv_nf_[j * cf + g];
    } else {
      const auto half = table(g, sign, k - 1);
      for (int j = g + 1; j < cf_; ++j) {
        const PcWord& h = (*half)[j - g - 1];
        if (h.empty()) continue;
        ExponentVector x(n_);
        for (const auto& l : h) x[l.gen] = l.exp;
        ExponentVector y = apply(*half, x, g);
        if (!(y[j].is_one() && std::count_if(y.begin(), y.end(), [](const Integer& e) { return !e.is_zero(); }) == 1))
          (*t)[j - g - 1] = normal_word(y);
      }
    }
    std::lock_guard<std::mutex> lock(cache.mutex);
    return cache.tables.emplace(key, std::move(t)).first->second;
  }

  const PcPresentation& p_;
  int cf_;
  int n_;
};

void PcPresentation::finalize() {
  for (std::size_t g = 1; g < n_; ++g)
    if (weights_[g] < weights_[g - 1])
      throw std::invalid_argument("pc generator weights must be non-decreasing");
  central_from_ = 0;
  for (const auto& [key, tail] : tails_) central_from_ = std::max(central_from_, key.first + 1);
  const std::size_t cf = static_cast<std::size_t>(central_from_);
  conj_.assign(cf * cf, PcWord{});
  conj_inv_.assign(cf * cf, PcWord{});
  conj_nf_.assign(cf * cf, PcWord{});
  conj_inv_nf_.assign(cf * cf, PcWord{});
  pow_nf_.assign(n_, PcWord{});
  noncomm_.assign(cf, {});
  for (const auto& [key, tail] : tails_) {
    conj_[key.first * cf + key.second] = tail;
    noncomm_[key.second].push_back(key.first);
  }
  for (auto& l : noncomm_) std::sort(l.begin(), l.end());
  finalized_ = true;

  // Normal forms are filled for i descending (and j descending) so that
  // collecting a word in generators > i only touches finished entries.
  // g_i g_j g_i^-1 = g_j * ((tail(j,i))^{g_i^-1})^-1.
  powers_cache_ = std::make_shared<ConjugationCache>();
  const Collector col(*this);
  const int n = static_cast<int>(n_);
  for (int i = n - 1; i >= 0; --i) {
    if (is_finite(i)) {
      ExponentVector v(n_);
      col.mul_letters(v, powers_[i], 1);
      pow_nf_[i] = normal_word(v);
    }
    if (i >= central_from_) continue;
    for (int j = central_from_ - 1; j > i; --j) {
      const PcWord& c = conj_[j * cf + i];
      if (c.empty()) continue;
      ExponentVector t(n_);
      col.mul_letters(t, c, 1);
      ExponentVector img(n_);
      img[j] = 1;
      col.mul_vec(img, t);
      conj_nf_[j * cf + i] = normal_word(img);
      ExponentVector y(n_);
      for (int k = j + 1; k < n; ++k) {
        if (t[k].is_zero()) continue;
        const PcWord& sub = k < central_from_ ? conj_inv_nf_[k * cf + i] : kEmptyWord;
        if (sub.empty()) {
          col.mul_gen(y, k, t[k]);
        } else {
          ExponentVector s(n_);
          for (const auto& l : sub) s[l.gen] = l.exp;
          col.mul_vec(y, col.power(s, t[k]));
        }
      }
      ExponentVector inv(n_);
      inv[j] = 1;
      col.mul_vec(inv, col.invert(y));
      conj_inv_nf_[j * cf + i] = normal_word(inv);
      inv[j] = Integer();
      conj_inv_[j * cf + i] = normal_word(inv);
    }
  }
}

ExponentVector pc_identity(const PcPresentation& p) { return ExponentVector(p.size()); }

ExponentVector pc_generator(const PcPresentation& p, int g, const Integer& e) {
  ExponentVector v(p.size());
  pc_multiply_generator(p, v, g, e);
  return v;
}

bool is_identity(const ExponentVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x.is_zero(); });
}

int depth(const ExponentVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return static_cast<int>(i);
  return -1;
}

void pc_multiply_generator(const PcPresentation& p, ExponentVector& v, int g, const Integer& e) {
  if (!p.finalized()) throw std::logic_error("PcPresentation used before finalize()");
  Collector(p).mul_gen(v, g, e);
}

ExponentVector collect(const PcPresentation& p, const GroupWord& w) {
  ExponentVector v(p.size());
  const Collector col(p);
  for (const auto& l : w.letters()) {
    if (l.gen < 0 || l.gen >= static_cast<int>(p.size()))
      throw std::invalid_argument("collect: word uses an unknown generator");
    col.mul_gen(v, l.gen, l.exp);
  }
  return v;
}

ExponentVector collect(const PcPresentation& p, const PcWord& w) {
  ExponentVector v(p.size());
  const Collector col(p);
  for (const auto& l : w) col.mul_gen(v, l.gen, l.exp);
  return v;
}

ExponentVector pc_multiply(const PcPresentation& p, const ExponentVector& u, const ExponentVector& v) {
  ExponentVector w = u;
  const Collector col(p);
  for (std::size_t g = 0; g < v.size(); ++g)
    if (!v[g].is_zero()) col.mul_gen(w, static_cast<int>(g), v[g]);
  return w;
}

ExponentVector pc_invert(const PcPresentation& p, const ExponentVector& u) {
  ExponentVector w(p.size());
  const Collector col(p);
  for (int g = static_cast<int>(u.size()) - 1; g >= 0; --g)
    if (!u[g].is_zero()) col.mul_gen(w, g, -u[g]);
  return w;
}

ExponentVector pc_power(const PcPresentation& p, const ExponentVector& u, const Integer& n) {
  if (n.is_zero() || is_identity(u)) return pc_identity(p);
  return Collector(p).power(u, n);
}

ExponentVector pc_comm(const PcPresentation& p, const ExponentVector& u, const ExponentVector& v) {
  return pc_multiply(p, pc_invert(p, pc_multiply(p, v, u)), pc_multiply(p, u, v));
}

ExponentVector pc_conj(const PcPresentation& p, const ExponentVector& u, const ExponentVector& t) {
  return pc_multiply(p, pc_invert(p, t), pc_multiply(p, u, t));
}

ExponentVector pc_left_normed_comm(const PcPresentation& p, const std::vector<ExponentVector>& parts) {
  if (parts.empty()) throw std::invalid_argument("pc_left_normed_comm: empty sequence");
  ExponentVector acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = pc_comm(p, acc, parts[i]);
  return acc;
}

ExponentVector evaluate_word(const PcPresentation& p, const GroupWord& w,
                             const std::vector<ExponentVector>& values) {
  ExponentVector v = pc_identity(p);
  for (const auto& l : w.letters()) {
    const ExponentVector& x = values.at(l.gen);
    v = pc_multiply(p, v, l.exp.is_one() ? x : pc_power(p, x, l.exp));
  }
  return v;
}

GroupWord to_word(const ExponentVector& v) {
  std::vector<Letter> letters;
  for (std::size_t g = 0; g < v.size(); ++g)
    if (!v[g].is_zero()) letters.push_back(Letter{static_cast<int>(g), v[g]});
  return GroupWord(std::move(letters));
}

std::string format_element(const PcPresentation& p, const ExponentVector& v) {
  std::ostringstream os;
  bool any = false;
  for (std::size_t g = 0; g < v.size(); ++g) {
    if (v[g].is_zero()) continue;
    if (any) os << ' ';
    os << p.name(static_cast<int>(g));
    if (!v[g].is_one()) os << '^' << v[g];
    any = true;
  }
  return any ? os.str() : "1";
}

void enumerate_overlaps(const PcPresentation& p, int weight_bound,
                        const std::function<bool(Overlap&&)>& sink) {
  const int n = static_cast<int>(p.size());
  const int cf = p.central_from();
  const Collector col(p);
  auto gen = [&](int g, const Integer& e) {
    ExponentVector v(p.size());
    col.mul_gen(v, g, e);
    return v;
  };
  auto times = [&](ExponentVector v, int g, const Integer& e) {
    col.mul_gen(v, g, e);
    return v;
  };
  auto within = [&](int w) { return weight_bound <= 0 || w <= weight_bound; };
  const auto& nm = p.names();

  for (int k = 2; k < cf; ++k)
    for (int j = 1; j < k; ++j) {
      if (!within(p.weight(k) + p.weight(j) + p.weight(0))) break;
      for (int i = 0; i < j; ++i) {
        if (!within(p.weight(k) + p.weight(j) + p.weight(i))) break;
        if (p.commute(k, j) && p.commute(k, i) && p.commute(j, i)) continue;
        ExponentVector lhs = times(times(gen(k, 1), j, 1), i, 1);
        ExponentVector rhs = pc_multiply(p, gen(k, 1), times(gen(j, 1), i, 1));
        if (!sink({"(" + nm[k] + " " + nm[j] + ") " + nm[i] + " = " + nm[k] + " (" + nm[j] + " " + nm[i] + ")",
              std::move(lhs), std::move(rhs)}))
          return;
      }
    }

  for (int j = 0; j < n; ++j) {
    if (!p.is_finite(j)) continue;
    const Integer& m = p.relative_order(j);
    const ExponentVector pw = collect(p, p.power(j));
    for (int i = 0; i < j; ++i) {
      ExponentVector lhs = times(pw, i, 1);
      ExponentVector rhs = pc_multiply(p, gen(j, m - 1), times(gen(j, 1), i, 1));
      if (!sink({"(" + nm[j] + "^" + m.to_string() + ") " + nm[i] + " = " + nm[j] + "^" + (m - 1).to_string() +
                     " (" + nm[j] + " " + nm[i] + ")",
                 std::move(lhs), std::move(rhs)}))
        return;
    }
    for (int k = j + 1; k < n; ++k) {
      ExponentVector lhs = pc_multiply(p, gen(k, 1), pw);
      ExponentVector rhs = times(times(gen(k, 1), j, 1), j, m - 1);
      if (!sink({nm[k] + " (" + nm[j] + "^" + m.to_string() + ") = (" + nm[k] + " " + nm[j] + ") " + nm[j] + "^" +
                     (m - 1).to_string(),
                 std::move(lhs), std::move(rhs)}))
        return;
    }
    ExponentVector lhs = times(pw, j, 1);
    ExponentVector rhs = pc_multiply(p, gen(j, 1), pw);
    if (!sink({"(" + nm[j] + "^" + m.to_string() + ") " + nm[j] + " = " + nm[j] + " (" + nm[j] + "^" +
                   m.to_string() + ")",
               std::move(lhs), std::move(rhs)}))
      return;
  }

  for (int i = 0; i < cf; ++i)
    for (int j = i + 1; j < cf; ++j) {
      if (p.commute(j, i)) continue;
      ExponentVector lhs = times(times(gen(j, 1), i, -1), i, 1);
      if (!sink({"(" + nm[j] + " " + nm[i] + "^-1) " + nm[i] + " = " + nm[j], std::move(lhs), gen(j, 1)})) return;
    }
}

std::vector<ConsistencyViolation> consistency_check(const PcPresentation& p) {
  std::vector<ConsistencyViolation> out;
  enumerate_overlaps(p, 0, [&](Overlap&& o) {
    if (o.lhs != o.rhs) out.push_back({std::move(o.label), std::move(o.lhs), std::move(o.rhs)});
    return true;
  });
  return out;
}

}  // namespace engelkit
