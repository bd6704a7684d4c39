#include "support.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "engelkit/subgroup.hpp"

namespace engelkit::support {

Presentation load_presentation(const std::string& name) {
  const std::string path = std::string(ENGELKIT_PRESENTATIONS_DIR) + "/" + name + ".pres";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing " + path);
  std::stringstream text;
  text << in.rdbuf();
  return parse_presentation(text.str());
}

GroupWord random_word(Rng& rng, int ngens, int max_length) {
  if (ngens == 0) return {};
  std::uniform_int_distribution<int> len(0, max_length);
  std::uniform_int_distribution<int> gen(0, ngens - 1);
  std::bernoulli_distribution sign;
  std::vector<Letter> letters;
  for (int n = len(rng); n > 0; --n) letters.push_back({gen(rng), sign(rng) ? 1 : -1});
  return GroupWord(std::move(letters));
}

ExponentVector random_element(Rng& rng, const PcPresentation& p, int max_length) {
  return collect(p, random_word(rng, static_cast<int>(p.size()), max_length));
}

int associativity_failures(const PcPresentation& p, int cases, Rng& rng) {
  int bad = 0;
  for (int k = 0; k < cases; ++k) {
    const auto u = random_element(rng, p, 8);
    const auto v = random_element(rng, p, 8);
    const auto w = random_element(rng, p, 8);
    const auto left = pc_multiply(p, u, pc_multiply(p, v, w));
    const auto right = pc_multiply(p, pc_multiply(p, u, v), w);
    if (left != right || !is_identity(pc_multiply(p, u, pc_invert(p, u)))) ++bad;
  }
  return bad;
}

int law_failures(const NqResult& q, const Presentation& p, int cases, int max_length, Rng& rng) {
  int bad = 0;
  for (int k = 0; k < cases; ++k) {
    auto values = q.images;
    for (int g : p.identical) values[g] = random_element(rng, q.pcp, max_length);
    for (const auto& r : p.relators) {
      if (!p.mentions_identical(r)) continue;
      if (!is_identity(evaluate_word(q.pcp, r, values))) {
        ++bad;
        break;
      }
    }
  }
  return bad;
}

namespace {

mpz_class cofactor_det(const std::vector<std::vector<mpz_class>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  mpz_class det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<mpz_class>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<mpz_class> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    const mpz_class term = a[0][c] * cofactor_det(minor);
    det += (c % 2 == 0) ? term : mpz_class(-term);
  }
  return det;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Integer> minor_gcd_divisors(const IntMatrix& m) {
  std::vector<Integer> out;
  mpz_class prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    mpz_class g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<mpz_class>> sub(k, std::vector<mpz_class>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m.at(r[i], c[j]).to_mpz();
        mpz_class d = cofactor_det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) break;
    out.emplace_back(mpz_class(g / prev));
    prev = g;
  }
  return out;
}

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = d(rng);
  return m;
}

int witt_rank2(int k) {
  const auto mobius = [](int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
    return n > 1 ? -result : result;
  };
  long long sum = 0;
  for (int d = 1; d <= k; ++d)
    if (k % d == 0) sum += mobius(d) * (1LL << (k / d));
  return static_cast<int>(sum / k);
}

std::vector<SmallGroup> small_groups() {
  const std::vector<std::pair<std::string, std::string>> texts = {
      {"1", "gens a; rel a"},
      {"C2", "gens a; rel a^2"},
      {"C3", "gens a; rel a^3"},
      {"C4", "gens a; rel a^4"},
      {"C2xC2", "gens a, b; rel a^2, b^2, [a,b]"},
      {"C5", "gens a; rel a^5"},
      {"C6", "gens a; rel a^6"},
      {"C7", "gens a; rel a^7"},
      {"C8", "gens a; rel a^8"},
      {"C4xC2", "gens a, b; rel a^4, b^2, [a,b]"},
      {"C2xC2xC2", "gens a, b, c; rel a^2, b^2, c^2, [a,b], [a,c], [b,c]"},
      {"D8", "gens a, b; rel a^4, b^2, (a*b)^2"},
      {"Q8", "gens a, b; rel a^4, a^2 b^-2, b^-1 a b a"},
      {"C9", "gens a; rel a^9"},
      {"C3xC3", "gens a, b; rel a^3, b^3, [a,b]"},
      {"C10", "gens a; rel a^10"},
      {"C11", "gens a; rel a^11"},
      {"C12", "gens a; rel a^12"},
      {"C2xC6", "gens a, b; rel a^2, b^6, [a,b]"},
      {"C13", "gens a; rel a^13"},
      {"C14", "gens a; rel a^14"},
      {"C15", "gens a; rel a^15"},
      {"C16", "gens a; rel a^16"},
      {"C4xC4", "gens a, b; rel a^4, b^4, [a,b]"},
      {"(C4xC2):C2", "gens a, b, c; rel a^4, b^2, c^2, [a,b], [b,c], c a c b^-1 a^-1"},
      {"C4:C4", "gens a, b; rel a^4, b^4, b^-1 a b a"},
      {"C8xC2", "gens a, b; rel a^8, b^2, [a,b]"},
      {"M16", "gens a, b; rel a^8, b^2, b^-1 a b a^-5"},
      {"D16", "gens a, b; rel a^8, b^2, (a*b)^2"},
      {"SD16", "gens a, b; rel a^8, b^2, b^-1 a b a^-3"},
      {"Q16", "gens a, b; rel a^8, a^4 b^-2, b^-1 a b a"},
      {"C4xC2xC2", "gens a, b, c; rel a^4, b^2, c^2, [a,b], [a,c], [b,c]"},
      {"C2xD8", "gens a, b, c; rel a^4, b^2, (a*b)^2, c^2, [a,c], [b,c]"},
      {"C2xQ8", "gens a, b, c; rel a^4, a^2 b^-2, b^-1 a b a, c^2, [a,c], [b,c]"},
      {"C4oD8", "gens a, b, c; rel a^4, b^2, (a*b)^2, c^2 a^-2, [a,c], [b,c]"},
      {"C2^4", "gens a, b, c, d; rel a^2, b^2, c^2, d^2, [a,b], [a,c], [a,d], [b,c], [b,d], [c,d]"},
  };
  std::vector<SmallGroup> out;
  for (const auto& [name, text] : texts) out.push_back({name, nilpotent_quotient(parse_presentation(text), 8).pcp});
  return out;
}

std::vector<ExponentVector> enumerate_elements(const PcPresentation& p) {
  std::vector<ExponentVector> out{pc_identity(p)};
  for (std::size_t g = 0; g < p.size(); ++g) {
    if (!p.is_finite(static_cast<int>(g))) throw std::invalid_argument("infinite pc group");
    const auto m = p.relative_order(static_cast<int>(g)).to_int64();
    std::vector<ExponentVector> next;
    for (const auto& v : out)
      for (std::int64_t e = 0; e < m; ++e) {
        auto w = v;
        w[g] = e;
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

namespace {

std::set<ExponentVector> closure_oracle(const PcPresentation& p, const std::vector<ExponentVector>& gens) {
  std::set<ExponentVector> seen{pc_identity(p)};
  std::vector<ExponentVector> todo{pc_identity(p)};
  while (!todo.empty()) {
    const auto x = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      auto y = pc_multiply(p, x, g);
      if (seen.insert(y).second) todo.push_back(std::move(y));
    }
  }
  return seen;
}

}  // namespace

int sift_mismatches(const PcPresentation& p, int max_gens) {
  const auto elems = enumerate_elements(p);
  int bad = 0;
  std::vector<std::size_t> idx;
  const auto check = [&] {
    std::vector<ExponentVector> gens;
    for (auto i : idx) gens.push_back(elems[i]);
    const auto oracle = closure_oracle(p, gens);
    const auto s = induced_subgroup(p, gens);
    for (const auto& x : elems) {
      const auto r = sift(p, s, x);
      if (r.member != oracle.contains(x) || r.member != is_identity(r.residue)) ++bad;
    }
  };
  const std::function<void(std::size_t)> rec = [&](std::size_t start) {
    check();
    if (static_cast<int>(idx.size()) == max_gens) return;
    for (std::size_t i = start; i < elems.size(); ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(0);
  return bad;
}

}  // namespace engelkit::support
