// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "engelkit/engel.hpp"
#include "engelkit/subgroup.hpp"
#include "support.hpp"

using namespace engelkit;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    detail << " [failed: " << what << "]";
  }
};

bool report(int n, const std::string& title, Outcome& o, std::chrono::steady_clock::time_point start) {
  const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (o.pass ? "PASS" : "FAIL") << " " << n << " " << title << ":" << o.detail.str() << " (" << secs
            << " s)" << std::endl;
  return o.pass;
}

Outcome engel_classes(QuotientRegistry& reg) {
  Outcome o;
  for (const auto& row : reproduce_section4(reg)) {
    o.detail << " " << row.label << "=" << row.computed << (row.exact ? "" : "+");
    o.require(row.pass, row.label);
  }
  return o;
}

Outcome identity_suites(QuotientRegistry& reg) {
  Outcome o;
  int checks = 0;
  for (const auto& r : run_suites("all", reg)) {
    checks += static_cast<int>(r.checks.size());
    o.detail << " " << r.name << " " << r.checks.size() - r.failures() << "/" << r.checks.size();
    for (const auto& c : r.checks) o.require(c.pass, r.name + ": " + c.label);
  }
  o.detail << "; " << checks << " checks";
  return o;
}

Outcome negative_controls(QuotientRegistry& reg) {
  Outcome o;
  const auto ctl = run_negative_controls(reg);
  for (const auto& c : ctl.checks) o.require(c.pass, c.label);
  o.detail << " free quotient controls " << ctl.checks.size() - ctl.failures() << "/" << ctl.checks.size()
           << "; th3 failures with a G0 relator removed:";
  const auto g0 = reg.presentation("G0");
  for (std::size_t i = 0; i < g0.relators.size(); ++i) {
    QuotientRegistry mutated;
    auto p = g0;
    p.relators.erase(p.relators.begin() + static_cast<long>(i));
    mutated.set_presentation("G0", p);
    int broken = 0;
    for (const auto& c : run_suite("th3", mutated).checks)
      if (!c.pass && c.label.rfind("G0 ", 0) == 0) ++broken;
    o.detail << " " << broken;
    o.require(broken > 0, "relator " + std::to_string(i + 1) + " removed");
  }
  return o;
}

Outcome properties(QuotientRegistry& reg) {
  Outcome o;
  support::Rng rng(0xacce);
  int assoc = 0, inconsistent = 0, law = 0;
  for (const auto& name : reg.names()) {
    const auto p = reg.presentation(name);
    const bool table = name == "H" || name == "K" || name == "N" || name == "M";
    const auto q = reg.quotient(name, table ? table_class_bound : suite_class_bound);
    assoc += support::associativity_failures(q->pcp, 500, rng);
    inconsistent += static_cast<int>(consistency_check(q->pcp).size());
    if (!p.identical.empty()) law += support::law_failures(*q, p, 200, 6, rng);
  }
  o.require(assoc == 0, "associativity");
  o.require(inconsistent == 0, "consistency");
  o.require(law == 0, "law soundness");

  int matrices = 0;
  for (int k = 0; k < 500; ++k) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    const auto m = support::random_matrix(rng, rows, cols, 9);
    const auto h = hnf(m);
    const auto s = snf(m);
    const auto unit = [](const IntMatrix& u) {
      const auto d = determinant(u);
      return d == Integer(1) || d == Integer(-1);
    };
    bool ok = h.U * m == h.H && unit(h.U) && s.U * m * s.V == s.D && unit(s.U) && unit(s.V);
    std::vector<Integer> diag;
    for (std::size_t i = 0; i < std::min(rows, cols); ++i)
      if (!s.D.at(i, i).is_zero()) diag.push_back(s.D.at(i, i));
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) ok = ok && diag[i + 1].to_mpz() % diag[i].to_mpz() == 0;
    ok = ok && diag == support::minor_gcd_divisors(m);
    if (!ok) ++matrices;
  }
  o.require(matrices == 0, "matrix normal forms");

  int sift = 0;
  const auto groups = support::small_groups();
  for (const auto& g : groups) sift += support::sift_mismatches(g.pcp, 3);
  o.require(sift == 0, "sift");

  const auto free2 = nilpotent_quotient(support::load_presentation("free2"), 5);
  bool witt = free2.layers.size() == 5;
  for (int k = 1; witt && k <= 5; ++k) witt = free2.layers[k - 1].rank == support::witt_rank2(k);
  o.require(witt, "free nilpotent ranks");

  o.detail << " associativity " << assoc << ", consistency " << inconsistent << ", law " << law << ", matrices "
           << matrices << ", sift " << sift << " over " << groups.size() << " groups, ranks";
  for (const auto& l : free2.layers) o.detail << " " << l.rank;
  return o;
}

Outcome asymmetry(QuotientRegistry& reg) {
  Outcome o;
  const auto h = reg.quotient("H", table_class_bound), k = reg.quotient("K", table_class_bound);
  const auto n = reg.quotient("N", table_class_bound), m = reg.quotient("M", table_class_bound);
  o.detail << " class(H)=" << h->nilpotency_class << " class(K)=" << k->nilpotency_class
           << " class(N)=" << n->nilpotency_class << " class(M)=" << m->nilpotency_class;
  o.require(h->stabilized && k->stabilized && n->stabilized && m->stabilized, "stabilization");
  o.require(h->nilpotency_class != k->nilpotency_class, "H vs K");
  o.require(n->nilpotency_class != m->nilpotency_class, "N vs M");
  return o;
}

}  // namespace

int main() {
  QuotientRegistry reg;
  bool ok = true;
  auto t = std::chrono::steady_clock::now();
  auto o1 = engel_classes(reg);
  ok &= report(1, "Engel group classes", o1, t);
  t = std::chrono::steady_clock::now();
  auto o2 = identity_suites(reg);
  ok &= report(2, "identity suites", o2, t);
  t = std::chrono::steady_clock::now();
  auto o3 = negative_controls(reg);
  ok &= report(3, "negative controls", o3, t);
  t = std::chrono::steady_clock::now();
  auto o4 = properties(reg);
  ok &= report(4, "property suites", o4, t);
  t = std::chrono::steady_clock::now();
  auto o5 = asymmetry(reg);
  ok &= report(5, "asymmetry witnesses", o5, t);
  return ok ? 0 : 1;
}
