#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "corpus_cache.hpp"
#include "helpkit/arith.hpp"
#include "helpkit/characters.hpp"
#include "helpkit/structure.hpp"
#include "oracles.hpp"

using namespace helpkit;
using testing_corpus::corpus64;
using testing_corpus::entry;

namespace {

std::vector<Subgroup> abelian_normals(const FiniteGroup& g) {
  std::vector<Subgroup> out;
  for (auto& n : normal_subgroups(g))
    if (is_abelian(g, n)) out.push_back(std::move(n));
  return out;
}

// N/K cyclic, checked by looking for an element whose coset powers fill N.
bool cyclic_quotient_oracle(const FiniteGroup& g, const Subgroup& n, const Subgroup& k) {
  for (Element t : n.elements()) {
    std::set<std::vector<Element>> cosets;
    Element p = g.identity();
    for (std::size_t i = 0; i < n.order(); ++i) {
      std::vector<Element> coset;
      for (Element y : k.elements()) coset.push_back(g.mul(p, y));
      std::sort(coset.begin(), coset.end());
      cosets.insert(coset);
      p = g.mul(p, t);
    }
    if (cosets.size() * k.order() == n.order()) return true;
  }
  return false;
}

bool core_trivial_oracle(const FiniteGroup& g, const Subgroup& k) {
  for (Element x : k.elements()) {
    if (x == g.identity()) continue;
    bool in_all = true;
    for (Element t = 0; t < g.order() && in_all; ++t) in_all = k.contains(g.conj(x, t));
    if (in_all) return false;
  }
  return true;
}

}  // namespace

TEST(AbelianInvariants, CountsMatchTorsion) {
  for (const auto& e : corpus64()) {
    if (e.group.order() > 32) continue;
    const auto& g = e.group;
    for (const auto& n : abelian_normals(g)) {
      const auto inv = abelian_invariants(g, n);
      std::uint64_t prod = 1;
      for (auto q : inv) prod *= q;
      EXPECT_EQ(prod, n.order());
      for (auto t : divisors(n.order())) {
        std::uint64_t expect = 1, got = 0;
        for (auto q : inv) expect *= gcd_u(q, t);
        for (Element x : n.elements())
          if (t % g.element_order(x) == 0) ++got;
        EXPECT_EQ(got, expect) << e.id << " t=" << t;
      }
    }
  }
}

TEST(AbelianInvariants, Examples) {
  const auto& g = entry("C2xC4").group;
  EXPECT_EQ(abelian_invariants(g, g.whole()), (std::vector<std::uint64_t>{2, 4}));
  const auto& h = entry("C3xC3xC3").group;
  EXPECT_EQ(abelian_invariants(h, h.whole()), (std::vector<std::uint64_t>{3, 3, 3}));
  EXPECT_THROW(abelian_invariants(entry("Q8").group, entry("Q8").group.whole()), InvalidInput);
}

TEST(SubgroupLattice, MatchesBruteForce) {
  for (const char* id : {"C2xC4", "C3xC3xC3", "C2^3", "Q8", "C3:C4(2)", "A4"}) {
    const auto& g = entry(id).group;
    const auto all = oracle::all_subgroups(g);
    for (const auto& n : abelian_normals(g)) {
      std::set<std::vector<Element>> want;
      for (const auto& s : all)
        if (std::all_of(s.begin(), s.end(), [&](Element x) { return n.contains(x); })) want.insert(s);
      std::set<std::vector<Element>> got;
      for (const auto& k : abelian_subgroup_lattice(g, n)) got.insert({k.elements().begin(), k.elements().end()});
      EXPECT_EQ(got, want) << id;
    }
  }
}

TEST(KN, DefinitionalSetMatchesOracle) {
  for (const auto& e : corpus64()) {
    if (e.group.order() > 24) continue;
    const auto& g = e.group;
    for (const auto& n : abelian_normals(g)) {
      const auto kn = compute_KN(g, n);
      std::vector<Subgroup> want;
      for (const auto& k : abelian_subgroup_lattice(g, n))
        if (cyclic_quotient_oracle(g, n, k) && core_trivial_oracle(g, k)) want.push_back(k);
      EXPECT_EQ(kn.definitional, want) << e.id;
    }
  }
}

TEST(KN, CharacterizationAgreesUnderHypotheses) {
  std::size_t applicable = 0;
  for (const auto& e : corpus64()) {
    if (e.family == Family::Control) continue;
    const auto& g = e.group;
    for (const auto& n : abelian_normals(g)) {
      if (!e.witness.is_subset_of(n)) continue;
      const auto kn = compute_KN(g, n, e.witness);
      if (!kn.hypotheses_hold) continue;
      ++applicable;
      EXPECT_TRUE(kn.sets_agree) << e.id;
      EXPECT_TRUE(kn.size_bound) << e.id;
      EXPECT_TRUE(kn.index_equals_exponent) << e.id;
    }
  }
  EXPECT_GT(applicable, 100U);
}

TEST(KN, HypothesesGateOnNilpotentQuotient) {
  const auto& g = entry("S4").group;
  for (const auto& n : abelian_normals(g)) {
    const auto kn = compute_KN(g, n, g.trivial());
    EXPECT_FALSE(kn.hypotheses_hold);  // S4 is not nilpotent
    EXPECT_TRUE(kn.characterized.empty());
  }
}

TEST(ExponentCount, ClosedFormMatchesCount) {
  for (const auto& e : corpus64()) {
    const auto& g = e.group;
    for (const auto& n : abelian_normals(g)) {
      if (n.is_trivial() || !is_prime_power(n.order())) continue;
      const auto c = count_exponent_elements(g, n, prime_factors(n.order())[0]);
      EXPECT_EQ(c.closed_form, c.brute_force) << e.id;
    }
  }
}

TEST(ExponentCount, Examples) {
  const auto& g = entry("C2xC4").group;
  const auto c = count_exponent_elements(g, g.whole(), 2);
  EXPECT_EQ(c.e, 2U);
  EXPECT_EQ(c.l, 1U);
  EXPECT_EQ(c.q_order, 2U);
  EXPECT_EQ(c.closed_form, 4U);
  EXPECT_THROW(count_exponent_elements(entry("C3xC4").group, entry("C3xC4").group.whole(), 2), InvalidInput);
}

TEST(LinearCharacters, AreHomomorphismsWithGivenKernel) {
  for (const auto& e : corpus64()) {
    if (e.group.order() > 16) continue;
    const auto& g = e.group;
    for (const auto& n : abelian_normals(g))
      for (const auto& k : abelian_subgroup_lattice(g, n)) {
        if (!cyclic_quotient(g, n, k)) continue;
        const auto psi = linear_character(g, n, k);
        EXPECT_EQ(psi.conductor, n.order() / k.order());
        for (Element x : n.elements()) {
          EXPECT_EQ(psi.value(x) == Cyclotomic(1, Rational(1)), k.contains(x));
          for (Element y : n.elements()) EXPECT_EQ(psi.value(g.mul(x, y)), psi.value(x) * psi.value(y));
        }
      }
  }
}

TEST(Induction, ClassSumsMatchFrobeniusSum) {
  for (const auto& e : corpus64()) {
    if (e.group.order() > 32) continue;
    const auto& g = e.group;
    for (const auto& n : abelian_normals(g))
      for (const auto& k : abelian_subgroup_lattice(g, n)) {
        if (!cyclic_quotient(g, n, k)) continue;
        const auto psi = linear_character(g, n, k);
        const auto chi = induce(g, psi);
        EXPECT_EQ(chi.degree(), static_cast<std::int64_t>(g.order() / n.order()));
        for (std::size_t c = 0; c < g.classes().size(); ++c)
          EXPECT_EQ(chi.values[c], frobenius_value(g, psi, g.classes()[c].representative)) << e.id;
        // <χ,χ> is a positive integer for a genuine character
        const Rational norm = inner_product_norm(g, chi);
        EXPECT_TRUE(norm.is_integer());
        EXPECT_GE(norm, Rational(1));
      }
  }
}

TEST(DefaultCharacters, NoDuplicatesOrConjugates) {
  for (const auto& e : corpus64()) {
    if (e.group.order() > 24) continue;
    const auto chars = default_characters(e.group, CharacterSelection::All);
    ASSERT_FALSE(chars.empty());
    for (std::size_t i = 0; i < chars.size(); ++i)
      for (std::size_t j = i + 1; j < chars.size(); ++j) {
        bool conjugate = false;
        for (std::uint64_t k = 1; k <= chars[j].conductor && !conjugate; ++k) {
          if (gcd_u(k, chars[j].conductor) != 1) continue;
          bool same = true;
          for (std::size_t c = 0; c < chars[i].values.size() && same; ++c)
            same = chars[i].values[c] == chars[j].values[c].galois(static_cast<std::int64_t>(k));
          conjugate = same;
        }
        EXPECT_FALSE(conjugate) << e.id << " " << chars[i].name << " ~ " << chars[j].name;
      }
  }
}

TEST(DefaultCharacters, SelectionsPartition) {
  const auto& g = entry("C3:C4(2)").group;
  const auto lin = default_characters(g, CharacterSelection::Linear);
  for (const auto& chi : lin) EXPECT_EQ(chi.degree(), 1);
  EXPECT_EQ(lin.size(), 3U);  // G/G' is cyclic of order 4
  EXPECT_EQ(parse_selection("linear"), CharacterSelection::Linear);
  EXPECT_EQ(selection_name(CharacterSelection::Induced), "induced");
  EXPECT_THROW(parse_selection("bogus"), InvalidInput);
}

TEST(XYSets, CardinalityBoundsExhaustive) {
  for (const auto& e : corpus64()) {
    if (e.group.order() > 16) continue;
    const auto& g = e.group;
    for (const auto& n : abelian_normals(g))
      for (const auto& k : compute_KN(g, n).definitional)
        for (Element x = 0; x < g.order(); ++x)
          for (Element h = 0; h < g.order(); ++h) {
            const auto s = xy_sets(g, k, x, h);
            const std::size_t cg = g.class_of_element(x).centralizer_order;
            EXPECT_EQ(s.x.size() % cg, 0U);
            for (Element t : s.x) EXPECT_LE(s.x.size(), cg * y_set(g, k, x, t).size());
          }
  }
}
