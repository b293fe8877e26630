#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <set>

#include "corpus_cache.hpp"
#include "helpkit/arith.hpp"
#include "helpkit/constructions.hpp"
#include "helpkit/help.hpp"
#include "helpkit/structure.hpp"

using namespace helpkit;
using testing_corpus::corpus64;
using testing_corpus::entry;

namespace {

const FiniteGroup& s3() { return entry("C3:C2(2)").group; }

std::size_t class_of_order(const FiniteGroup& g, std::size_t k) {
  for (std::size_t c = 0; c < g.classes().size(); ++c)
    if (g.element_order(g.classes()[c].representative) == k) return c;
  throw std::logic_error("no class of that order");
}

// The template whose pinned classes are those of g's powers.
PowerChain matching_template(const FiniteGroup& g, Element x) {
  const auto m = g.element_order(x);
  const PowerChain own = trivial_chain(g, x);
  for (auto t : chain_templates(g, m)) {
    bool same = true;
    for (const auto& [d, y] : t.pinned) same = same && g.class_of(y) == g.class_of(own.pinned.at(d));
    if (same) return t;
  }
  throw std::logic_error("no template matches");
}

// Monomial matrix of ψ^G at x, built from a transversal of N.
using Matrix = std::vector<std::vector<std::complex<double>>>;

Matrix induced_matrix(const FiniteGroup& g, const LinearCharacter& psi, Element x) {
  std::vector<Element> reps;
  std::vector<char> covered(g.order(), 0);
  for (Element t = 0; t < g.order(); ++t) {
    if (covered[t]) continue;
    reps.push_back(t);
    for (Element y : psi.domain.elements()) covered[g.mul(t, y)] = 1;
  }
  const std::size_t r = reps.size();
  Matrix mat(r, std::vector<std::complex<double>>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const Element y = g.mul(g.mul(g.inv(reps[i]), x), reps[j]);
      if (psi.exponent[y] < 0) continue;
      const double angle = 2 * std::numbers::pi * psi.exponent[y] / static_cast<double>(psi.conductor);
      mat[i][j] = std::polar(1.0, angle);
    }
  return mat;
}

std::size_t rank(Matrix a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    for (std::size_t i = r; i < rows; ++i)
      if (std::abs(a[i][c]) > std::abs(a[piv][c])) piv = i;
    if (std::abs(a[piv][c]) < 1e-9) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const auto f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

// dim ker(ρ(x) - ζ_m^l), which is the multiplicity since ρ(x) is diagonalizable.
std::int64_t eigen_multiplicity(const Matrix& mat, std::uint64_t m, std::uint64_t l) {
  Matrix a = mat;
  const auto z = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(l) / static_cast<double>(m));
  for (std::size_t i = 0; i < a.size(); ++i) a[i][i] -= z;
  return static_cast<std::int64_t>(a.size() - rank(a));
}

}  // namespace

TEST(Chains, TrivialChainIsValid) {
  for (const auto& e : corpus64()) {
    if (e.group.order() > 24) continue;
    for (Element x = 0; x < e.group.order(); ++x) EXPECT_NO_THROW(validate_chain(e.group, trivial_chain(e.group, x)));
  }
}

TEST(Chains, ValidateRejectsBadChains) {
  const auto& g = entry("C3xC4").group;
  const Element u = g.classes()[class_of_order(g, 12)].representative;
  PowerChain c = trivial_chain(g, u);
  EXPECT_NO_THROW(validate_chain(g, c));
  c.pinned[2] = u;  // wrong order
  EXPECT_THROW(validate_chain(g, c), InvalidInput);
  c = trivial_chain(g, u);
  c.pinned.erase(3);
  EXPECT_THROW(validate_chain(g, c), InvalidInput);
  c = trivial_chain(g, u);
  c.unknown.entries.pop_back();
  EXPECT_THROW(validate_chain(g, c), InvalidInput);
  c = trivial_chain(g, u);
  c.pinned[4] = g.pow(u, 8);  // right order, but not the square of u^2
  EXPECT_THROW(validate_chain(g, c), InvalidInput);
}

TEST(Chains, WrongImageFailsQuotientCheck) {
  const auto& g = entry("C2xC4").group;
  Element u = 0, bad = 0;
  for (Element x = 0; x < g.order(); ++x)
    if (g.element_order(x) == 4) {
      u = x;
      break;
    }
  for (Element y = 0; y < g.order(); ++y)
    if (g.element_order(y) == 2 && y != g.pow(u, 2)) bad = y;
  PowerChain c = trivial_chain(g, u);
  c.pinned[2] = bad;
  EXPECT_NO_THROW(validate_chain(g, c));  // a single prime leaves nothing to compare
  EXPECT_FALSE(basic_constraints(make_context(g), c).all_passed());
}

TEST(BasicConstraints, TrivialVectorsPassOnCorpus) {
  for (const auto& e : corpus64()) {
    if (e.group.order() > 32) continue;
    const auto ctx = make_context(e.group);
    for (const auto& cls : e.group.classes()) {
      const auto rep = basic_constraints(ctx, trivial_chain(e.group, cls.representative));
      for (const auto& r : rep.results) EXPECT_TRUE(r.passed) << e.id << " " << r.id << " " << r.detail;
    }
  }
}

TEST(BasicConstraints, OrderMustDivide) {
  const auto& g = entry("C3:C4(2)").group;
  const auto ctx = make_context(g);
  const Element x = g.classes()[class_of_order(g, 4)].representative;
  PowerChain c = trivial_chain(g, x);
  std::fill(c.unknown.entries.begin(), c.unknown.entries.end(), 0);
  c.unknown.entries[class_of_order(g, 3)] = 1;
  const auto rep = basic_constraints(ctx, c);
  auto it = std::find_if(rep.results.begin(), rep.results.end(), [](auto& r) { return r.id == "order_divides"; });
  ASSERT_NE(it, rep.results.end());
  EXPECT_FALSE(it->passed);
  EXPECT_FALSE(rep.all_passed());
}

TEST(BasicConstraints, AugmentationAndIdentity) {
  const auto& g = s3();
  const auto ctx = make_context(g);
  PowerChain c = trivial_chain(g, g.classes()[class_of_order(g, 2)].representative);
  c.unknown.entries[0] = 1;
  const auto rep = basic_constraints(ctx, c);
  EXPECT_FALSE(rep.results[0].passed);
  EXPECT_FALSE(rep.results[1].passed);
}

TEST(BasicConstraints, QuotientImageMatchesGenuineElement) {
  // For genuine elements the partial augmentations over g^G N sum to 1 at
  // the image class and 0 elsewhere.
  for (const auto& e : corpus64()) {
    if (e.group.order() > 24) continue;
    const auto& g = e.group;
    for (const auto& n : normal_subgroups(g)) {
      for (const auto& cls : g.classes()) {
        const auto v = trivial_pa(g, cls.representative);
        std::int64_t s = 0;
        for (Element y : class_times(g, cls.representative, n)) {
          if (g.classes()[g.class_of(y)].representative == y) s += v.entries[g.class_of(y)];
        }
        EXPECT_EQ(s, 1) << e.id;
      }
    }
  }
}

TEST(Multiplicities, SignCharacterOfC2) {
  const FiniteGroup g = cyclic_group(2);
  const auto chars = default_characters(g, CharacterSelection::Linear);
  const ClassFunction* sign = nullptr;
  for (const auto& c : chars)
    if (c.values[1] == Cyclotomic(1, Rational(-1))) sign = &c;
  ASSERT_NE(sign, nullptr);
  const auto mv = multiplicities(g, trivial_chain(g, 1), *sign);
  ASSERT_EQ(mv.mu.size(), 2U);
  EXPECT_EQ(mv.as_integers(), (std::vector<std::int64_t>{0, 1}));
}

TEST(Multiplicities, GenuineElementsSumToDegree) {
  for (const auto& e : corpus64()) {
    if (e.group.order() > 32) continue;
    const auto& g = e.group;
    for (const auto& chi : default_characters(g, CharacterSelection::All)) {
      for (const auto& cls : g.classes()) {
        const auto mv = multiplicities(g, trivial_chain(g, cls.representative), chi);
        ASSERT_TRUE(mv.integral_nonnegative()) << e.id << " " << chi.name;
        const auto ints = mv.as_integers();
        EXPECT_EQ(std::accumulate(ints.begin(), ints.end(), std::int64_t{0}), chi.degree());
      }
    }
  }
}

TEST(Multiplicities, MatchExplicitMonomialMatrices) {
  for (const char* id : {"C3:C2(2)", "Q8", "C3:C4(2)", "C5:C4(2)", "C3:Q8(1,1)", "A4", "C8:C2(3)"}) {
    const auto& g = entry(id).group;
    for (const auto& n : normal_subgroups(g)) {
      if (!is_abelian(g, n)) continue;
      for (const auto& k : abelian_subgroup_lattice(g, n)) {
        if (!cyclic_quotient(g, n, k)) continue;
        const auto psi = linear_character(g, n, k);
        const auto chi = induce(g, psi);
        for (const auto& cls : g.classes()) {
          const Element x = cls.representative;
          const auto m = g.element_order(x);
          const auto mv = multiplicities(g, trivial_chain(g, x), chi).as_integers();
          const auto mat = induced_matrix(g, psi, x);
          for (std::uint64_t l = 0; l < m; ++l) EXPECT_EQ(mv[l], eigen_multiplicity(mat, m, l)) << id << " l=" << l;
        }
      }
    }
  }
}

TEST(Multiplicities, AffineAgreesWithReference) {
  std::mt19937 rng(1234);
  for (const char* id : {"C3:C2(2)", "Q8", "C3:C4(2)", "C5:C4(2)", "C3:Q8(1,1)", "C8:Q8(3,5)", "SL(2,3)"}) {
    const auto& g = entry(id).group;
    const auto chars = default_characters(g, CharacterSelection::All);
    for (auto m : divisors(exponent(g))) {
      for (const auto& t : chain_templates(g, m)) {
        for (int trial = 0; trial < 3; ++trial) {
          PowerChain c = t;
          c.unknown.m = m;
          c.unknown.entries.assign(g.classes().size(), 0);
          for (std::size_t k = 0; k < c.unknown.entries.size(); ++k)
            if (m % g.element_order(g.classes()[k].representative) == 0)
              c.unknown.entries[k] = std::uniform_int_distribution<int>(-3, 3)(rng);
          for (std::size_t ci = 0; ci < chars.size(); ci += 3) {
            const auto aff = affine_multiplicities(g, t, chars[ci]);
            const auto ref = multiplicities(g, c, chars[ci]);
            for (std::uint64_t l = 0; l < m; ++l) {
              Rational mu = aff.constant[l];
              for (std::size_t k = 0; k < c.unknown.entries.size(); ++k)
                mu += aff.coefficient[l][k] * Rational(c.unknown.entries[k]);
              EXPECT_EQ(Cyclotomic(ref.mu[l].conductor(), mu), ref.mu[l]) << id << " m=" << m << " l=" << l;
            }
          }
        }
      }
    }
  }
}

TEST(Templates, CoverEveryGenuineElement) {
  for (const auto& e : corpus64()) {
    if (e.group.order() > 32) continue;
    for (const auto& cls : e.group.classes()) EXPECT_NO_THROW(matching_template(e.group, cls.representative)) << e.id;
  }
}

TEST(HelpFilter, OrderSixInvolutionsUnique) {
  const auto& g = s3();
  for (bool assume : {true, false}) {
    HelpOptions opt;
    opt.bound = 3;
    opt.assume_quotient_zc = assume;
    const auto ctx = make_context(g, opt);
    const auto templates = chain_templates(g, 2);
    ASSERT_EQ(templates.size(), 1U);
    const auto res = help_filter(ctx, templates[0]);
    ASSERT_EQ(res.survivors.size(), 1U);
    EXPECT_EQ(res.survivors[0], trivial_pa(g, g.classes()[class_of_order(g, 2)].representative));
  }
}

TEST(HelpFilter, OrderOneGivesIdentity) {
  for (const auto& e : corpus64()) {
    if (e.group.order() > 24) continue;
    const auto ctx = make_context(e.group);
    const auto t = chain_templates(e.group, 1);
    ASSERT_EQ(t.size(), 1U);
    const auto res = help_filter(ctx, t[0]);
    ASSERT_EQ(res.survivors.size(), 1U) << e.id;
    EXPECT_EQ(res.survivors[0], trivial_pa(e.group, e.group.identity()));
  }
}

TEST(HelpFilter, QuaternionOrderFourNonNegative) {
  const auto& g = entry("Q8").group;
  for (bool assume : {true, false}) {
    HelpOptions opt;
    opt.bound = 2;
    opt.assume_quotient_zc = assume;
    const auto ctx = make_context(g, opt);
    std::size_t total = 0;
    for (const auto& t : chain_templates(g, 4)) {
      const auto res = help_filter(ctx, t);
      EXPECT_EQ(res.status, FilterStatus::Complete);
      for (const auto& s : res.survivors) {
        PowerChain c = t;
        c.unknown = s;
        EXPECT_TRUE(rational_conjugacy_check(c));
        ++total;
      }
    }
    EXPECT_EQ(total, 3U);
  }
}

// Exhaustive box enumeration against the search, on small groups.
TEST(HelpFilter, MatchesBruteForceEnumeration) {
  for (const char* id : {"C3:C2(2)", "Q8", "C3:C4(2)", "C2xC4", "C5:C2(4)", "C3:C2xC2(1,2)", "A4"}) {
    const auto& g = entry(id).group;
    for (bool assume : {true, false}) {
      HelpOptions opt;
      opt.bound = 2;
      opt.assume_quotient_zc = assume;
      const auto ctx = make_context(g, opt);
      for (auto m : divisors(exponent(g))) {
        std::vector<std::size_t> vars;
        for (std::size_t c = 0; c < g.classes().size(); ++c)
          if ((m == 1 || c != 0) && m % g.element_order(g.classes()[c].representative) == 0) vars.push_back(c);
        if (vars.size() > 6) continue;
        for (const auto& t : chain_templates(g, m)) {
          std::set<PartialAugVector> brute;
          PowerChain c = t;
          c.unknown.m = m;
          c.unknown.entries.assign(g.classes().size(), 0);
          std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == vars.size()) {
              if (filter_accepts(ctx, c)) brute.insert(c.unknown);
              return;
            }
            for (std::int64_t v = -opt.bound; v <= opt.bound; ++v) {
              c.unknown.entries[vars[i]] = v;
              rec(i + 1);
            }
          };
          rec(0);
          const auto res = help_filter(ctx, t);
          EXPECT_EQ(std::set<PartialAugVector>(res.survivors.begin(), res.survivors.end()), brute)
              << id << " m=" << m << " assume=" << assume;
          EXPECT_TRUE(std::is_sorted(res.survivors.begin(), res.survivors.end()));
        }
      }
    }
  }
}

TEST(HelpFilter, GenuineElementsSurvive) {
  for (const auto& e : corpus64()) {
    if (e.group.order() > 24) continue;
    const auto& g = e.group;
    const auto ctx = make_context(g);
    for (const auto& cls : g.classes()) {
      const Element x = cls.representative;
      EXPECT_TRUE(filter_accepts(ctx, trivial_chain(g, x))) << e.id;
      const auto res = help_filter(ctx, matching_template(g, x));
      const auto want = trivial_pa(g, x);
      EXPECT_TRUE(std::binary_search(res.survivors.begin(), res.survivors.end(), want)) << e.id;
    }
  }
}

TEST(HelpFilter, BudgetIsReported) {
  const auto& g = entry("Q8").group;
  HelpOptions opt;
  opt.node_budget = 1;
  const auto ctx = make_context(g, opt);
  const auto res = help_filter(ctx, chain_templates(g, 4)[0]);
  EXPECT_EQ(res.status, FilterStatus::Budget);
  const auto rep = zc_audit(ctx, {4});
  EXPECT_EQ(rep.levels[0].status, "budget");
}

TEST(HelpFilter, ElementaryAbelianSquareCertified) {
  // the depth-first search alone runs out of budget here
  const auto& g = entry("C5xC5").group;
  const auto rep = zc_audit(g, {5});
  ASSERT_EQ(rep.levels.size(), 1U);
  EXPECT_EQ(rep.levels[0].status, "certified");
  ASSERT_EQ(rep.levels[0].survivors.size(), 24U);
  for (const auto& s : rep.levels[0].survivors) {
    EXPECT_EQ(std::count(s.vector.entries.begin(), s.vector.entries.end(), 1), 1);
    EXPECT_EQ(std::count(s.vector.entries.begin(), s.vector.entries.end(), 0),
              static_cast<std::ptrdiff_t>(s.vector.entries.size()) - 1);
  }
}

TEST(RationalConjugacy, Examples) {
  const auto& g = s3();
  PowerChain c = trivial_chain(g, g.classes()[1].representative);
  EXPECT_TRUE(rational_conjugacy_check(c));
  c.unknown.entries[1] = -1;
  EXPECT_FALSE(rational_conjugacy_check(c));
}

TEST(Audit, TrivialGroupCertified) {
  const auto rep = zc_audit(FiniteGroup{}, {1});
  ASSERT_EQ(rep.levels.size(), 1U);
  EXPECT_EQ(rep.levels[0].status, "certified");
  EXPECT_EQ(rep.levels[0].survivors.size(), 1U);
}

TEST(Audit, OrderSixCertified) {
  const auto rep = zc_audit(s3(), {2, 3, 6});
  for (const auto& l : rep.levels) EXPECT_EQ(l.status, "certified") << l.m;
  EXPECT_EQ(rep.levels[2].survivors.size(), 0U);
}

TEST(Audit, DicyclicTwelveReport) {
  const auto& g = entry("C3:C4(2)").group;
  const auto rep = zc_audit(g, divisors(12));
  EXPECT_EQ(rep.levels.size(), 6U);
  for (const auto& l : rep.levels) EXPECT_EQ(l.status, "certified") << l.m;
}

TEST(Audit, WorkerCountDoesNotChangeResult) {
  const auto& g = entry("C3:Q8(1,1)").group;
  HelpOptions one, four;
  four.workers = 4;
  const auto a = zc_audit(g, divisors(24), one);
  const auto b = zc_audit(g, divisors(24), four);
  ASSERT_EQ(a.levels.size(), b.levels.size());
  for (std::size_t i = 0; i < a.levels.size(); ++i) {
    ASSERT_EQ(a.levels[i].survivors.size(), b.levels[i].survivors.size());
    for (std::size_t k = 0; k < a.levels[i].survivors.size(); ++k)
      EXPECT_EQ(a.levels[i].survivors[k].vector, b.levels[i].survivors[k].vector);
    EXPECT_EQ(a.levels[i].rejections, b.levels[i].rejections);
    EXPECT_EQ(a.levels[i].nodes, b.levels[i].nodes);
  }
}
