#include "helpkit/lemmas.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "helpkit/arith.hpp"
#include "helpkit/characters.hpp"
#include "helpkit/help.hpp"
#include "helpkit/parallel.hpp"
#include "helpkit/structure.hpp"

namespace helpkit {

namespace {

using nlohmann::json;

constexpr std::size_t kMaxWitnesses = 8;

void add_witness(LemmaVerdict& v, const std::string& w) {
  if (v.witnesses.size() < kMaxWitnesses) v.witnesses.push_back(w);
}

// Folds one instance result into an aggregated verdict.
void record(LemmaVerdict& v, bool ok, const std::string& witness) {
  v.hypotheses_hold = true;
  if (!v.conclusion) v.conclusion = true;
  if (!ok) {
    v.conclusion = false;
    add_witness(v, witness);
  }
}

Subgroup subgroup_of(const FiniteGroup& g, std::vector<Element> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return Subgroup(g.order(), std::move(elements));
}

Subgroup cyclic_subgroup(const FiniteGroup& g, Element x) { return subgroup_closure(g, std::span<const Element>(&x, 1)); }

// Elements of h whose order is a power of p (p = 2) or odd (p = 0).
Subgroup part_of(const FiniteGroup& g, const Subgroup& h, bool two_part) {
  std::vector<Element> out;
  for (Element x : h.elements()) {
    const auto o = g.element_order(x);
    const bool two_power = (o & (o - 1)) == 0;
    const bool odd = o % 2 == 1;
    if (two_part ? two_power : odd) out.push_back(x);
  }
  return subgroup_of(g, std::move(out));
}

Subgroup z_of(const FiniteGroup& g, const Subgroup& c) { return intersection(centralizer(g, c), c); }

bool cyclic_by_abelian(const FiniteGroup& g) {
  const Subgroup d = derived_subgroup(g);
  return is_cyclic(g, d);
}

std::string rat(const Rational& r) { return r.to_string(); }

std::uint64_t phi(std::uint64_t n) { return euler_phi(n); }

std::string elt(const FiniteGroup& g, Element x) { return g.label(x); }

}  // namespace

json to_json(const LemmaVerdict& v) {
  json j;
  j["lemma"] = v.lemma;
  j["hypotheses_hold"] = v.hypotheses_hold;
  j["conclusion_holds"] = v.conclusion ? json(*v.conclusion) : json(nullptr);
  j["witnesses"] = v.witnesses;
  if (!v.note.empty()) j["note"] = v.note;
  j["quantities"] = v.quantities;
  return j;
}

bool nilpotent_setting(const FiniteGroup& g, const Subgroup& a) {
  return is_cyclic(g, a) && is_normal(g, a) && is_nilpotent(quotient(g, a).target);
}

bool hamiltonian_setting(const FiniteGroup& g, const Subgroup& a) {
  return is_cyclic(g, a) && is_normal(g, a) && is_hamiltonian(quotient(g, a).target);
}

LemmaVerdict check_centralizer_lemma(const FiniteGroup& g, const Subgroup& a) {
  LemmaVerdict v;
  v.lemma = "centralizer";
  v.hypotheses_hold = nilpotent_setting(g, a);
  if (!v.hypotheses_hold) {
    v.note = "A is not a cyclic normal subgroup with nilpotent quotient";
    return v;
  }
  const Subgroup c = centralizer(g, a);
  const Subgroup d = derived_subgroup(g);
  bool ok = true;
  if (!is_normal(g, c)) {
    ok = false;
    add_witness(v, "C_G(A) not normal");
  }
  if (!is_nilpotent(as_group(g, c))) {
    ok = false;
    add_witness(v, "C_G(A) not nilpotent");
  }
  if (!d.is_subset_of(c)) {
    ok = false;
    add_witness(v, "G' not inside C_G(A)");
  }
  for (Element x : d.elements())
    for (Element y : a.elements())
      if (g.comm(x, y) != g.identity()) {
        ok = false;
        add_witness(v, "(" + elt(g, x) + "," + elt(g, y) + ") != 1");
      }
  v.conclusion = ok;
  v.quantities = {{"centralizer_order", c.order()}, {"derived_order", d.order()}};
  return v;
}

LemmaVerdict check_hall_lemma(const FiniteGroup& g, const Subgroup& a) {
  LemmaVerdict v;
  v.lemma = "hall";
  v.hypotheses_hold = nilpotent_setting(g, a) && gcd_u(a.order(), g.order() / a.order()) == 1;
  if (!v.hypotheses_hold) {
    v.note = "A is not a cyclic normal Hall subgroup with nilpotent quotient";
    return v;
  }
  bool ok = true;
  std::uint64_t rad = 1;
  for (auto p : prime_factors(a.order())) rad *= p;
  const Element gen = a.is_trivial() ? g.identity() : cyclic_generator(g, a);
  const Subgroup soc = cyclic_subgroup(g, g.pow(gen, static_cast<long long>(a.order() / rad)));
  if (!(centralizer(g, a) == centralizer(g, soc))) {
    ok = false;
    add_witness(v, "C_G(A) != C_G(Soc(A))");
  }
  const Subgroup z = center(g);
  json checked = json::array();
  for (auto p : prime_factors(g.order())) {
    const bool z_p_trivial =
        std::none_of(z.elements().begin(), z.elements().end(), [&](Element x) { return g.element_order(x) == p; });
    if (!z_p_trivial) continue;
    checked.push_back(p);
    if (!is_abelian(g, sylow_subgroup(g, p))) {
      ok = false;
      add_witness(v, "Sylow " + std::to_string(p) + "-subgroup non-abelian");
    }
  }
  v.conclusion = ok;
  v.quantities = {{"socle_order", soc.order()}, {"primes_with_trivial_central_part", checked}};
  return v;
}

bool fusion_holds(const FiniteGroup& g, Element x, const Subgroup& n) {
  std::vector<Element> cls = g.class_of_element(x).members;
  std::sort(cls.begin(), cls.end());
  return class_times(g, x, n) == cls;
}

LemmaVerdict check_fusion_outside_centralizer(const FiniteGroup& g, const Subgroup& a, Element x) {
  LemmaVerdict v;
  v.lemma = "fusion_outside_centralizer";
  v.hypotheses_hold = nilpotent_setting(g, a) && !centralizer(g, a).contains(x);
  if (!v.hypotheses_hold) return v;
  std::vector<Element> gens;
  for (Element y : a.elements())
    for (Element t = 0; t < g.order(); ++t) gens.push_back(g.comm(y, g.conj(x, t)));
  const Subgroup n = normal_closure(g, gens);
  const bool ok = !n.is_trivial() && n.is_subset_of(derived_subgroup(g)) && fusion_holds(g, x, n);
  v.conclusion = ok;
  if (!ok) add_witness(v, elt(g, x));
  v.quantities = {{"n_order", n.order()}};
  return v;
}

LemmaVerdict check_fusion_commutator(const FiniteGroup& g, Element g_elt, Element x) {
  LemmaVerdict v;
  v.lemma = "fusion_commutator";
  const Element c = g.comm(g_elt, x);
  const Subgroup n = cyclic_subgroup(g, c);
  bool hyp = c != g.identity() && is_normal(g, n) && g.comm(c, g_elt) == g.identity();
  for (Element h = 0; h < g.order() && hyp; ++h) hyp = g.comm(g.comm(g_elt, h), x) == g.identity();
  v.hypotheses_hold = hyp;
  if (!hyp) return v;
  v.conclusion = fusion_holds(g, g_elt, n);
  if (!*v.conclusion) add_witness(v, elt(g, g_elt) + "," + elt(g, x));
  return v;
}

LemmaVerdict check_commutator_odd(const FiniteGroup& g, const Subgroup& a) {
  LemmaVerdict v;
  v.lemma = "commutator_odd";
  v.hypotheses_hold = hamiltonian_setting(g, a);
  if (!v.hypotheses_hold) {
    v.note = "G/A is not Hamiltonian";
    return v;
  }
  const Subgroup a_odd = part_of(g, a, false);
  const Subgroup d2 = part_of(g, z_of(g, centralizer(g, a)), true);
  bool ok = true;
  std::size_t checked = 0;
  for (Element x = 0; x < g.order(); ++x) {
    if (g.element_order(x) % 2 == 0) continue;
    ++checked;
    for (Element h = 0; h < g.order(); ++h)
      if (!a_odd.contains(g.comm(x, h))) {
        ok = false;
        add_witness(v, "(" + elt(g, x) + "," + elt(g, h) + ") outside A_2'");
      }
    for (Element y : d2.elements())
      if (g.comm(x, y) != g.identity()) {
        ok = false;
        add_witness(v, "(" + elt(g, x) + "," + elt(g, y) + ") != 1 with y in D_2");
      }
  }
  v.conclusion = ok;
  v.quantities = {{"odd_elements", checked}, {"d2_order", d2.order()}};
  return v;
}

FormulaContext make_formula_context(const FiniteGroup& g, const Subgroup& a, std::uint64_t f, Element gamma,
                                    Element x_test) {
  if (!is_cyclic(g, a) || !is_normal(g, a)) throw InvalidInput("A must be a cyclic normal subgroup");
  if (f == 0) throw InvalidInput("f must be positive");
  FormulaContext ctx;
  ctx.group = &g;
  ctx.a = a;
  ctx.a_gen = a.is_trivial() ? g.identity() : cyclic_generator(g, a);
  ctx.n = a.order();
  ctx.c = centralizer(g, a);
  ctx.d = z_of(g, ctx.c);
  const Subgroup derived = derived_subgroup(g);
  for (Element y : derived.elements())
    if (g.element_order(y) == 2 && !a.contains(y)) {
      ctx.nu = y;
      break;
    }
  ctx.f = f;
  ctx.f1 = 1;
  for (auto p : prime_factors(f))
    if (ctx.d.order() % p == 0) ctx.f1 *= p_part(f, p);
  ctx.f2 = f / ctx.f1;
  const std::uint64_t bo = gcd_u(f, ctx.n);
  ctx.b = cyclic_subgroup(g, g.pow(ctx.a_gen, static_cast<long long>(ctx.n / bo)));
  ctx.gamma = gamma;
  ctx.x_test = x_test;
  return ctx;
}

bool strict_hamiltonian_setting(const FormulaContext& ctx) {
  const FiniteGroup& g = *ctx.group;
  if (!hamiltonian_setting(g, ctx.a) || cyclic_by_abelian(g) || !ctx.nu) return false;
  const Subgroup av = product(g, ctx.a, cyclic_subgroup(g, *ctx.nu));
  if (!av.is_subset_of(ctx.d)) return false;
  return !compute_KN(g, ctx.d).definitional.empty();
}

LemmaVerdict check_section5_bounds(const FormulaContext& ctx) {
  const FiniteGroup& g = *ctx.group;
  LemmaVerdict v;
  v.lemma = "intersection_bounds";
  v.hypotheses_hold = hamiltonian_setting(g, ctx.a) && ctx.d.contains(ctx.x_test) && ctx.d.contains(ctx.gamma);
  if (!v.hypotheses_hold) {
    v.note = "needs G/A Hamiltonian and x, gamma in D";
    return v;
  }
  const bool strict = strict_hamiltonian_setting(ctx);
  const auto kd = compute_KN(g, ctx.d).definitional;
  const Element xf = g.pow(ctx.x_test, static_cast<long long>(ctx.f));
  const std::size_t cxf = g.class_of_element(xf).centralizer_order;
  const std::size_t cx = g.class_of_element(ctx.x_test).centralizer_order;
  bool ok = true;
  auto fail = [&](const std::string& w) {
    ok = false;
    add_witness(v, w);
  };

  // ν-dependent structure: G' ⊆ A x <ν>
  const Subgroup derived = derived_subgroup(g);
  std::optional<Subgroup> av;
  if (ctx.nu) av = product(g, ctx.a, cyclic_subgroup(g, *ctx.nu));
  const bool nu_covers = av && derived.is_subset_of(*av);

  // (x^f, G) ∩ ν^G
  bool hits_nu_class = false;
  if (ctx.nu)
    for (Element t = 0; t < g.order(); ++t)
      if (g.class_of(g.comm(xf, t)) == g.class_of(*ctx.nu)) hits_nu_class = true;

  std::size_t max_y = 0;
  for (const auto& k : kd) {
    for (Element z = 0; z < g.order(); ++z) {
      const auto s = xy_sets(g, k, xf, z);
      max_y = std::max(max_y, s.y.size());
      if (s.y.size() > 2) fail("|Y| > 2 at z=" + elt(g, z));
      const std::size_t x_size = s.x.size();
      if (x_size != 0 && x_size != cxf && x_size != 2 * cxf) fail("|X| not in {0,1,2}|C_G(x^f)| at z=" + elt(g, z));
      if (strict && (ctx.f % 2 == 0 || !hits_nu_class) && x_size > cxf) fail("|X| > |C_G(x^f)| at z=" + elt(g, z));
    }
    if (strict) {
      const Subgroup kg = intersection(k, derived);
      const Subgroup kav = intersection(k, *av);
      const Subgroup nu1 = cyclic_subgroup(g, *ctx.nu);
      const Subgroup nu2 =
          cyclic_subgroup(g, g.mul(g.pow(ctx.a_gen, static_cast<long long>(ctx.n / 2)), *ctx.nu));
      if (!(kg == kav) || !(kav == nu1 || kav == nu2)) fail("K ∩ G' is not <ν> or <a^(n/2)ν>");
    }
  }
  if (strict) {
    std::vector<Element> want{*ctx.nu, g.mul(g.pow(ctx.a_gen, static_cast<long long>(ctx.n / 2)), *ctx.nu)};
    std::sort(want.begin(), want.end());
    std::vector<Element> cls = g.class_of_element(*ctx.nu).members;
    std::sort(cls.begin(), cls.end());
    if (cls != want) fail("ν^G != {ν, a^(n/2)ν}");
  }
  const std::uint64_t index = cxf / cx;
  const std::uint64_t index_bound = gcd_u(2, ctx.f) * gcd_u(ctx.f, ctx.n);
  if (nu_covers && index > index_bound) fail("[C_G(x^f):C_G(x)] exceeds gcd(2,f)gcd(f,n)");

  v.conclusion = ok;
  v.quantities = {{"n", ctx.n},
                  {"c_order", ctx.c.order()},
                  {"d_order", ctx.d.order()},
                  {"d_exponent", exponent(g, ctx.d)},
                  {"f", ctx.f},
                  {"f_prime", ctx.f1},
                  {"f_double_prime", ctx.f2},
                  {"b_order", ctx.b.order()},
                  {"kd_size", kd.size()},
                  {"strict", strict},
                  {"nu_present", ctx.nu.has_value()},
                  {"max_y", max_y},
                  {"centralizer_index", index},
                  {"index_bound", index_bound},
                  {"gamma_centralizer_over_d", g.class_of_element(ctx.gamma).centralizer_order / ctx.d.order()}};
  return v;
}

LemmaVerdict verify_eq41(const FiniteGroup& g, const Subgroup& n, Element u, Element x, std::uint64_t f) {
  LemmaVerdict v;
  v.lemma = "trace_identity";
  const std::uint64_t m = g.element_order(u);
  const Element gamma = g.pow(u, static_cast<long long>(f));
  // f must be the order of uN; for larger f the identity fails (Dic3, |u| = 4, f = 4)
  std::uint64_t f_min = 1;
  while (f_min < m && !n.contains(g.pow(u, static_cast<long long>(f_min)))) ++f_min;
  v.hypotheses_hold = f == f_min && is_normal(g, n) && is_abelian(g, n) && !n.contains(u) && n.contains(x) &&
                      g.pow(x, static_cast<long long>(m)) == g.identity() && n.contains(gamma);
  if (!v.hypotheses_hold) {
    v.note = "needs u outside N, x in N with x^m = 1, and f the order of uN";
    return v;
  }
  const auto kn = compute_KN(g, n).definitional;
  const Element xf = g.pow(x, static_cast<long long>(f));
  const std::uint64_t mf = m / f;
  const Rational cg_gamma_over_n(static_cast<std::int64_t>(g.class_of_element(gamma).centralizer_order / n.order()));
  std::vector<Element> gamma_class = g.class_of_element(gamma).members;
  const PowerChain chain_u = trivial_chain(g, u);
  const PowerChain chain_gamma = trivial_chain(g, gamma);

  // eigenvalue index of ψ(y) as an k-th root of unity
  auto eigen_index = [](const LinearCharacter& psi, Element y, std::uint64_t k) -> std::uint64_t {
    const auto e = static_cast<std::uint64_t>(psi.exponent[y]);
    return (e * k / psi.conductor) % k;
  };

  Rational left, sum_u_f;  // Σ φ μ(u)(ψ(x)),  Σ φ μ(u^f)(ψ(x^f))
  bool ok = true;
  auto fail = [&](const std::string& w) {
    ok = false;
    add_witness(v, w);
  };
  // per K: the multiplicity count and the quantities needed for the orbit sums
  std::vector<std::pair<Subgroup, bool>> reps;  // representative, already covered
  std::vector<Subgroup> seen;
  Rational orbit_sum;  // Σ_{K∈𝒦} φ/|N_G(K)| Σ_{z∈γ^G} |X_{K,x^f,z}|
  Rational orbit_sum_t;  // same with Σ_t |(x^f)^t K ∩ γ^G|
  for (const auto& k : kn) {
    const auto psi = linear_character(g, n, k);
    const auto chi = induce(g, psi);
    const auto mu_u = multiplicities(g, chain_u, chi).as_integers();
    const auto mu_f = multiplicities(g, chain_gamma, chi).as_integers();
    const Rational ph(static_cast<std::int64_t>(phi(n.order() / k.order())));
    left += ph * Rational(mu_u[eigen_index(psi, x, m)]);
    const std::int64_t mu_at = mu_f[eigen_index(psi, xf, mf)];
    sum_u_f += ph * Rational(mu_at);
    // μ = [C_G(γ):N] |x^f K ∩ γ^G|
    std::int64_t meet = 0;
    for (Element y : k.elements())
      if (g.class_of(g.mul(xf, y)) == g.class_of(gamma)) ++meet;
    if (Rational(mu_at) != cg_gamma_over_n * Rational(meet)) fail("multiplicity count, |K|=" + std::to_string(k.order()));

    if (std::any_of(seen.begin(), seen.end(), [&](const Subgroup& s) { return s == k; })) continue;
    // new conjugacy class representative
    for (Element t = 0; t < g.order(); ++t) {
      Subgroup kt = conjugate(g, k, t);
      if (std::none_of(seen.begin(), seen.end(), [&](const Subgroup& s) { return s == kt; })) seen.push_back(std::move(kt));
    }
    const Rational weight = ph / Rational(static_cast<std::int64_t>(normalizer(g, k).order()));
    std::int64_t sum_x = 0, sum_t = 0;
    for (Element z : gamma_class) sum_x += static_cast<std::int64_t>(xy_sets(g, k, xf, z).x.size());
    for (Element t = 0; t < g.order(); ++t) {
      const Element xt = g.conj(xf, t);
      for (Element y : k.elements())
        if (g.class_of(g.mul(xt, y)) == g.class_of(gamma)) ++sum_t;
    }
    if (sum_x != sum_t) fail("cardinal sum, |K|=" + std::to_string(k.order()));
    orbit_sum += weight * Rational(sum_x);
    orbit_sum_t += weight * Rational(sum_t);
  }
  if (sum_u_f != cg_gamma_over_n * orbit_sum_t) fail("multiplicity count summed over K");

  const Rational eps(g.class_of(x) == g.class_of(u) ? 1 : 0);
  const Rational first = Rational(static_cast<std::int64_t>(phi(m)), static_cast<std::int64_t>(m)) *
                         Rational(static_cast<std::int64_t>(g.class_of_element(x).centralizer_order)) * eps;
  const Rational fr(static_cast<std::int64_t>(f));
  const Rational right = first + cg_gamma_over_n / fr * orbit_sum;
  const Rational right_cited = first + sum_u_f / fr;
  if (left != right) fail("orbit form: left " + rat(left) + " right " + rat(right));
  if (left != right_cited) fail("multiplicity form: left " + rat(left) + " right " + rat(right_cited));
  v.conclusion = ok;
  v.quantities = {{"m", m}, {"f", f}, {"kn_size", kn.size()}, {"left", rat(left)}, {"right", rat(right)}};
  return v;
}

std::optional<CounterexampleShape> scan_shape(const FiniteGroup& g, const Subgroup& a) {
  const std::uint64_t n = a.order();
  if (n % 4 != 0) return std::nullopt;  // the relations use v^(n/4)
  const Subgroup a2 = part_of(g, a, true);
  const Subgroup c = centralizer(g, a);
  const Element e = g.identity();
  for (Element x : c.elements()) {
    if (g.element_order(x) != 4 || a.contains(g.mul(x, x))) continue;
    const Element x2 = g.mul(x, x);
    const Element xinv = g.inv(x);
    for (Element y = 0; y < g.order(); ++y) {
      if (g.mul(x2, g.mul(y, y)) != e) continue;
      for (Element w = 0; w < g.order(); ++w) {
        if (g.mul(w, w) != e) continue;
        const Element v = g.comm(y, w);
        if (!a2.contains(v) || g.element_order(v) != a2.order()) continue;
        if (g.conj(v, w) != g.inv(v)) continue;
        if (g.conj(v, y) != g.pow(v, static_cast<long long>(n / 2 - 1))) continue;
        if (g.conj(x, w) != g.mul(g.pow(v, static_cast<long long>(n / 4)), x)) continue;
        const Element xy = g.conj(x, y);
        if (xy != xinv && xy != g.mul(xinv, g.pow(v, static_cast<long long>(n / 2)))) continue;
        return CounterexampleShape{x, y, w, v, n};
      }
    }
  }
  return std::nullopt;
}

Thm13Conditions check_thm13_conditions(const FiniteGroup& g, const Subgroup& a) {
  Thm13Conditions t;
  const std::uint64_t n = a.order();
  t.a_not_multiple_of_8 = n % 8 != 0;
  t.index_not_multiple_of_16 = (g.order() / n) % 16 != 0;
  const Subgroup a2 = part_of(g, a, true);
  std::set<std::int64_t> image;
  if (a2.is_trivial()) {
    image.insert(1);
  } else {
    const Element gen = cyclic_generator(g, a2);
    for (Element h = 0; h < g.order(); ++h) {
      const Element img = g.conj(gen, h);
      for (std::int64_t r = 1; r <= static_cast<std::int64_t>(a2.order()); ++r)
        if (g.pow(gen, r) == img) {
          image.insert(r);
          break;
        }
    }
  }
  t.action_image_order = image.size();
  t.action_image_not_4 = image.size() != 4;
  return t;
}

namespace {

LemmaVerdict formak_verdict(const CorpusEntry& e) {
  const FiniteGroup& g = e.group;
  LemmaVerdict v;
  v.lemma = "formak";
  std::size_t instances = 0;
  for (const auto& n : normal_subgroups(g)) {
    if (!is_abelian(g, n) || !e.witness.is_subset_of(n)) continue;
    const auto kn = compute_KN(g, n, e.witness);
    if (!kn.hypotheses_hold) continue;
    ++instances;
    const bool ok = kn.sets_agree && kn.size_bound && kn.index_equals_exponent;
    record(v, ok, "|N|=" + std::to_string(n.order()));
  }
  if (!v.hypotheses_hold) v.note = "no abelian normal N over a cyclic A with nilpotent quotient";
  v.quantities = {{"instances", instances}};
  return v;
}

LemmaVerdict exponent_count_verdict(const FiniteGroup& g) {
  LemmaVerdict v;
  v.lemma = "exponent_count";
  std::set<Subgroup> seen;
  for (const auto& n : normal_subgroups(g)) {
    if (!is_abelian(g, n)) continue;
    for (const auto& p : abelian_subgroup_lattice(g, n)) {
      if (p.is_trivial() || !is_prime_power(p.order()) || !seen.insert(p).second) continue;
      const auto c = count_exponent_elements(g, p, prime_factors(p.order())[0]);
      record(v, c.closed_form == c.brute_force, "|P|=" + std::to_string(p.order()));
    }
  }
  v.quantities = {{"subgroups", seen.size()}};
  return v;
}

LemmaVerdict cardinal_verdict(const CorpusEntry& e, std::size_t max_order) {
  const FiniteGroup& g = e.group;
  LemmaVerdict v;
  v.lemma = "cardinal_xs";
  if (g.order() > max_order) {
    v.note = "order above the exhaustive limit " + std::to_string(max_order);
    return v;
  }
  std::vector<Subgroup> ks;
  std::set<Subgroup> seen_k;
  for (const auto& n : normal_subgroups(g)) {
    if (!is_abelian(g, n)) continue;
    for (auto& k : compute_KN(g, n).definitional)
      if (seen_k.insert(k).second) ks.push_back(std::move(k));
  }
  std::set<Subgroup> kd;
  const bool hamiltonian = hamiltonian_setting(g, e.witness);
  if (hamiltonian)
    for (auto& k : compute_KN(g, z_of(g, centralizer(g, e.witness))).definitional) kd.insert(std::move(k));

  // conj[x][t] = x^t
  std::vector<std::vector<Element>> conj(g.order(), std::vector<Element>(g.order()));
  for (Element x = 0; x < g.order(); ++x)
    for (Element t = 0; t < g.order(); ++t) conj[x][t] = g.conj(x, t);
  std::size_t triples = 0;
  for (const auto& k : ks) {
    // |Y_{K,c}| for c = g^h, depends on c only
    std::vector<std::size_t> y_size(g.order());
    for (Element c = 0; c < g.order(); ++c) {
      std::vector<char> in(g.order(), 0);
      std::size_t count = 0;
      for (Element w = 0; w < g.order(); ++w) {
        const Element com = g.comm(c, w);
        if (k.contains(com) && !in[com]) {
          in[com] = 1;
          ++count;
        }
      }
      y_size[c] = count;
    }
    const bool in_kd = kd.count(k) > 0;
    for (Element x = 0; x < g.order(); ++x) {
      const std::size_t cg = g.class_of_element(x).centralizer_order;
      for (Element h = 0; h < g.order(); ++h) {
        ++triples;
        const Element hinv = g.inv(h);
        std::vector<Element> xs;
        for (Element t = 0; t < g.order(); ++t)
          if (k.contains(g.mul(hinv, conj[x][t]))) xs.push_back(t);
        bool ok = xs.size() % cg == 0;
        for (Element t : xs) ok = ok && xs.size() <= cg * y_size[conj[x][t]];
        if (in_kd) ok = ok && (xs.empty() || xs.size() == cg || xs.size() == 2 * cg);
        record(v, ok, "K order " + std::to_string(k.order()) + ", g=" + elt(g, x) + ", h=" + elt(g, h));
      }
    }
  }
  if (!v.hypotheses_hold) v.note = "no subgroup K in any K_N";
  v.quantities = {{"k_count", ks.size()}, {"kd_count", kd.size()}, {"triples", triples}};
  return v;
}

// Deterministic stride sample of at most `limit` items.
template <typename T>
std::vector<T> stride_sample(const std::vector<T>& items, std::size_t limit) {
  if (items.size() <= limit) return items;
  std::vector<T> out;
  out.reserve(limit);
  for (std::size_t i = 0; i < limit; ++i) out.push_back(items[i * items.size() / limit]);
  return out;
}

struct Triple {
  Element u, x;
  std::uint64_t f;
};

std::vector<Triple> trace_triples(const FiniteGroup& g, const Subgroup& d) {
  std::vector<Triple> out;
  for (const auto& cls : g.classes()) {
    const Element u = cls.representative;
    if (d.contains(u)) continue;
    const std::uint64_t m = g.element_order(u);
    std::uint64_t f = 1;
    while (!d.contains(g.pow(u, static_cast<long long>(f)))) ++f;
    for (Element x : d.elements())
      if (g.pow(x, static_cast<long long>(m)) == g.identity()) out.push_back({u, x, f});
  }
  return out;
}

LemmaVerdict trace_verdict(const CorpusEntry& e, std::size_t limit) {
  const FiniteGroup& g = e.group;
  LemmaVerdict v;
  v.lemma = "trace_identity";
  const Subgroup d = z_of(g, centralizer(g, e.witness));
  const auto kd = compute_KN(g, d).definitional;
  const auto all = trace_triples(g, d);
  const auto sample = stride_sample(all, limit);
  for (const auto& t : sample) {
    const auto r = verify_eq41(g, d, t.u, t.x, t.f);
    if (!r.hypotheses_hold) continue;
    record(v, *r.conclusion,
           "u=" + elt(g, t.u) + " x=" + elt(g, t.x) + " f=" + std::to_string(t.f) +
               (r.witnesses.empty() ? "" : " " + r.witnesses.front()));
  }
  if (!v.hypotheses_hold) v.note = "no element outside D";
  v.quantities = {{"d_order", d.order()}, {"kd_size", kd.size()}, {"triples", all.size()}, {"sampled", sample.size()}};
  return v;
}

LemmaVerdict intersection_verdict(const CorpusEntry& e, std::size_t limit) {
  const FiniteGroup& g = e.group;
  LemmaVerdict v;
  v.lemma = "intersection_bounds";
  if (!hamiltonian_setting(g, e.witness)) {
    v.note = "G/A is not Hamiltonian";
    return v;
  }
  const Subgroup d = z_of(g, centralizer(g, e.witness));
  // f = |uD| for u outside D, γ = u^f, x over D
  std::vector<Triple> items;
  for (const auto& cls : g.classes()) {
    const Element u = cls.representative;
    if (d.contains(u)) continue;
    std::uint64_t f = 1;
    while (!d.contains(g.pow(u, static_cast<long long>(f)))) ++f;
    for (Element x : d.elements()) items.push_back({u, x, f});
  }
  std::size_t strict = 0;
  json strict_seen = false;
  for (const auto& t : stride_sample(items, limit)) {
    const auto ctx = make_formula_context(g, e.witness, t.f, g.pow(t.u, static_cast<long long>(t.f)), t.x);
    const auto r = check_section5_bounds(ctx);
    if (!r.hypotheses_hold) continue;
    if (r.quantities.value("strict", false)) ++strict;
    record(v, *r.conclusion,
           "u=" + elt(g, t.u) + " x=" + elt(g, t.x) + (r.witnesses.empty() ? "" : " " + r.witnesses.front()));
  }
  const auto base = make_formula_context(g, e.witness, 1, g.identity(), g.identity());
  v.quantities = {{"contexts", items.size()},
                  {"strict_contexts", strict},
                  {"d_order", d.order()},
                  {"nu_present", base.nu.has_value()},
                  {"cyclic_by_abelian", cyclic_by_abelian(g)}};
  return v;
}

LemmaVerdict fusion_i_verdict(const CorpusEntry& e) {
  const FiniteGroup& g = e.group;
  LemmaVerdict v;
  v.lemma = "fusion_outside_centralizer";
  std::size_t count = 0;
  for (const auto& cls : g.classes()) {
    const auto r = check_fusion_outside_centralizer(g, e.witness, cls.representative);
    if (!r.hypotheses_hold) continue;
    ++count;
    record(v, *r.conclusion, elt(g, cls.representative));
  }
  if (!v.hypotheses_hold) v.note = "every class centralizes A, or G/A is not nilpotent";
  v.quantities = {{"classes", count}};
  return v;
}

LemmaVerdict fusion_ii_verdict(const CorpusEntry& e) {
  const FiniteGroup& g = e.group;
  LemmaVerdict v;
  v.lemma = "fusion_commutator";
  std::size_t count = 0;
  for (const auto& cls : g.classes())
    for (Element x = 0; x < g.order(); ++x) {
      const auto r = check_fusion_commutator(g, cls.representative, x);
      if (!r.hypotheses_hold) continue;
      ++count;
      record(v, *r.conclusion, elt(g, cls.representative) + "," + elt(g, x));
    }
  if (!v.hypotheses_hold) v.note = "no pair satisfies the commutator pattern";
  v.quantities = {{"pairs", count}};
  return v;
}

LemmaVerdict shape_verdict(const CorpusEntry& e) {
  const FiniteGroup& g = e.group;
  LemmaVerdict v;
  v.lemma = "counterexample_shape";
  if (!hamiltonian_setting(g, e.witness)) {
    v.note = "G/A is not Hamiltonian";
    return v;
  }
  const auto cond = check_thm13_conditions(g, e.witness);
  const auto shape = scan_shape(g, e.witness);
  v.quantities = {{"n", e.witness.order()},
                  {"index", g.order() / e.witness.order()},
                  {"a_not_multiple_of_8", cond.a_not_multiple_of_8},
                  {"index_not_multiple_of_16", cond.index_not_multiple_of_16},
                  {"action_image_order", cond.action_image_order},
                  {"shape_found", shape.has_value()}};
  v.hypotheses_hold = cond.any();
  if (!v.hypotheses_hold) {
    v.note = "no sufficient condition holds; the scan result is informational";
    return v;
  }
  v.conclusion = !shape.has_value();
  if (shape)
    add_witness(v, "x=" + elt(g, shape->x) + " y=" + elt(g, shape->y) + " w=" + elt(g, shape->w) + " v=" +
                       elt(g, shape->v));
  return v;
}

}  // namespace

std::vector<LemmaVerdict> lemma_verdicts(const CorpusEntry& e, const LemmaSuiteOptions& options) {
  std::vector<LemmaVerdict> out;
  out.push_back(check_centralizer_lemma(e.group, e.witness));
  out.push_back(check_hall_lemma(e.group, e.witness));
  out.push_back(fusion_i_verdict(e));
  out.push_back(fusion_ii_verdict(e));
  out.push_back(check_commutator_odd(e.group, e.witness));
  out.push_back(formak_verdict(e));
  out.push_back(exponent_count_verdict(e.group));
  out.push_back(cardinal_verdict(e, options.cardinal_max_order));
  out.push_back(trace_verdict(e, options.trace_samples));
  out.push_back(intersection_verdict(e, options.trace_samples));
  out.push_back(shape_verdict(e));
  return out;
}

nlohmann::json run_lemma_suite(const std::vector<CorpusEntry>& entries, const LemmaSuiteOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<json> results(entries.size());
  parallel_for(entries.size(), options.workers, [&](std::size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& e = entries[i];
    json verdicts = json::array();
    for (const auto& v : lemma_verdicts(e, options)) verdicts.push_back(to_json(v));
    results[i] = {{"id", e.id},
                  {"family", family_name(e.family)},
                  {"order", e.group.order()},
                  {"witness_order", e.witness.order()},
                  {"verdicts", verdicts},
                  {"elapsed_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()}};
  });
  std::size_t total = 0, applicable = 0, violations = 0;
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_lemma;  // applicable, violations
  for (const auto& r : results)
    for (const auto& v : r["verdicts"]) {
      ++total;
      auto& slot = per_lemma[v["lemma"].get<std::string>()];
      if (v["hypotheses_hold"].get<bool>()) {
        ++applicable;
        ++slot.first;
        if (v["conclusion_holds"] == false) {
          ++violations;
          ++slot.second;
        }
      }
    }
  json lemmas = json::object();
  for (const auto& [k, s] : per_lemma) lemmas[k] = {{"applicable", s.first}, {"violations", s.second}};
  json ledger;
  ledger["schema_version"] = 1;
  ledger["entries"] = results;
  ledger["summary"] = {{"entries", entries.size()},
                       {"verdicts", total},
                       {"applicable", applicable},
                       {"violations", violations},
                       {"lemmas", lemmas}};
  ledger["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return ledger;
}

nlohmann::json strip_timing(nlohmann::json ledger) {
  if (ledger.is_object()) {
    ledger.erase("elapsed_ms");
    for (auto& [k, v] : ledger.items()) v = strip_timing(std::move(v));
  } else if (ledger.is_array()) {
    for (auto& v : ledger) v = strip_timing(std::move(v));
  }
  return ledger;
}

}  // namespace helpkit
