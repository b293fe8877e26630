#include "helpkit/characters.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "helpkit/arith.hpp"
#include "helpkit/structure.hpp"

namespace helpkit {

namespace {

// Least j >= 1 with t^j ∈ K.
std::size_t order_mod(const FiniteGroup& g, Element t, const Subgroup& k) {
  std::size_t j = 1;
  Element cur = t;
  while (!k.contains(cur)) {
    cur = g.mul(cur, t);
    ++j;
  }
  return j;
}

std::vector<Subgroup> cyclic_subgroups_of(const FiniteGroup& g, const Subgroup& n) {
  std::set<Subgroup> seen;
  for (Element x : n.elements()) seen.insert(subgroup_closure(g, std::span<const Element>(&x, 1)));
  return {seen.begin(), seen.end()};
}

// Values are promoted to a common conductor so equal numbers get equal keys.
std::string values_key(const std::vector<Cyclotomic>& values, std::uint64_t e) {
  std::string key;
  for (const auto& v : values) {
    key += v.promote(e).to_string();
    key += '|';
  }
  return key;
}

}  // namespace

std::vector<Subgroup> abelian_subgroup_lattice(const FiniteGroup& g, const Subgroup& n) {
  if (!is_abelian(g, n)) throw InvalidInput("subgroup lattice requested for a non-abelian subgroup");
  const auto cyclic = cyclic_subgroups_of(g, n);
  std::unordered_set<Subgroup, SubgroupHash> seen{g.trivial()};
  std::vector<Subgroup> queue{g.trivial()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& c : cyclic) {
      if (c.is_subset_of(queue[i])) continue;
      Subgroup j = product(g, queue[i], c);
      if (seen.insert(j).second) queue.push_back(std::move(j));
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

std::vector<std::uint64_t> abelian_invariants(const FiniteGroup& g, const Subgroup& n) {
  if (!is_abelian(g, n)) throw InvalidInput("invariants requested for a non-abelian subgroup");
  std::vector<std::uint64_t> out;
  for (auto p : prime_factors(n.order())) {
    // omega[k] = |{x : x^(p^k) = 1}|
    std::vector<std::uint64_t> omega{1};
    std::uint64_t pk = 1;
    while (omega.back() < p_part(n.order(), p)) {
      pk *= p;
      std::uint64_t count = 0;
      for (Element x : n.elements())
        if (pk % g.element_order(x) == 0) ++count;
      omega.push_back(count);
    }
    // r[k] = number of cyclic factors of order >= p^k
    std::vector<std::uint64_t> r(omega.size() + 1, 0);
    for (std::size_t k = 1; k < omega.size(); ++k) {
      std::uint64_t ratio = omega[k] / omega[k - 1], rk = 0;
      while (ratio > 1) {
        ratio /= p;
        ++rk;
      }
      r[k] = rk;
    }
    std::uint64_t q = 1;
    for (std::size_t k = 1; k < omega.size(); ++k) {
      q *= p;
      for (std::uint64_t c = 0; c < r[k] - r[k + 1]; ++c) out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool cyclic_quotient(const FiniteGroup& g, const Subgroup& n, const Subgroup& k) {
  if (!k.is_subset_of(n)) return false;
  for (Element y : n.elements())
    for (Element x : k.elements())
      if (!k.contains(g.conj(x, y))) return false;
  const std::size_t index = n.order() / k.order();
  return std::any_of(n.elements().begin(), n.elements().end(),
                     [&](Element t) { return order_mod(g, t, k) == index; });
}

KNResult compute_KN(const FiniteGroup& g, const Subgroup& n, const std::optional<Subgroup>& a) {
  if (!is_normal(g, n)) throw InvalidInput("K_N needs a normal subgroup N");
  KNResult r;
  const auto lattice = abelian_subgroup_lattice(g, n);
  r.exponent = exponent(g, n);
  for (const auto& k : lattice)
    if (cyclic_quotient(g, n, k) && normal_core(g, k).is_trivial()) r.definitional.push_back(k);

  if (a) {
    r.hypotheses_hold = is_cyclic(g, *a) && is_normal(g, *a) && a->is_subset_of(n) &&
                        is_nilpotent(quotient(g, *a).target);
  }
  if (r.hypotheses_hold) {
    const Subgroup z = center(g);
    for (const auto& k : lattice)
      if (intersection(k, *a).is_trivial() && intersection(k, z).is_trivial() && cyclic_quotient(g, n, k))
        r.characterized.push_back(k);
    r.sets_agree = r.characterized == r.definitional;
  }
  r.size_bound = r.definitional.size() * r.exponent <= n.order();
  for (const auto& k : r.definitional)
    if (n.order() / k.order() != r.exponent) r.index_equals_exponent = false;
  return r;
}

ExponentCount count_exponent_elements(const FiniteGroup& g, const Subgroup& n, std::uint64_t p) {
  if (n.is_trivial() || !is_abelian(g, n) || p_part(n.order(), p) != n.order())
    throw InvalidInput("exponent count needs a non-trivial abelian p-group");
  ExponentCount c;
  c.p = p;
  const auto inv = abelian_invariants(g, n);
  const std::uint64_t top = inv.back();
  for (std::uint64_t q = top; q > 1; q /= p) ++c.e;
  c.l = static_cast<std::uint64_t>(std::count(inv.begin(), inv.end(), top));
  c.q_order = n.order();
  for (std::uint64_t i = 0; i < c.l; ++i) c.q_order /= top;
  std::uint64_t pl = 1;
  for (std::uint64_t i = 0; i < c.l * (c.e - 1); ++i) pl *= p;
  c.closed_form = n.order() - pl * c.q_order;
  for (Element x : n.elements())
    if (g.element_order(x) == top) ++c.brute_force;
  return c;
}

Cyclotomic LinearCharacter::value(Element x) const {
  if (exponent[x] < 0) return Cyclotomic(conductor);
  return Cyclotomic::zeta(conductor, exponent[x]);
}

LinearCharacter linear_character(const FiniteGroup& g, const Subgroup& n, const Subgroup& k) {
  if (!cyclic_quotient(g, n, k)) throw InvalidInput("linear character needs K ⊴ N with N/K cyclic");
  LinearCharacter psi;
  psi.domain = n;
  psi.kernel = k;
  psi.conductor = n.order() / k.order();
  for (Element t : n.elements())
    if (order_mod(g, t, k) == psi.conductor) {
      psi.generator = t;
      break;
    }
  psi.exponent.assign(g.order(), -1);
  Element base = g.identity();
  for (std::uint64_t j = 0; j < psi.conductor; ++j) {
    for (Element y : k.elements()) psi.exponent[g.mul(base, y)] = static_cast<std::int32_t>(j);
    base = g.mul(base, psi.generator);
  }
  return psi;
}

ClassFunction induce(const FiniteGroup& g, const LinearCharacter& psi) {
  if (!is_normal(g, psi.domain)) throw InvalidInput("induction from a non-normal subgroup");
  ClassFunction chi;
  chi.conductor = psi.conductor;
  chi.name = "ind[N=" + std::to_string(psi.domain.order()) + ",K=" + std::to_string(psi.kernel.order()) +
             ",t=" + std::to_string(psi.generator) + "]";
  for (const auto& cls : g.classes()) {
    if (psi.exponent[cls.representative] < 0) {
      chi.values.emplace_back(psi.conductor);
      continue;
    }
    std::vector<Rational> counts(psi.conductor);
    for (Element y : cls.members) counts[static_cast<std::size_t>(psi.exponent[y])] += Rational(1);
    const Rational scale(static_cast<std::int64_t>(cls.centralizer_order), static_cast<std::int64_t>(psi.domain.order()));
    for (auto& c : counts) c *= scale;
    chi.values.push_back(Cyclotomic::from_exponents(psi.conductor, counts));
  }
  return chi;
}

Cyclotomic frobenius_value(const FiniteGroup& g, const LinearCharacter& psi, Element x) {
  Cyclotomic sum(psi.conductor);
  for (std::size_t t = 0; t < g.order(); ++t) {
    const Element y = g.mul(g.mul(static_cast<Element>(t), x), g.inv(static_cast<Element>(t)));
    if (psi.domain.contains(y)) sum += psi.value(y);
  }
  return sum.scaled(Rational(1, static_cast<std::int64_t>(psi.domain.order())));
}

Rational inner_product_norm(const FiniteGroup& g, const ClassFunction& chi) {
  Cyclotomic sum(chi.conductor);
  for (std::size_t c = 0; c < g.classes().size(); ++c)
    sum += (chi.values[c] * chi.values[c].conj()).scaled(Rational(static_cast<std::int64_t>(g.classes()[c].size())));
  auto r = sum.as_rational();
  if (!r) throw std::logic_error("character norm is not rational");
  return *r / Rational(static_cast<std::int64_t>(g.order()));
}

CharacterSelection parse_selection(const std::string& s) {
  if (s == "linear") return CharacterSelection::Linear;
  if (s == "induced") return CharacterSelection::Induced;
  if (s == "all") return CharacterSelection::All;
  throw InvalidInput("character selection must be linear, induced or all");
}

std::string selection_name(CharacterSelection s) {
  switch (s) {
    case CharacterSelection::Linear: return "linear";
    case CharacterSelection::Induced: return "induced";
    case CharacterSelection::All: return "all";
  }
  return "all";
}

std::vector<ClassFunction> default_characters(const FiniteGroup& g, CharacterSelection sel) {
  std::vector<ClassFunction> out;
  std::set<std::string> seen;
  const std::uint64_t common = exponent(g);
  auto add = [&](ClassFunction chi) {
    std::string key = values_key(chi.values, common);
    if (seen.count(key)) return;
    for (std::uint64_t k = 2; k < chi.conductor; ++k) {
      if (gcd_u(k, chi.conductor) != 1) continue;
      std::vector<Cyclotomic> twisted;
      for (const auto& v : chi.values) twisted.push_back(v.galois(static_cast<std::int64_t>(k)));
      seen.insert(values_key(twisted, common));
    }
    seen.insert(std::move(key));
    out.push_back(std::move(chi));
  };

  const auto normals = normal_subgroups(g);
  if (sel != CharacterSelection::Induced) {
    const Subgroup whole = g.whole();
    const Subgroup derived = derived_subgroup(g);
    for (const auto& k : normals) {
      if (!derived.is_subset_of(k) || !cyclic_quotient(g, whole, k)) continue;
      auto psi = linear_character(g, whole, k);
      ClassFunction chi;
      chi.conductor = psi.conductor;
      chi.name = "lin[K=" + std::to_string(k.order()) + ",t=" + std::to_string(psi.generator) + "]";
      for (const auto& cls : g.classes()) chi.values.push_back(psi.value(cls.representative));
      add(std::move(chi));
    }
  }
  if (sel != CharacterSelection::Linear) {
    for (const auto& n : normals) {
      if (!is_abelian(g, n)) continue;
      for (const auto& k : abelian_subgroup_lattice(g, n))
        if (cyclic_quotient(g, n, k)) add(induce(g, linear_character(g, n, k)));
    }
  }
  return out;
}

std::vector<Element> y_set(const FiniteGroup& g, const Subgroup& k, Element g_elt, Element h) {
  const Element gh = g.conj(g_elt, h);
  std::vector<char> in(g.order(), 0);
  for (std::size_t w = 0; w < g.order(); ++w) {
    const Element c = g.comm(gh, static_cast<Element>(w));
    if (k.contains(c)) in[c] = 1;
  }
  std::vector<Element> out;
  for (std::size_t i = 0; i < g.order(); ++i)
    if (in[i]) out.push_back(static_cast<Element>(i));
  return out;
}

XYSets xy_sets(const FiniteGroup& g, const Subgroup& k, Element g_elt, Element h) {
  XYSets s;
  const Element hinv = g.inv(h);
  for (std::size_t t = 0; t < g.order(); ++t)
    if (k.contains(g.mul(hinv, g.conj(g_elt, static_cast<Element>(t))))) s.x.push_back(static_cast<Element>(t));
  s.y = y_set(g, k, g_elt, h);
  return s;
}

}  // namespace helpkit
