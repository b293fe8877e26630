#include "helpkit/structure.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

#include "helpkit/arith.hpp"

namespace helpkit {

Subgroup center(const FiniteGroup& g) {
  std::vector<Element> out;
  for (const auto& c : g.classes())
    if (c.size() == 1) out.push_back(c.representative);
  return Subgroup(g.order(), std::move(out));
}

Subgroup derived_subgroup(const FiniteGroup& g) {
  std::vector<Element> comms;
  auto gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) comms.push_back(g.comm(gens[i], gens[j]));
  return normal_closure(g, comms);
}

std::uint64_t exponent(const FiniteGroup& g) { return exponent(g, g.whole()); }

std::uint64_t exponent(const FiniteGroup& g, const Subgroup& h) {
  std::uint64_t e = 1;
  for (Element x : h.elements()) e = lcm_u(e, g.element_order(x));
  return e;
}

Subgroup sylow_subgroup(const FiniteGroup& g, std::uint64_t p) {
  const std::uint64_t target = p_part(g.order(), p);
  Subgroup h = g.trivial();
  // If |H| < |G|_p then p divides [N_G(H) : H], so N_G(H)/H has an element
  // of order p and H can always be enlarged without backtracking.
  while (h.order() < target) {
    Subgroup n = normalizer(g, h);
    bool grown = false;
    for (Element x : n.elements()) {
      if (h.contains(x) || !h.contains(g.pow(x, static_cast<long long>(p)))) continue;
      std::vector<Element> gens(h.elements().begin(), h.elements().end());
      gens.push_back(x);
      h = subgroup_closure(g, gens);
      grown = true;
      break;
    }
    if (!grown) throw GroupError("Sylow growth stalled");
  }
  return h;
}

bool is_nilpotent(const FiniteGroup& g) {
  for (auto p : prime_factors(g.order()))
    if (!is_normal(g, sylow_subgroup(g, p))) return false;
  return true;
}

bool is_hamiltonian(const FiniteGroup& g) {
  if (is_abelian(g, g.whole())) return false;
  for (std::size_t x = 0; x < g.order(); ++x) {
    const auto e = static_cast<Element>(x);
    const std::size_t o = g.element_order(e);
    for (Element s : g.generators()) {
      Element c = g.conj(e, s);
      // c lies in <e> iff c = e^k for some k
      bool inside = false;
      Element cur = g.identity();
      for (std::size_t k = 0; k < o && !inside; ++k) {
        if (cur == c) inside = true;
        cur = g.mul(cur, e);
      }
      if (!inside) return false;
    }
  }
  return true;
}

namespace {

std::vector<Subgroup> class_closures(const FiniteGroup& g) {
  std::vector<Subgroup> out;
  for (const auto& c : g.classes()) {
    if (c.representative == g.identity()) continue;
    Element r = c.representative;
    out.push_back(normal_closure(g, std::span<const Element>(&r, 1)));
  }
  return out;
}

// <N, M> for N, M normal, by extending N's elements with M's.
Subgroup normal_join(const FiniteGroup& g, const Subgroup& n, const Subgroup& m) {
  if (m.is_subset_of(n)) return n;
  if (n.is_subset_of(m)) return m;
  return product(g, n, m);
}

}  // namespace

std::vector<Subgroup> normal_subgroups(const FiniteGroup& g) {
  auto closures = class_closures(g);
  std::sort(closures.begin(), closures.end());
  closures.erase(std::unique(closures.begin(), closures.end()), closures.end());
  std::unordered_set<Subgroup, SubgroupHash> seen;
  std::vector<Subgroup> queue{g.trivial()};
  seen.insert(g.trivial());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& m : closures) {
      if (m.is_subset_of(queue[i])) continue;
      Subgroup j = normal_join(g, queue[i], m);
      if (seen.insert(j).second) queue.push_back(std::move(j));
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

std::vector<Subgroup> minimal_normal_subgroups(const FiniteGroup& g) {
  auto closures = class_closures(g);
  std::sort(closures.begin(), closures.end());
  closures.erase(std::unique(closures.begin(), closures.end()), closures.end());
  std::vector<Subgroup> out;
  for (const auto& c : closures) {
    bool minimal = std::none_of(closures.begin(), closures.end(), [&](const Subgroup& d) {
      return d.order() < c.order() && d.is_subset_of(c);
    });
    if (minimal) out.push_back(c);
  }
  return out;
}

Subgroup socle(const FiniteGroup& g) {
  Subgroup s = g.trivial();
  for (const auto& m : minimal_normal_subgroups(g)) s = normal_join(g, s, m);
  return s;
}

StructureReport structure_report(const FiniteGroup& g) {
  StructureReport r;
  r.order = g.order();
  r.class_count = g.classes().size();
  r.center = center(g);
  r.derived = derived_subgroup(g);
  r.socle = socle(g);
  r.exponent = exponent(g);
  r.is_abelian = r.center.order() == g.order();
  r.is_nilpotent = true;
  for (auto p : prime_factors(g.order())) {
    Subgroup s = sylow_subgroup(g, p);
    if (!is_normal(g, s)) r.is_nilpotent = false;
    r.sylow.emplace(p, std::move(s));
  }
  r.is_hamiltonian = is_hamiltonian(g);
  return r;
}

std::string fingerprint(const FiniteGroup& g) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> shape;
  for (const auto& c : g.classes()) ++shape[{c.size(), g.element_order(c.representative)}];
  std::ostringstream os;
  os << g.order() << ':' << g.classes().size();
  for (const auto& [key, count] : shape) os << ' ' << key.first << '/' << key.second << 'x' << count;
  os << " d" << derived_subgroup(g).order() << " z" << center(g).order();
  return os.str();
}

}  // namespace helpkit
