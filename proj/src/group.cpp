#include "helpkit/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "helpkit/arith.hpp"

namespace helpkit {

namespace {

std::vector<std::uint64_t> make_mask(std::size_t n, std::span<const Element> elements) {
  std::vector<std::uint64_t> mask((n + 63) / 64, 0);
  for (Element e : elements) mask[e >> 6] |= std::uint64_t{1} << (e & 63);
  return mask;
}

// Smallest generating set found by scanning H in index order.
std::vector<Element> greedy_generators(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Element> gens;
  Subgroup current = g.trivial();
  for (Element x : h.elements()) {
    if (current.order() == h.order()) break;
    if (!current.contains(x)) {
      gens.push_back(x);
      current = subgroup_closure(g, gens);
    }
  }
  return gens;
}

}  // namespace

// ---------------------------------------------------------------- Subgroup

Subgroup::Subgroup(std::size_t parent_order, std::vector<Element> elements)
    : parent_order_(parent_order), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  mask_ = make_mask(parent_order_, elements_);
}

bool Subgroup::is_subset_of(const Subgroup& other) const noexcept {
  if (mask_.size() != other.mask_.size()) return false;
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if ((mask_[i] & ~other.mask_[i]) != 0) return false;
  return true;
}

bool operator<(const Subgroup& a, const Subgroup& b) noexcept {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.elements_ < b.elements_;
}

std::size_t SubgroupHash::operator()(const Subgroup& h) const noexcept {
  std::size_t seed = h.order();
  for (auto w : h.mask()) seed ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}

// ------------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup() : n_(1), identity_(0), table_{0} { compute_derived_data(); }

FiniteGroup FiniteGroup::from_table(std::vector<Element> table, std::size_t order,
                                    std::vector<std::string> labels,
                                    std::vector<Element> generators) {
  if (order == 0) throw GroupError("group order must be positive");
  if (order > kDefaultOrderCap)
    throw CapExceeded("group order " + std::to_string(order) + " exceeds cap " +
                      std::to_string(kDefaultOrderCap));
  if (table.size() != order * order) throw GroupError("table size does not match order");
  if (!labels.empty() && labels.size() != order) throw GroupError("label count does not match order");
  for (Element e : table)
    if (e >= order) throw GroupError("table entry out of range");

  // Latin square: every row and column is a permutation.
  std::vector<char> seen(order);
  for (std::size_t r = 0; r < order; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t c = 0; c < order; ++c) {
      if (seen[table[r * order + c]]++) throw GroupError("row " + std::to_string(r) + " repeats an entry");
    }
  }
  for (std::size_t c = 0; c < order; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t r = 0; r < order; ++r) {
      if (seen[table[r * order + c]]++) throw GroupError("column " + std::to_string(c) + " repeats an entry");
    }
  }

  FiniteGroup g;
  g.n_ = order;
  g.table_ = std::move(table);
  g.labels_ = std::move(labels);

  bool found = false;
  for (std::size_t e = 0; e < order && !found; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < order && ok; ++x)
      ok = g.table_[e * order + x] == x && g.table_[x * order + e] == x;
    if (ok) {
      g.identity_ = static_cast<Element>(e);
      found = true;
    }
  }
  if (!found) throw GroupError("table has no two-sided identity");

  for (Element s : generators)
    if (s >= order) throw GroupError("generator out of range");
  g.generators_ = std::move(generators);
  g.inverse_.assign(order, 0);
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y)
      if (g.table_[x * order + y] == g.identity_) g.inverse_[x] = static_cast<Element>(y);

  // Extend the generating set if the supplied one does not generate.
  {
    Subgroup span = subgroup_closure(g, g.generators_);
    for (std::size_t x = 0; x < order && span.order() < order; ++x) {
      if (!span.contains(static_cast<Element>(x))) {
        g.generators_.push_back(static_cast<Element>(x));
        span = subgroup_closure(g, g.generators_);
      }
    }
  }

  // Light's associativity test over the generating set.
  for (Element s : g.generators_) {
    for (std::size_t x = 0; x < order; ++x) {
      const Element xs = g.table_[x * order + s];
      for (std::size_t y = 0; y < order; ++y) {
        const Element sy = g.table_[static_cast<std::size_t>(s) * order + y];
        if (g.table_[static_cast<std::size_t>(xs) * order + y] != g.table_[x * order + sy])
          throw GroupError("table is not associative");
      }
    }
  }

  g.compute_derived_data();
  return g;
}

void FiniteGroup::compute_derived_data() {
  if (inverse_.size() != n_) {
    inverse_.assign(n_, identity_);
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        if (table_[x * n_ + y] == identity_) inverse_[x] = static_cast<Element>(y);
  }

  orders_.assign(n_, 1);
  for (std::size_t x = 0; x < n_; ++x) {
    Element cur = static_cast<Element>(x);
    std::size_t k = 1;
    while (cur != identity_) {
      cur = mul(cur, static_cast<Element>(x));
      ++k;
    }
    orders_[x] = k;
  }

  classes_.clear();
  class_index_.assign(n_, static_cast<std::size_t>(-1));
  auto add_class = [&](Element start) {
    ConjugacyClass cls;
    cls.representative = start;
    std::deque<Element> queue{start};
    class_index_[start] = classes_.size();
    cls.members.push_back(start);
    while (!queue.empty()) {
      Element x = queue.front();
      queue.pop_front();
      for (Element s : generators_) {
        Element y = conj(x, s);
        if (class_index_[y] == static_cast<std::size_t>(-1)) {
          class_index_[y] = classes_.size();
          cls.members.push_back(y);
          queue.push_back(y);
        }
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    cls.centralizer_order = n_ / cls.members.size();
    classes_.push_back(std::move(cls));
  };
  add_class(identity_);
  for (std::size_t x = 0; x < n_; ++x)
    if (class_index_[x] == static_cast<std::size_t>(-1)) add_class(static_cast<Element>(x));
}

Element FiniteGroup::pow(Element a, long long k) const noexcept {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  k %= static_cast<long long>(orders_[a]);
  Element result = identity_;
  Element base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::string FiniteGroup::label(Element g) const {
  if (!labels_.empty()) return labels_[g];
  return std::to_string(g);
}

Subgroup FiniteGroup::whole() const {
  std::vector<Element> all(n_);
  std::iota(all.begin(), all.end(), Element{0});
  return Subgroup(n_, std::move(all));
}

Subgroup FiniteGroup::trivial() const { return Subgroup(n_, {identity_}); }

bool FiniteGroup::is_associative_exhaustive() const {
  for (std::size_t x = 0; x < n_; ++x)
    for (std::size_t y = 0; y < n_; ++y) {
      const Element xy = table_[x * n_ + y];
      for (std::size_t z = 0; z < n_; ++z) {
        const Element yz = table_[y * n_ + z];
        if (table_[static_cast<std::size_t>(xy) * n_ + z] != table_[x * n_ + yz]) return false;
      }
    }
  return true;
}

// ------------------------------------------------------- subgroup queries

Subgroup subgroup_closure(const FiniteGroup& g, std::span<const Element> generators) {
  const std::size_t n = g.order();
  std::vector<char> in(n, 0);
  std::vector<Element> elems{g.identity()};
  in[g.identity()] = 1;
  std::vector<Element> gens;
  for (Element s : generators)
    if (s != g.identity() && std::find(gens.begin(), gens.end(), s) == gens.end()) gens.push_back(s);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (Element s : gens) {
      Element y = g.mul(elems[i], s);
      if (!in[y]) {
        in[y] = 1;
        elems.push_back(y);
      }
    }
  }
  return Subgroup(n, std::move(elems));
}

Subgroup normal_closure(const FiniteGroup& g, std::span<const Element> generators) {
  std::vector<Element> conjugates;
  for (Element s : generators) {
    for (Element t : g.class_of_element(s).members) conjugates.push_back(t);
  }
  std::sort(conjugates.begin(), conjugates.end());
  conjugates.erase(std::unique(conjugates.begin(), conjugates.end()), conjugates.end());
  return subgroup_closure(g, conjugates);
}

Subgroup join(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  if (a.is_subset_of(b)) return b;
  if (b.is_subset_of(a)) return a;
  auto gens = greedy_generators(g, a);
  for (Element x : greedy_generators(g, b)) gens.push_back(x);
  return subgroup_closure(g, gens);
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  std::vector<Element> common;
  for (Element x : a.elements())
    if (b.contains(x)) common.push_back(x);
  return Subgroup(a.parent_order(), std::move(common));
}

Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, Element x) {
  std::vector<Element> out;
  out.reserve(h.order());
  for (Element e : h.elements()) out.push_back(g.conj(e, x));
  return Subgroup(g.order(), std::move(out));
}

Subgroup normal_core(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Element> out;
  for (Element e : h.elements()) {
    const auto& members = g.class_of_element(e).members;
    if (std::all_of(members.begin(), members.end(), [&](Element c) { return h.contains(c); }))
      out.push_back(e);
  }
  return Subgroup(g.order(), std::move(out));
}

Subgroup product(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<char> in(g.order(), 0);
  std::vector<Element> out;
  for (Element x : a.elements())
    for (Element y : b.elements()) {
      Element z = g.mul(x, y);
      if (!in[z]) {
        in[z] = 1;
        out.push_back(z);
      }
    }
  return Subgroup(g.order(), std::move(out));
}

Subgroup centralizer(const FiniteGroup& g, std::span<const Element> x) {
  std::vector<Element> out;
  for (std::size_t c = 0; c < g.order(); ++c) {
    const auto e = static_cast<Element>(c);
    if (std::all_of(x.begin(), x.end(), [&](Element y) { return g.mul(e, y) == g.mul(y, e); }))
      out.push_back(e);
  }
  return Subgroup(g.order(), std::move(out));
}

Subgroup centralizer(const FiniteGroup& g, const Subgroup& h) {
  auto gens = greedy_generators(g, h);
  return centralizer(g, gens);
}

Subgroup normalizer(const FiniteGroup& g, const Subgroup& h) {
  auto gens = greedy_generators(g, h);
  std::vector<Element> out;
  for (std::size_t c = 0; c < g.order(); ++c) {
    const auto e = static_cast<Element>(c);
    if (std::all_of(gens.begin(), gens.end(), [&](Element s) { return h.contains(g.conj(s, e)); }))
      out.push_back(e);
  }
  return Subgroup(g.order(), std::move(out));
}

bool is_subgroup(const FiniteGroup& g, std::span<const Element> elements) {
  Subgroup s(g.order(), std::vector<Element>(elements.begin(), elements.end()));
  if (!s.contains(g.identity())) return false;
  for (Element x : s.elements())
    for (Element y : s.elements())
      if (!s.contains(g.mul(x, y))) return false;
  return true;
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  auto gens = greedy_generators(g, h);
  for (Element s : gens)
    for (Element x : g.generators())
      if (!h.contains(g.conj(s, x))) return false;
  return true;
}

bool is_abelian(const FiniteGroup& g, const Subgroup& h) {
  auto gens = greedy_generators(g, h);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (g.mul(gens[i], gens[j]) != g.mul(gens[j], gens[i])) return false;
  return true;
}

bool is_cyclic(const FiniteGroup& g, const Subgroup& h) {
  return std::any_of(h.elements().begin(), h.elements().end(),
                     [&](Element x) { return g.element_order(x) == h.order(); });
}

Element cyclic_generator(const FiniteGroup& g, const Subgroup& h) {
  for (Element x : h.elements())
    if (g.element_order(x) == h.order()) return x;
  throw GroupError("subgroup is not cyclic");
}

FiniteGroup as_group(const FiniteGroup& g, const Subgroup& h) {
  const std::size_t k = h.order();
  std::vector<Element> position(g.order(), 0);
  for (std::size_t i = 0; i < k; ++i) position[h.elements()[i]] = static_cast<Element>(i);
  std::vector<Element> table(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      table[i * k + j] = position[g.mul(h.elements()[i], h.elements()[j])];
  std::vector<std::string> labels;
  if (g.has_labels()) {
    for (Element x : h.elements()) labels.push_back(g.label(x));
  }
  std::vector<Element> gens;
  for (Element x : greedy_generators(g, h)) gens.push_back(position[x]);
  return FiniteGroup::from_table(std::move(table), k, std::move(labels), std::move(gens));
}

Subgroup lift_from(const FiniteGroup& g, const Subgroup& h, const Subgroup& inner) {
  std::vector<Element> out;
  for (Element i : inner.elements()) out.push_back(h.elements()[i]);
  return Subgroup(g.order(), std::move(out));
}

QuotientMap quotient(const FiniteGroup& g, const Subgroup& n) {
  if (!is_normal(g, n)) throw GroupError("quotient by a non-normal subgroup");
  QuotientMap q;
  q.normal = n;
  const std::size_t size = g.order();
  constexpr auto kUnset = static_cast<Element>(-1);
  q.projection.assign(size, kUnset);
  // Coset of the identity first so it becomes the target identity.
  auto assign = [&](Element start) {
    const auto id = static_cast<Element>(q.section.size());
    q.section.push_back(start);
    for (Element x : n.elements()) q.projection[g.mul(start, x)] = id;
  };
  assign(g.identity());
  for (std::size_t x = 0; x < size; ++x)
    if (q.projection[x] == kUnset) assign(static_cast<Element>(x));
  // Section = least element of each coset.
  for (std::size_t x = size; x-- > 0;) q.section[q.projection[x]] = static_cast<Element>(x);

  const std::size_t k = q.section.size();
  std::vector<Element> table(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      table[i * k + j] = q.projection[g.mul(q.section[i], q.section[j])];
  std::vector<Element> gens;
  for (Element s : g.generators()) {
    Element t = q.projection[s];
    if (std::find(gens.begin(), gens.end(), t) == gens.end()) gens.push_back(t);
  }
  q.target = FiniteGroup::from_table(std::move(table), k, {}, std::move(gens));
  return q;
}

std::pair<Element, Element> pi_parts(const FiniteGroup& g, Element x,
                                     std::span<const std::uint64_t> primes) {
  const std::uint64_t o = g.element_order(x);
  std::uint64_t o_pi = 1;
  for (auto p : primes) o_pi *= p_part(o, p);
  const std::uint64_t o_rest = o / o_pi;
  // s = 1 mod o_pi, s = 0 mod o_rest
  std::int64_t s = 0;
  for (std::uint64_t k = 0; k < o_pi; ++k) {
    std::uint64_t cand = k * o_rest;
    if (cand % o_pi == 1 % o_pi) {
      s = static_cast<std::int64_t>(cand);
      break;
    }
  }
  return {g.pow(x, s), g.pow(x, 1 - s)};
}

std::vector<Element> class_times(const FiniteGroup& g, Element x, const Subgroup& n) {
  std::vector<char> in(g.order(), 0);
  for (Element c : g.class_of_element(x).members)
    for (Element y : n.elements()) in[g.mul(c, y)] = 1;
  std::vector<Element> out;
  for (std::size_t i = 0; i < g.order(); ++i)
    if (in[i]) out.push_back(static_cast<Element>(i));
  return out;
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order();
  const std::size_t nb = b.order();
  const std::size_t n = na * nb;
  if (n > kDefaultOrderCap)
    throw CapExceeded("direct product of order " + std::to_string(n) + " exceeds cap");
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto ax = static_cast<Element>(x % na), bx = static_cast<Element>(x / na);
      auto ay = static_cast<Element>(y % na), by = static_cast<Element>(y / na);
      table[x * n + y] = static_cast<Element>(a.mul(ax, ay) + na * b.mul(bx, by));
    }
  std::vector<std::string> labels;
  if (a.has_labels() || b.has_labels()) {
    for (std::size_t x = 0; x < n; ++x)
      labels.push_back("(" + a.label(static_cast<Element>(x % na)) + "," +
                       b.label(static_cast<Element>(x / na)) + ")");
  }
  std::vector<Element> gens;
  for (Element s : a.generators()) gens.push_back(static_cast<Element>(s + na * b.identity()));
  for (Element s : b.generators()) gens.push_back(static_cast<Element>(a.identity() + na * s));
  return FiniteGroup::from_table(std::move(table), n, std::move(labels), std::move(gens));
}

FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw GroupError("cyclic group of order 0");
  if (n > kDefaultOrderCap) throw CapExceeded("cyclic group order exceeds cap");
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) table[x * n + y] = static_cast<Element>((x + y) % n);
  std::vector<Element> gens;
  if (n > 1) gens.push_back(1);
  return FiniteGroup::from_table(std::move(table), n, {}, std::move(gens));
}

}  // namespace helpkit
