#include "helpkit/help.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <optional>
#include <set>

#include "helpkit/arith.hpp"
#include "helpkit/parallel.hpp"
#include "helpkit/structure.hpp"

namespace helpkit {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Tr_{Q(ζ_L)/Q}(ζ_L^k) for k = 0..L-1
std::vector<std::int64_t> ramanujan_table(std::uint64_t L) {
  std::vector<std::int64_t> out(L);
  const auto phi = static_cast<std::int64_t>(euler_phi(L));
  for (std::uint64_t k = 0; k < L; ++k) {
    const std::uint64_t q = L / gcd_u(k, L);
    out[k] = mobius(q) * (phi / static_cast<std::int64_t>(euler_phi(q)));
  }
  return out;
}

// Least j' ≡ j (mod m) coprime to L (m | L, gcd(j, m) = 1).
std::int64_t coprime_lift(std::int64_t j, std::uint64_t m, std::uint64_t L) {
  for (std::uint64_t jj = static_cast<std::uint64_t>(j);; jj += m)
    if (gcd_u(jj, L) == 1) return static_cast<std::int64_t>(jj % L);
}

// Σ_j T_j ζ_m^{-l j} for all l, where T_j are given in Q(ζ_L).
std::vector<Cyclotomic> fourier(const std::vector<Cyclotomic>& t, std::uint64_t m, std::uint64_t L) {
  const std::uint64_t step = L / m;
  std::vector<Cyclotomic> out;
  out.reserve(m);
  for (std::uint64_t l = 0; l < m; ++l) {
    std::vector<Rational> expo(L);
    for (std::uint64_t j = 0; j < t.size(); ++j) {
      if (t[j].is_zero()) continue;
      const std::uint64_t shift = (L - (l * j % m) * step) % L;
      const auto& c = t[j].coeffs();
      for (std::size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero()) expo[(i + shift) % L] += c[i];
    }
    out.push_back(Cyclotomic::from_exponents(L, expo).scaled(Rational(1, static_cast<std::int64_t>(m))));
  }
  return out;
}

// T_j for j with gcd(j, m) > 1, from the pinned powers; zero elsewhere.
std::vector<Cyclotomic> pinned_traces(const FiniteGroup& g, const PowerChain& chain, const ClassFunction& chi,
                                      std::uint64_t L) {
  const std::uint64_t m = chain.m;
  std::vector<Cyclotomic> t(m, Cyclotomic(L));
  for (std::uint64_t j = 0; j < m; ++j) {
    const std::uint64_t d = gcd_u(j, m);
    if (d == 1) continue;
    const Element x = g.pow(chain.power(g, d), static_cast<long long>(j / d));
    t[j] = chi.values[g.class_of(x)].promote(L);
  }
  return t;
}

std::vector<std::size_t> class_blocks(const FiniteGroup& g, const Subgroup& n) {
  const std::size_t r = g.classes().size();
  std::vector<std::size_t> parent(r);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t c = 0; c < r; ++c) {
    const Element rep = g.classes()[c].representative;
    for (Element y : n.elements()) {
      std::size_t a = find(c), b = find(g.class_of(g.mul(rep, y)));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::size_t> label(r, static_cast<std::size_t>(-1)), out(r);
  std::size_t next = 0;
  for (std::size_t c = 0; c < r; ++c) {
    const std::size_t root = find(c);
    if (label[root] == static_cast<std::size_t>(-1)) label[root] = next++;
    out[c] = label[root];
  }
  return out;
}

bool block_power_compatible(const HelpContext& ctx, std::size_t ni, std::size_t block, const PowerChain& chain) {
  const FiniteGroup& g = *ctx.group;
  const auto& blocks = ctx.block_of[ni];
  for (std::size_t c = 0; c < blocks.size(); ++c) {
    if (blocks[c] != block) continue;
    const Element h = g.classes()[c].representative;
    for (auto p : prime_factors(chain.m)) {
      const Element hp = g.pow(h, static_cast<long long>(p));
      if (blocks[g.class_of(hp)] != blocks[g.class_of(chain.power(g, p))]) return false;
    }
    return true;
  }
  return false;
}

struct QuotientCheck {
  bool passed = true;
  std::string detail;
};

QuotientCheck check_quotient(const HelpContext& ctx, std::size_t ni, const PowerChain& chain) {
  const auto& blocks = ctx.block_of[ni];
  const std::size_t nb = *std::max_element(blocks.begin(), blocks.end()) + 1;
  std::vector<std::int64_t> sums(nb, 0);
  for (std::size_t c = 0; c < blocks.size(); ++c) sums[blocks[c]] += chain.unknown.entries[c];
  std::size_t ones = 0, one_block = 0;
  for (std::size_t b = 0; b < nb; ++b) {
    if (sums[b] != 0 && sums[b] != 1)
      return {false, "block " + std::to_string(b) + " sums to " + std::to_string(sums[b])};
    if (sums[b] == 1) {
      ++ones;
      one_block = b;
    }
  }
  if (ones != 1) return {false, std::to_string(ones) + " blocks sum to 1"};
  if (!block_power_compatible(ctx, ni, one_block, chain))
    return {false, "image class is incompatible with the pinned powers"};
  return {};
}

bool in_kernel_block(const HelpContext& ctx, const Subgroup& n, const PartialAugVector& v) {
  const FiniteGroup& g = *ctx.group;
  std::int64_t s = 0;
  for (std::size_t c = 0; c < g.classes().size(); ++c)
    if (n.contains(g.classes()[c].representative)) s += v.entries[c];
  return s == 1;
}

bool cliff_weiss_ok(const HelpContext& ctx, const PartialAugVector& v, std::string* which = nullptr) {
  if (!ctx.options.assume_quotient_zc) return true;
  for (const auto& pair : ctx.cliff_weiss) {
    if (!in_kernel_block(ctx, pair.n, v)) continue;
    for (const auto& row : pair.rows) {
      std::int64_t s = 0;
      for (std::size_t c = 0; c < row.size(); ++c) s += row[c] * v.entries[c];
      if (s < 0) {
        if (which) *which = "N order " + std::to_string(pair.n.order()) + ", K order " + std::to_string(pair.k.order());
        return false;
      }
    }
  }
  return true;
}

constexpr std::int64_t kUnbounded = std::int64_t{1} << 50;

// Affine multiplicity rows scaled to integers, and Cliff–Weiss inequalities.
struct Row {
  std::vector<std::int64_t> a;  // per variable position
  std::int64_t c = 0;
  std::int64_t d = 1;           // μ = (c + a·ε) / d
  std::int64_t upper = 0;       // d * degree
  std::size_t last = 0;         // last position with a != 0
  std::size_t character = 0;
  bool cliff_weiss = false;
};

// Whether every unit with these pinned powers (and quotient images given by
// group elements) maps to 1 modulo N.  nullopt when the pins do not decide it.
std::optional<bool> maps_into(const FiniteGroup& g, const PowerChain& tmpl, const Subgroup& n) {
  const auto primes = prime_factors(tmpl.m);
  for (auto p : primes)
    if (!n.contains(tmpl.power(g, p))) return false;
  if (primes.size() != 1) return true;
  return std::nullopt;
}

std::int64_t to_int(const Rational& r) {
  if (!r.is_integer()) throw std::logic_error("expected an integer");
  return r.num();
}

}  // namespace

Element PowerChain::power(const FiniteGroup& g, std::uint64_t d) const {
  if (d % m == 0) return g.identity();
  auto it = pinned.find(d);
  if (it == pinned.end()) throw InvalidInput("chain has no pinned element for u^" + std::to_string(d));
  return it->second;
}

PartialAugVector trivial_pa(const FiniteGroup& g, Element x) {
  PartialAugVector v;
  v.m = g.element_order(x);
  v.entries.assign(g.classes().size(), 0);
  v.entries[g.class_of(x)] = 1;
  return v;
}

PowerChain trivial_chain(const FiniteGroup& g, Element x) {
  PowerChain c;
  c.m = g.element_order(x);
  for (auto d : divisors(c.m))
    if (d > 1 && d < c.m) c.pinned[d] = g.pow(x, static_cast<long long>(d));
  c.unknown = trivial_pa(g, x);
  return c;
}

void validate_chain(const FiniteGroup& g, const PowerChain& chain, bool require_unknown) {
  if (chain.m == 0) throw InvalidInput("unit order must be positive");
  for (const auto& [d, x] : chain.pinned) {
    if (d <= 1 || d >= chain.m || chain.m % d != 0) throw InvalidInput("pinned power " + std::to_string(d) + " is not a proper divisor");
    if (x >= g.order()) throw InvalidInput("pinned element out of range");
    if (g.element_order(x) != chain.m / d)
      throw InvalidInput("pinned element for u^" + std::to_string(d) + " has order " + std::to_string(g.element_order(x)) +
                         ", expected " + std::to_string(chain.m / d));
  }
  for (auto d : divisors(chain.m)) {
    if (d <= 1 || d >= chain.m) continue;
    if (!chain.pinned.count(d)) throw InvalidInput("chain is missing u^" + std::to_string(d));
  }
  for (auto d : divisors(chain.m)) {
    if (d <= 1) continue;
    for (auto p : prime_factors(chain.m / d)) {
      const Element lhs = chain.power(g, d * p);
      const Element rhs = g.pow(chain.power(g, d), static_cast<long long>(p));
      if (g.class_of(lhs) != g.class_of(rhs))
        throw InvalidInput("pinned powers u^" + std::to_string(d) + " and u^" + std::to_string(d * p) + " are incompatible");
    }
  }
  if (require_unknown) {
    if (chain.unknown.m != chain.m) throw InvalidInput("unknown vector order differs from chain order");
    if (chain.unknown.entries.size() != g.classes().size()) throw InvalidInput("unknown vector has the wrong length");
  }
}

HelpContext make_context(const FiniteGroup& g, const HelpOptions& options) {
  return make_context(g, default_characters(g, options.characters), options);
}

HelpContext make_context(const FiniteGroup& g, std::vector<ClassFunction> characters, const HelpOptions& options) {
  if (options.bound < 1) throw InvalidInput("entry bound must be at least 1");
  HelpContext ctx;
  ctx.group = &g;
  ctx.options = options;
  ctx.characters = std::move(characters);
  for (auto& n : normal_subgroups(g))
    if (!n.is_trivial()) ctx.normals.push_back(std::move(n));
  for (std::size_t i = 0; i < ctx.normals.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < ctx.normals.size() && minimal; ++j)
      if (j != i && ctx.normals[j].order() < ctx.normals[i].order() && ctx.normals[j].is_subset_of(ctx.normals[i]))
        minimal = false;
    if (minimal) ctx.minimal.push_back(i);
  }
  for (const auto& n : ctx.normals) ctx.block_of.push_back(class_blocks(g, n));

  for (const auto& n : ctx.normals) {
    if (!is_abelian(g, n)) continue;
    for (const auto& k : compute_KN(g, n).definitional) {
      CliffWeissPair pair{n, k, {}};
      std::set<std::vector<std::int64_t>> rows;
      for (Element x : n.elements()) {
        std::vector<std::int64_t> row(g.classes().size(), 0);
        for (Element y : k.elements()) {
          const Element xk = g.mul(x, y);
          row[g.class_of(xk)] += static_cast<std::int64_t>(g.class_of_element(xk).centralizer_order);
        }
        rows.insert(std::move(row));
      }
      pair.rows.assign(rows.begin(), rows.end());
      ctx.cliff_weiss.push_back(std::move(pair));
    }
  }
  return ctx;
}

bool ConstraintReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

ConstraintReport basic_constraints(const HelpContext& ctx, const PowerChain& chain) {
  const FiniteGroup& g = *ctx.group;
  validate_chain(g, chain);
  ConstraintReport rep;
  const auto& e = chain.unknown.entries;
  const std::int64_t total = std::accumulate(e.begin(), e.end(), std::int64_t{0});
  rep.results.push_back({"augmentation", total == 1, total == 1 ? "" : "sum is " + std::to_string(total)});
  const bool id_ok = chain.m == 1 || e[0] == 0;
  rep.results.push_back({"identity", id_ok, id_ok ? "" : "identity entry is " + std::to_string(e[0])});
  std::string bad;
  for (std::size_t c = 0; c < e.size(); ++c)
    if (e[c] != 0 && chain.m % g.element_order(g.classes()[c].representative) != 0)
      bad += (bad.empty() ? "class " : ", ") + std::to_string(c);
  rep.results.push_back({"order_divides", bad.empty(), bad});
  if (ctx.options.assume_quotient_zc) {
    for (std::size_t ni = 0; ni < ctx.normals.size(); ++ni) {
      auto q = check_quotient(ctx, ni, chain);
      rep.results.push_back({"quotient[N" + std::to_string(ni) + ",|N|=" + std::to_string(ctx.normals[ni].order()) + "]",
                             q.passed, q.detail});
    }
    std::string which;
    const bool cw = cliff_weiss_ok(ctx, chain.unknown, &which);
    rep.results.push_back({"cliff_weiss", cw, which});
  }
  return rep;
}

bool MultiplicityVector::integral_nonnegative() const {
  return std::all_of(mu.begin(), mu.end(), [](const Cyclotomic& z) {
    auto v = z.as_integer();
    return v && *v >= 0;
  });
}

std::vector<std::int64_t> MultiplicityVector::as_integers() const {
  std::vector<std::int64_t> out;
  for (const auto& z : mu) {
    auto v = z.as_integer();
    if (!v) throw std::logic_error("multiplicity is not an integer: " + z.to_string());
    out.push_back(*v);
  }
  return out;
}

MultiplicityVector multiplicities(const FiniteGroup& g, const PowerChain& chain, const ClassFunction& chi) {
  validate_chain(g, chain);
  const std::uint64_t m = chain.m;
  const std::uint64_t L = lcm_u(chi.conductor, m);
  auto t = pinned_traces(g, chain, chi, L);
  Cyclotomic value(L);
  for (std::size_t c = 0; c < chain.unknown.entries.size(); ++c)
    if (chain.unknown.entries[c] != 0)
      value += chi.values[c].promote(L).scaled(Rational(chain.unknown.entries[c]));
  for (std::uint64_t j = 1; j < m; ++j)
    if (gcd_u(j, m) == 1) t[j] = value.galois(coprime_lift(static_cast<std::int64_t>(j), m, L));
  if (m == 1) t[0] = value;
  return {fourier(t, m, L)};
}

AffineMultiplicities affine_multiplicities(const FiniteGroup& g, const PowerChain& pinned_template,
                                           const ClassFunction& chi) {
  validate_chain(g, pinned_template, false);
  const std::uint64_t m = pinned_template.m;
  const std::uint64_t L = lcm_u(chi.conductor, m);
  AffineMultiplicities out;
  for (const auto& z : fourier(pinned_traces(g, pinned_template, chi, L), m, L)) {
    auto r = z.as_rational();
    if (!r) throw std::logic_error("pinned multiplicity part is not rational");
    out.constant.push_back(*r);
  }
  const auto ram = ramanujan_table(L);
  const Rational scale(static_cast<std::int64_t>(euler_phi(m)),
                       static_cast<std::int64_t>(m * euler_phi(L)));
  const std::uint64_t step = L / m;
  std::vector<std::vector<Rational>> coeffs;
  for (const auto& v : chi.values) coeffs.push_back(v.promote(L).coeffs());
  out.coefficient.assign(m, std::vector<Rational>(chi.values.size()));
  for (std::uint64_t l = 0; l < m; ++l) {
    const std::uint64_t shift = (L - (l * step) % L) % L;
    for (std::size_t c = 0; c < coeffs.size(); ++c) {
      Rational tr;
      for (std::size_t i = 0; i < coeffs[c].size(); ++i)
        if (!coeffs[c][i].is_zero()) tr += coeffs[c][i] * Rational(ram[(i + shift) % L]);
      out.coefficient[l][c] = tr * scale;
    }
  }
  return out;
}

std::vector<PowerChain> chain_templates(const FiniteGroup& g, std::uint64_t m) {
  const auto primes = prime_factors(m);
  std::vector<std::vector<Element>> options;
  for (auto p : primes) {
    std::vector<Element> reps;
    for (const auto& c : g.classes())
      if (g.element_order(c.representative) == m / p) reps.push_back(c.representative);
    options.push_back(std::move(reps));
  }
  std::vector<PowerChain> out;
  std::vector<Element> pick(primes.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == primes.size()) {
      PowerChain chain;
      chain.m = m;
      for (auto d : divisors(m)) {
        if (d <= 1 || d >= m) continue;
        std::size_t k = 0;
        while (d % primes[k] != 0) ++k;
        chain.pinned[d] = g.pow(pick[k], static_cast<long long>(d / primes[k]));
      }
      try {
        validate_chain(g, chain, false);
      } catch (const InvalidInput&) {
        return;
      }
      out.push_back(std::move(chain));
      return;
    }
    for (Element x : options[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = g.class_of(g.pow(x, static_cast<long long>(primes[j]))) ==
             g.class_of(g.pow(pick[j], static_cast<long long>(primes[i])));
      if (!ok) continue;
      pick[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

bool filter_accepts(const HelpContext& ctx, const PowerChain& chain) {
  const FiniteGroup& g = *ctx.group;
  validate_chain(g, chain);
  for (auto v : chain.unknown.entries)
    if (v < -ctx.options.bound || v > ctx.options.bound) return false;
  if (!basic_constraints(ctx, chain).all_passed()) return false;
  for (const auto& chi : ctx.characters) {
    const auto aff = affine_multiplicities(g, chain, chi);
    const Rational degree(chi.degree());
    for (std::size_t l = 0; l < aff.constant.size(); ++l) {
      Rational mu = aff.constant[l];
      for (std::size_t c = 0; c < chain.unknown.entries.size(); ++c)
        if (chain.unknown.entries[c] != 0) mu += aff.coefficient[l][c] * Rational(chain.unknown.entries[c]);
      if (!mu.is_integer() || mu < Rational(0) || mu > degree) return false;
    }
    if (!multiplicities(g, chain, chi).integral_nonnegative()) return false;
  }
  return true;
}

namespace {

class Search {
 public:
  Search(const HelpContext& ctx, const PowerChain& tmpl, std::uint64_t budget)
      : ctx_(ctx), g_(*ctx.group), tmpl_(tmpl), budget_(budget) {}

  FilterResult run() {
    FilterResult res;
    const std::uint64_t m = tmpl_.m;
    const std::int64_t B = ctx_.options.bound;
    // variables: classes whose order divides m, identity excluded when m > 1
    std::vector<std::size_t> vars;
    for (std::size_t c = 0; c < g_.classes().size(); ++c) {
      if (m > 1 && c == 0) continue;
      if (m % g_.element_order(g_.classes()[c].representative) == 0) vars.push_back(c);
    }
    // group by socle coset so every minimal-normal block closes early
    if (!ctx_.minimal.empty()) {
      const auto& first = ctx_.block_of[ctx_.minimal.front()];
      std::stable_sort(vars.begin(), vars.end(), [&](std::size_t a, std::size_t b) { return first[a] < first[b]; });
      const Subgroup soc = socle(g_);
      for (std::size_t ni = 0; ni < ctx_.normals.size(); ++ni) {
        if (!(ctx_.normals[ni] == soc)) continue;
        const auto& outer = ctx_.block_of[ni];
        std::stable_sort(vars.begin(), vars.end(), [&](std::size_t a, std::size_t b) { return outer[a] < outer[b]; });
      }
    }
    vars_ = vars;
    const std::size_t nv = vars.size();

    // quotient blocks for minimal normal subgroups
    for (std::size_t ni : ctx_.minimal) {
      BlockSet bs;
      bs.normal = ni;
      const auto& blocks = ctx_.block_of[ni];
      const std::size_t nb = *std::max_element(blocks.begin(), blocks.end()) + 1;
      bs.compatible.resize(nb);
      for (std::size_t b = 0; b < nb; ++b) bs.compatible[b] = block_power_compatible(ctx_, ni, b, tmpl_);
      bs.block.resize(nv);
      bs.remaining.resize(nv);
      for (std::size_t i = 0; i < nv; ++i) bs.block[i] = blocks[vars[i]];
      for (std::size_t i = 0; i < nv; ++i) {
        std::size_t later = 0;
        for (std::size_t j = i + 1; j < nv; ++j)
          if (bs.block[j] == bs.block[i]) ++later;
        bs.remaining[i] = later;
      }
      bs.sum.assign(nb, 0);
      blocks_.push_back(std::move(bs));
    }
    // a variable alone in its block is pinned to [0, top]
    var_lo_.assign(nv, -B);
    var_hi_.assign(nv, B);
    for (const auto& bs : blocks_) {
      std::vector<std::size_t> count(bs.sum.size(), 0);
      for (std::size_t i = 0; i < nv; ++i) ++count[bs.block[i]];
      for (std::size_t i = 0; i < nv; ++i)
        if (count[bs.block[i]] == 1) {
          var_lo_[i] = std::max<std::int64_t>(var_lo_[i], 0);
          var_hi_[i] = std::min<std::int64_t>(var_hi_[i], bs.compatible[bs.block[i]] ? 1 : 0);
        }
    }
    for (std::size_t i = 0; i < nv; ++i)
      if (var_lo_[i] > var_hi_[i]) {
        res.rejections["quotient"] += 1;
        return res;
      }
    for (auto& bs : blocks_) {
      bs.later_lo.assign(nv, 0);
      bs.later_hi.assign(nv, 0);
      for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = i + 1; j < nv; ++j)
          if (bs.block[j] == bs.block[i]) {
            bs.later_lo[i] += var_lo_[j];
            bs.later_hi[i] += var_hi_[j];
          }
    }

    // multiplicity rows
    std::set<std::tuple<std::vector<std::int64_t>, std::int64_t, std::int64_t, std::int64_t>> seen;
    for (std::size_t ci = 0; ci < ctx_.characters.size(); ++ci) {
      const auto& chi = ctx_.characters[ci];
      const auto aff = affine_multiplicities(g_, tmpl_, chi);
      for (std::size_t l = 0; l < aff.constant.size(); ++l) {
        std::int64_t den = aff.constant[l].den();
        for (std::size_t i = 0; i < nv; ++i) den = static_cast<std::int64_t>(lcm_u(static_cast<std::uint64_t>(den),
                                                                              static_cast<std::uint64_t>(aff.coefficient[l][vars[i]].den())));
        Row row;
        row.d = den;
        row.c = to_int(aff.constant[l] * Rational(den));
        row.upper = den * chi.degree();
        row.character = ci;
        row.a.resize(nv);
        bool any = false;
        for (std::size_t i = 0; i < nv; ++i) {
          row.a[i] = to_int(aff.coefficient[l][vars[i]] * Rational(den));
          if (row.a[i] != 0) {
            any = true;
            row.last = i;
          }
        }
        if (!any) {
          const bool ok = row.c % row.d == 0 && row.c >= 0 && row.c <= row.upper;
          if (!ok) {
            res.rejections["mu:" + chi.name] += 1;
            return res;
          }
          continue;
        }
        if (!seen.insert({row.a, row.c, row.d, row.upper}).second) continue;
        rows_.push_back(std::move(row));
      }
    }
    // Cliff–Weiss inequalities that apply to every candidate of this template
    if (ctx_.options.assume_quotient_zc) {
      std::set<std::vector<std::int64_t>> cw_seen;
      for (const auto& pair : ctx_.cliff_weiss) {
        if (maps_into(g_, tmpl_, pair.n) != std::optional<bool>(true)) continue;
        for (const auto& full : pair.rows) {
          Row row;
          row.cliff_weiss = true;
          row.upper = kUnbounded;
          row.a.resize(nv);
          bool any = false;
          for (std::size_t i = 0; i < nv; ++i) {
            row.a[i] = full[vars[i]];
            if (row.a[i] != 0) {
              any = true;
              row.last = i;
            }
          }
          if (any && cw_seen.insert(row.a).second)
            rows_.push_back(std::move(row));
        }
      }
    }
    touching_.assign(nv, {});
    closing_.assign(nv, {});
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (std::size_t i = 0; i < nv; ++i)
        if (rows_[r].a[i] != 0) touching_[i].push_back(r);
      closing_[rows_[r].last].push_back(r);
    }
    // range of Σ_{j >= i} a_rj ε_j over the variable box
    suffix_min_.assign(rows_.size(), std::vector<std::int64_t>(nv + 1, 0));
    suffix_max_.assign(rows_.size(), std::vector<std::int64_t>(nv + 1, 0));
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (std::size_t i = nv; i-- > 0;) {
        const std::int64_t a = rows_[r].a[i];
        suffix_min_[r][i] = suffix_min_[r][i + 1] + std::min(a * var_lo_[i], a * var_hi_[i]);
        suffix_max_[r][i] = suffix_max_[r][i + 1] + std::max(a * var_lo_[i], a * var_hi_[i]);
      }
    total_lo_.assign(nv + 1, 0);
    total_hi_.assign(nv + 1, 0);
    for (std::size_t i = nv; i-- > 0;) {
      total_lo_[i] = total_lo_[i + 1] + var_lo_[i];
      total_hi_[i] = total_hi_[i + 1] + var_hi_[i];
    }
    partial_.assign(rows_.size(), 0);
    values_.assign(nv, 0);

    if (nv == 0) {
      // only possible when m > 1 and no class has order dividing m: augmentation fails
      res.rejections["augmentation"] += 1;
      return res;
    }
    res_ = &res;
    dfs(0, 0);
    std::sort(res.survivors.begin(), res.survivors.end());
    if (aborted_) res.status = FilterStatus::Budget;
    res.nodes = nodes_;
    return res;
  }

 private:
  struct BlockSet {
    std::size_t normal = 0;
    std::vector<char> compatible;
    std::vector<std::size_t> block;      // per position
    std::vector<std::size_t> remaining;  // later positions in the same block
    std::vector<std::int64_t> later_lo, later_hi;  // range of their sum
    std::vector<std::int64_t> sum;
  };

  const HelpContext& ctx_;
  const FiniteGroup& g_;
  const PowerChain& tmpl_;
  std::uint64_t budget_;
  std::vector<std::size_t> vars_;
  std::vector<BlockSet> blocks_;
  std::vector<Row> rows_;
  std::vector<std::vector<std::size_t>> touching_, closing_;
  std::vector<std::int64_t> var_lo_, var_hi_, total_lo_, total_hi_;
  std::vector<std::vector<std::int64_t>> suffix_min_, suffix_max_;
  std::vector<std::int64_t> partial_;
  std::vector<std::int64_t> values_;
  FilterResult* res_ = nullptr;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;

  void reject(const std::string& id) { res_->rejections[id] += 1; }
  std::string row_id(const Row& row) const {
    return row.cliff_weiss ? "cliff_weiss" : "mu:" + ctx_.characters[row.character].name;
  }

  void dfs(std::size_t i, std::int64_t total) {
    if (aborted_) return;
    const std::size_t nv = vars_.size();
    std::int64_t lo = var_lo_[i], hi = var_hi_[i];

    lo = std::max(lo, 1 - total - total_hi_[i + 1]);
    hi = std::min(hi, 1 - total - total_lo_[i + 1]);
    if (lo > hi) return reject("augmentation");

    // quotient blocks: sums must end in {0, 1}, and in {0} for incompatible blocks
    bool exact_block = false;
    std::int64_t exact_lo = 0, exact_hi = 0;
    for (const auto& bs : blocks_) {
      const std::size_t b = bs.block[i];
      const std::int64_t top = bs.compatible[b] ? 1 : 0;
      const std::int64_t s = bs.sum[b];
      lo = std::max(lo, 0 - s - bs.later_hi[i]);
      hi = std::min(hi, top - s - bs.later_lo[i]);
      if (bs.remaining[i] == 0) {
        if (!exact_block) {
          exact_block = true;
          exact_lo = -s;
          exact_hi = top - s;
        } else {
          exact_lo = std::max(exact_lo, -s);
          exact_hi = std::min(exact_hi, top - s);
        }
      }
    }
    if (lo > hi) return reject("quotient");
    if (exact_block) {
      lo = std::max(lo, exact_lo);
      hi = std::min(hi, exact_hi);
      if (lo > hi) return reject("quotient");
    }

    for (std::size_t r : touching_[i]) {
      const Row& row = rows_[r];
      const std::int64_t a = row.a[i];
      const std::int64_t base = row.c + partial_[r];
      // 0 <= base + a ε + rest <= upper with rest in [smin, smax]
      const std::int64_t need_lo = -(base + suffix_max_[r][i + 1]);
      const std::int64_t need_hi = row.upper - base - suffix_min_[r][i + 1];
      if (a > 0) {
        lo = std::max(lo, ceil_div(need_lo, a));
        hi = std::min(hi, floor_div(need_hi, a));
      } else {
        lo = std::max(lo, ceil_div(need_hi, a));
        hi = std::min(hi, floor_div(need_lo, a));
      }
      if (lo > hi) return reject(row_id(row));
    }

    for (std::int64_t v = lo; v <= hi; ++v) {
      if (++nodes_ > budget_) {
        aborted_ = true;
        return;
      }
      // rows closing here must be exact integers
      bool ok = true;
      for (std::size_t r : closing_[i]) {
        const Row& row = rows_[r];
        const std::int64_t val = row.c + partial_[r] + row.a[i] * v;
        if (!row.cliff_weiss && val % row.d != 0) {
          reject("integrality:" + ctx_.characters[row.character].name);
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      values_[i] = v;
      for (std::size_t r : touching_[i]) partial_[r] += rows_[r].a[i] * v;
      for (auto& bs : blocks_) bs.sum[bs.block[i]] += v;
      if (i + 1 == nv) leaf();
      else dfs(i + 1, total + v);
      for (auto& bs : blocks_) bs.sum[bs.block[i]] -= v;
      for (std::size_t r : touching_[i]) partial_[r] -= rows_[r].a[i] * v;
      if (aborted_) return;
    }
  }

  void leaf() {
    PowerChain chain = tmpl_;
    chain.unknown.m = tmpl_.m;
    chain.unknown.entries.assign(g_.classes().size(), 0);
    for (std::size_t i = 0; i < vars_.size(); ++i) chain.unknown.entries[vars_[i]] = values_[i];
    if (!cliff_weiss_ok(ctx_, chain.unknown)) return reject("cliff_weiss");
    for (const auto& chi : ctx_.characters)
      if (!multiplicities(g_, chain, chi).integral_nonnegative()) return reject("reference:" + chi.name);
    res_->survivors.push_back(chain.unknown);
  }
};

// Branches on the eigenvalue multiplicities of D_χ(u) for a few characters
// instead of on ε.  Usable when those characters separate the variable
// classes, since ε is then a rational linear function of the χ(u).
class SpectralSearch {
 public:
  static constexpr std::size_t kOptionCap = 20000;

  SpectralSearch(const HelpContext& ctx, const PowerChain& tmpl) : ctx_(ctx), g_(*ctx.group), tmpl_(tmpl) {}

  // False when the characters with few enough options do not determine ε.
  bool prepare() {
    const std::uint64_t m = tmpl_.m;
    for (std::size_t c = 0; c < g_.classes().size(); ++c) {
      if (m > 1 && c == 0) continue;
      if (m % g_.element_order(g_.classes()[c].representative) == 0) vars_.push_back(c);
    }
    const std::size_t nv = vars_.size();
    if (nv == 0) return false;

    std::vector<Candidate> cands;
    for (std::size_t k = 0; k < ctx_.characters.size(); ++k) {
      Candidate cand;
      cand.character = k;
      if (!enumerate(cand)) continue;
      if (cand.options.empty()) {
        empty_character_ = k;
        return true;
      }
      cands.push_back(std::move(cand));
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& a, const Candidate& b) { return a.options.size() < b.options.size(); });

    // greedy row selection until the value matrix has full column rank
    std::vector<std::vector<Rational>> reduced, picked;
    std::vector<std::size_t> pivots;
    std::vector<std::pair<std::size_t, std::size_t>> origin;  // (selected index, coordinate)
    for (auto& cand : cands) {
      if (reduced.size() == nv) break;
      const auto& chi = ctx_.characters[cand.character];
      const std::size_t dim = euler_phi(cand.L);
      std::vector<std::vector<Rational>> a(dim, std::vector<Rational>(nv));
      for (std::size_t i = 0; i < nv; ++i) {
        const auto coeffs = chi.values[vars_[i]].promote(cand.L).coeffs();
        for (std::size_t r = 0; r < dim; ++r) a[r][i] = coeffs[r];
      }
      bool used = false;
      for (std::size_t r = 0; r < dim && reduced.size() < nv; ++r) {
        auto row = a[r];
        for (std::size_t b = 0; b < reduced.size(); ++b) {
          if (row[pivots[b]].is_zero()) continue;
          const Rational f = row[pivots[b]];
          for (std::size_t i = 0; i < nv; ++i) row[i] -= f * reduced[b][i];
        }
        std::size_t p = 0;
        while (p < nv && row[p].is_zero()) ++p;
        if (p == nv) continue;
        const Rational inv = Rational(1) / row[p];
        for (auto& x : row) x *= inv;
        for (auto& other : reduced) {
          if (other[p].is_zero()) continue;
          const Rational f = other[p];
          for (std::size_t i = 0; i < nv; ++i) other[i] -= f * row[i];
        }
        reduced.push_back(std::move(row));
        pivots.push_back(p);
        picked.push_back(a[r]);
        origin.emplace_back(selected_.size(), r);
        used = true;
      }
      if (used) selected_.push_back(std::move(cand));
    }
    if (reduced.size() < nv) return false;

    const auto pinv = invert(picked);
    // contributions of each option to D·ε, D a common denominator
    std::vector<std::vector<std::vector<Rational>>> contrib(selected_.size());
    std::int64_t den = 1;
    for (std::size_t s = 0; s < selected_.size(); ++s) {
      for (const auto& opt : selected_[s].options) {
        std::vector<Rational> v(nv);
        for (std::size_t r = 0; r < origin.size(); ++r) {
          if (origin[r].first != s || opt[origin[r].second].is_zero()) continue;
          for (std::size_t i = 0; i < nv; ++i) v[i] += pinv[i][r] * opt[origin[r].second];
        }
        for (const auto& x : v) den = static_cast<std::int64_t>(lcm_u(den, x.den()));
        if (den > (std::int64_t{1} << 40)) return false;
        contrib[s].push_back(std::move(v));
      }
    }
    den_ = den;
    steps_.resize(selected_.size());
    for (std::size_t s = 0; s < selected_.size(); ++s)
      for (const auto& v : contrib[s]) {
        std::vector<std::int64_t> w(nv);
        for (std::size_t i = 0; i < nv; ++i) w[i] = (v[i] * Rational(den)).num();
        steps_[s].push_back(std::move(w));
      }
    suffix_min_.assign(steps_.size() + 1, std::vector<std::int64_t>(nv, 0));
    suffix_max_ = suffix_min_;
    for (std::size_t s = steps_.size(); s-- > 0;)
      for (std::size_t i = 0; i < nv; ++i) {
        std::int64_t lo = steps_[s][0][i], hi = lo;
        for (const auto& w : steps_[s]) {
          lo = std::min(lo, w[i]);
          hi = std::max(hi, w[i]);
        }
        suffix_min_[s][i] = suffix_min_[s + 1][i] + lo;
        suffix_max_[s][i] = suffix_max_[s + 1][i] + hi;
      }
    return true;
  }

  // Leaves in the worst case, saturating.
  std::uint64_t cost() const {
    if (empty_character_) return 0;
    std::uint64_t c = 1;
    for (const auto& s : steps_) {
      if (c > UINT64_MAX / s.size()) return UINT64_MAX;
      c *= s.size();
    }
    return c;
  }

  FilterResult run(std::uint64_t budget) {
    FilterResult res;
    res_ = &res;
    budget_ = budget;
    if (empty_character_) {
      res.rejections["mu:" + ctx_.characters[*empty_character_].name] += 1;
      return res;
    }
    partial_.assign(vars_.size(), 0);
    dfs(0);
    std::sort(res.survivors.begin(), res.survivors.end());
    res.survivors.erase(std::unique(res.survivors.begin(), res.survivors.end()), res.survivors.end());
    if (aborted_) res.status = FilterStatus::Budget;
    res.nodes = nodes_;
    return res;
  }

 private:
  struct Candidate {
    std::size_t character = 0;
    std::uint64_t L = 1;
    std::vector<std::vector<Rational>> options;  // coordinates of Σ μ_l ζ_m^l in Q(ζ_L)
  };

  const HelpContext& ctx_;
  const FiniteGroup& g_;
  const PowerChain& tmpl_;
  std::vector<std::size_t> vars_;
  std::vector<Candidate> selected_;
  std::optional<std::size_t> empty_character_;
  std::int64_t den_ = 1;
  std::vector<std::vector<std::vector<std::int64_t>>> steps_;
  std::vector<std::vector<std::int64_t>> suffix_min_, suffix_max_;
  std::vector<std::int64_t> partial_;
  FilterResult* res_ = nullptr;
  std::uint64_t budget_ = 0, nodes_ = 0;
  bool aborted_ = false;

  // Multiplicity vectors of χ compatible with the pinned powers; false past the cap.
  bool enumerate(Candidate& cand) const {
    const auto& chi = ctx_.characters[cand.character];
    const std::uint64_t m = tmpl_.m;
    const std::int64_t deg = chi.degree();
    cand.L = lcm_u(chi.conductor, m);
    const std::uint64_t L = cand.L, step = L / m;
    const auto target = pinned_traces(g_, tmpl_, chi, L);
    std::vector<std::uint64_t> checks;
    for (std::uint64_t j = 1; j < m; ++j)
      if (gcd_u(j, m) > 1) checks.push_back(j);
    std::vector<std::int64_t> mu(m, 0);
    std::size_t seen = 0;
    bool capped = false;
    std::function<void(std::uint64_t, std::int64_t)> rec = [&](std::uint64_t l, std::int64_t left) {
      if (capped) return;
      if (l + 1 == m) {
        mu[l] = left;
        if (++seen > kOptionCap) {
          capped = true;
          return;
        }
        std::vector<Rational> expo(L);
        for (std::uint64_t j : checks) {
          std::fill(expo.begin(), expo.end(), Rational{});
          for (std::uint64_t k = 0; k < m; ++k)
            if (mu[k] != 0) expo[(k * j % m) * step] += Rational(mu[k]);
          if (!(Cyclotomic::from_exponents(L, expo) == target[j])) return;
        }
        std::fill(expo.begin(), expo.end(), Rational{});
        for (std::uint64_t k = 0; k < m; ++k)
          if (mu[k] != 0) expo[k * step] += Rational(mu[k]);
        cand.options.push_back(Cyclotomic::from_exponents(L, expo).coeffs());
        return;
      }
      for (std::int64_t v = left; v >= 0; --v) {
        mu[l] = v;
        rec(l + 1, left - v);
      }
    };
    rec(0, deg);
    return !capped;
  }

  static std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (a[p][c].is_zero()) ++p;
      std::swap(a[p], a[c]);
      std::swap(inv[p], inv[c]);
      const Rational f = Rational(1) / a[c][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[c][k] *= f;
        inv[c][k] *= f;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || a[r][c].is_zero()) continue;
        const Rational g = a[r][c];
        for (std::size_t k = 0; k < n; ++k) {
          a[r][k] -= g * a[c][k];
          inv[r][k] -= g * inv[c][k];
        }
      }
    }
    return inv;
  }

  void dfs(std::size_t s) {
    const std::int64_t lim = ctx_.options.bound * den_;
    const std::size_t nv = vars_.size();
    if (s == steps_.size()) return leaf();
    for (const auto& w : steps_[s]) {
      if (++nodes_ > budget_) {
        aborted_ = true;
        return;
      }
      bool ok = true;
      for (std::size_t i = 0; i < nv && ok; ++i) {
        const std::int64_t v = partial_[i] + w[i];
        ok = v + suffix_min_[s + 1][i] <= lim && v + suffix_max_[s + 1][i] >= -lim;
      }
      if (!ok) {
        res_->rejections["spectral:bound"] += 1;
        continue;
      }
      for (std::size_t i = 0; i < nv; ++i) partial_[i] += w[i];
      dfs(s + 1);
      for (std::size_t i = 0; i < nv; ++i) partial_[i] -= w[i];
      if (aborted_) return;
    }
  }

  void leaf() {
    PowerChain chain = tmpl_;
    chain.unknown.m = tmpl_.m;
    chain.unknown.entries.assign(g_.classes().size(), 0);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (partial_[i] % den_ != 0) {
        res_->rejections["spectral:integrality"] += 1;
        return;
      }
      chain.unknown.entries[vars_[i]] = partial_[i] / den_;
    }
    if (!filter_accepts(ctx_, chain)) {
      res_->rejections["spectral:filter"] += 1;
      return;
    }
    res_->survivors.push_back(chain.unknown);
  }
};

}  // namespace

FilterResult help_filter(const HelpContext& ctx, const PowerChain& pinned_template) {
  validate_chain(*ctx.group, pinned_template, false);
  const std::uint64_t budget = ctx.options.node_budget;
  // the depth-first search settles most templates quickly; the spectral
  // search covers the rest when the characters separate the classes
  const std::uint64_t probe = std::min<std::uint64_t>(budget, 50'000);
  FilterResult first = Search(ctx, pinned_template, probe).run();
  if (first.status == FilterStatus::Complete || probe == budget) return first;
  SpectralSearch spectral(ctx, pinned_template);
  if (spectral.prepare() && spectral.cost() <= budget) {
    FilterResult res = spectral.run(budget);
    res.nodes += first.nodes;
    return res;
  }
  FilterResult res = Search(ctx, pinned_template, budget).run();
  res.nodes += first.nodes;
  return res;
}

bool rational_conjugacy_check(const PowerChain& chain) {
  return std::all_of(chain.unknown.entries.begin(), chain.unknown.entries.end(), [](auto v) { return v >= 0; });
}

AuditReport zc_audit(const FiniteGroup& g, const std::vector<std::uint64_t>& orders, const HelpOptions& options) {
  return zc_audit(make_context(g, options), orders);
}

AuditReport zc_audit(const HelpContext& ctx, const std::vector<std::uint64_t>& orders) {
  const FiniteGroup& g = *ctx.group;
  AuditReport rep;
  rep.group_order = g.order();
  rep.bound = ctx.options.bound;
  rep.characters = selection_name(ctx.options.characters);
  rep.assume_quotient_zc = ctx.options.assume_quotient_zc;
  rep.character_count = ctx.characters.size();
  for (auto m : orders) {
    if (m == 0) throw InvalidInput("unit order must be positive");
    const auto start = std::chrono::steady_clock::now();
    LevelReport level;
    level.m = m;
    const auto templates = chain_templates(g, m);
    level.templates = templates.size();
    std::vector<FilterResult> results(templates.size());
    parallel_for(templates.size(), ctx.options.workers,
                 [&](std::size_t i) { results[i] = help_filter(ctx, templates[i]); });
    bool budget = false;
    for (std::size_t i = 0; i < templates.size(); ++i) {
      auto& r = results[i];
      level.nodes += r.nodes;
      for (const auto& [k, v] : r.rejections) level.rejections[k] += v;
      if (r.status == FilterStatus::Budget) budget = true;
      for (auto& s : r.survivors) {
        PowerChain chain = templates[i];
        chain.unknown = s;
        SurvivorRecord rec{templates[i].pinned, s, rational_conjugacy_check(chain)};
        if (!rec.non_negative) ++level.negative_survivors;
        level.survivors.push_back(std::move(rec));
      }
    }
    level.status = budget ? "budget" : (level.negative_survivors == 0 ? "certified" : "undecided");
    level.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rep.levels.push_back(std::move(level));
  }
  return rep;
}

}  // namespace helpkit
