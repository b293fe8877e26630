#include "helpkit/constructions.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "helpkit/arith.hpp"
#include "helpkit/permutation.hpp"
#include "helpkit/structure.hpp"

namespace helpkit {

using nlohmann::json;

std::vector<std::int64_t> action_from_generators(const FiniteGroup& h, std::uint64_t n,
                                                 const std::vector<std::int64_t>& images) {
  const auto gens = h.generators();
  if (images.size() != gens.size())
    throw InvalidInput("action needs " + std::to_string(gens.size()) + " generator images, got " +
                       std::to_string(images.size()));
  const auto m = static_cast<std::int64_t>(n);
  std::vector<std::int64_t> r(h.order(), -1);
  std::vector<std::int64_t> img;
  for (auto v : images) {
    const auto u = mod_floor(v, m);
    if (gcd_u(static_cast<std::uint64_t>(u), n) != 1 && n > 1)
      throw InvalidInput("action image " + std::to_string(v) + " is not a unit mod " + std::to_string(n));
    img.push_back(u);
  }
  std::vector<Element> queue{h.identity()};
  r[h.identity()] = 1 % m;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Element x = queue[i];
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const Element y = h.mul(x, gens[s]);
      const std::int64_t v = r[x] * img[s] % m;
      if (r[y] < 0) {
        r[y] = v;
        queue.push_back(y);
      } else if (r[y] != v) {
        throw InvalidInput("action is not a homomorphism into the units mod " + std::to_string(n));
      }
    }
  }
  return r;
}

SemidirectResult semidirect(const SemidirectSpec& spec) {
  const std::uint64_t n = spec.n;
  const FiniteGroup& h = spec.complement;
  if (n == 0) throw InvalidInput("cyclic factor must have positive order");
  const std::size_t total = n * h.order();
  if (total > kDefaultOrderCap)
    throw CapExceeded("semidirect product of order " + std::to_string(total) + " exceeds cap " +
                      std::to_string(kDefaultOrderCap));
  if (spec.action.size() != h.order()) throw InvalidInput("action must list one exponent per complement element");
  const auto m = static_cast<std::int64_t>(n);
  std::vector<std::int64_t> r(h.order());
  for (std::size_t x = 0; x < h.order(); ++x) {
    r[x] = mod_floor(spec.action[x], m);
    if (n > 1 && gcd_u(static_cast<std::uint64_t>(r[x]), n) != 1)
      throw InvalidInput("action exponent is not a unit");
  }
  for (std::size_t x = 0; x < h.order(); ++x)
    for (std::size_t y = 0; y < h.order(); ++y)
      if (r[h.mul(static_cast<Element>(x), static_cast<Element>(y))] != r[x] * r[y] % m)
        throw InvalidInput("action is not a homomorphism");

  std::vector<Element> table(total * total);
  for (std::size_t hx = 0; hx < h.order(); ++hx) {
    const std::int64_t rinv = r[h.inv(static_cast<Element>(hx))];
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t row = i + n * hx;
      for (std::size_t hy = 0; hy < h.order(); ++hy) {
        const std::size_t hk = h.mul(static_cast<Element>(hx), static_cast<Element>(hy));
        for (std::size_t j = 0; j < n; ++j) {
          const auto e = static_cast<std::uint64_t>((static_cast<std::int64_t>(i) + static_cast<std::int64_t>(j) * rinv) % m);
          table[row * total + j + n * hy] = static_cast<Element>(e + n * hk);
        }
      }
    }
  }
  std::vector<std::string> labels(total);
  for (std::size_t hx = 0; hx < h.order(); ++hx)
    for (std::size_t i = 0; i < n; ++i) {
      std::string s = i == 0 ? "" : (i == 1 ? "a" : "a^" + std::to_string(i));
      if (hx != h.identity()) s += (s.empty() ? "" : "*") + h.label(static_cast<Element>(hx));
      labels[i + n * hx] = s.empty() ? "1" : s;
    }
  std::vector<Element> gens;
  const auto a = static_cast<Element>(1 % n + n * h.identity());
  if (n > 1) gens.push_back(a);
  for (Element s : h.generators()) gens.push_back(static_cast<Element>(n * s));

  SemidirectResult out;
  out.group = FiniteGroup::from_table(std::move(table), total, std::move(labels), std::move(gens));
  out.a = a;
  out.a_subgroup = subgroup_closure(out.group, std::span<const Element>(&out.a, 1));
  return out;
}

FiniteGroup quaternion_group() {
  // index = unit + 4 * sign, units ordered 1, i, j, k
  static constexpr int kSign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  static constexpr int kUnit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  std::vector<Element> table(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const int ux = x % 4, uy = y % 4;
      const int sign = (x / 4) ^ (y / 4) ^ kSign[ux][uy];
      table[x * 8 + y] = static_cast<Element>(kUnit[ux][uy] + 4 * sign);
    }
  std::vector<std::string> labels{"1", "i", "j", "k", "-1", "-i", "-j", "-k"};
  return FiniteGroup::from_table(std::move(table), 8, std::move(labels), {1, 2});
}

FiniteGroup elementary_abelian(std::uint64_t p, std::size_t rank) {
  FiniteGroup g;
  for (std::size_t i = 0; i < rank; ++i) g = i == 0 ? cyclic_group(p) : direct_product(g, cyclic_group(p));
  return g;
}

FiniteGroup hamiltonian(const std::vector<std::uint64_t>& odd_orders, std::size_t two_rank) {
  std::size_t order = 8;
  for (auto k : odd_orders) {
    if (k == 0 || k % 2 == 0) throw InvalidInput("odd part of a Hamiltonian group needs odd orders, got " + std::to_string(k));
    order *= k;
  }
  order <<= two_rank;
  if (order > kDefaultOrderCap) throw CapExceeded("Hamiltonian group exceeds order cap");
  FiniteGroup g = quaternion_group();
  for (std::size_t i = 0; i < two_rank; ++i) g = direct_product(g, cyclic_group(2));
  for (auto k : odd_orders)
    if (k > 1) g = direct_product(g, cyclic_group(k));
  return g;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::CyclicByP: return "cyclic-by-p";
    case Family::CyclicByAbelian: return "cyclic-by-abelian";
    case Family::CyclicByHamiltonian: return "cyclic-by-hamiltonian";
    case Family::Control: return "control";
  }
  return "control";
}

Family parse_family(const std::string& s) {
  if (s == "cyclic-by-p") return Family::CyclicByP;
  if (s == "cyclic-by-abelian") return Family::CyclicByAbelian;
  if (s == "cyclic-by-hamiltonian") return Family::CyclicByHamiltonian;
  if (s == "control") return Family::Control;
  throw InvalidInput("unknown family tag \"" + s + "\"");
}

bool in_family(const FiniteGroup& g, const Subgroup& a, Family f) {
  if (!is_cyclic(g, a) || !is_normal(g, a)) return false;
  if (f == Family::Control) return true;
  const std::size_t index = g.order() / a.order();
  switch (f) {
    case Family::CyclicByP: return index == 1 || is_prime_power(index);
    case Family::CyclicByAbelian: return is_abelian(quotient(g, a).target, quotient(g, a).target.whole());
    case Family::CyclicByHamiltonian: return is_hamiltonian(quotient(g, a).target);
    case Family::Control: return true;
  }
  return false;
}

BuiltGroup build_from_recipe(const json& recipe) {
  if (!recipe.is_object() || !recipe.contains("kind")) throw InvalidInput("recipe must be an object with a kind");
  const std::string kind = recipe.at("kind").get<std::string>();
  try {
    if (kind == "cyclic") return {cyclic_group(recipe.at("n").get<std::size_t>()), std::nullopt};
    if (kind == "quaternion") return {quaternion_group(), std::nullopt};
    if (kind == "hamiltonian")
      return {hamiltonian(recipe.value("odd", std::vector<std::uint64_t>{}), recipe.value("two_rank", std::size_t{0})),
              std::nullopt};
    if (kind == "perm") {
      std::vector<Permutation> gens;
      for (const auto& s : recipe.at("generators")) gens.push_back(Permutation::parse(s.get<std::string>()));
      return {closure(gens), std::nullopt};
    }
    if (kind == "direct_product") {
      FiniteGroup g;
      bool first = true;
      for (const auto& f : recipe.at("factors")) {
        FiniteGroup next = build_from_recipe(f).group;
        g = first ? next : direct_product(g, next);
        first = false;
      }
      return {g, std::nullopt};
    }
    if (kind == "semidirect") {
      SemidirectSpec spec;
      spec.n = recipe.at("n").get<std::uint64_t>();
      spec.complement = build_from_recipe(recipe.at("complement")).group;
      spec.action = action_from_generators(spec.complement, spec.n, recipe.at("images").get<std::vector<std::int64_t>>());
      auto r = semidirect(spec);
      return {std::move(r.group), r.a};
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed ") + kind + " recipe: " + e.what());
  }
  throw InvalidInput("unknown recipe kind \"" + kind + "\"");
}

namespace {

std::vector<std::int64_t> units_with_order_dividing(std::uint64_t n, std::uint64_t k) {
  std::vector<std::int64_t> out;
  const auto m = static_cast<std::int64_t>(n);
  for (std::int64_t r = 0; r < m; ++r) {
    if (gcd_u(static_cast<std::uint64_t>(r), n) != 1 && n > 1) continue;
    if (pow_mod(r, k, m) == 1 % m) out.push_back(r);
  }
  return out;
}

struct CyclicCandidate {
  Subgroup subgroup;
  Element generator;
};

// Cyclic normal subgroups, each with its least generator, in element order.
std::vector<CyclicCandidate> cyclic_normal_subgroups(const FiniteGroup& g) {
  std::vector<CyclicCandidate> out;
  std::set<Subgroup> seen;
  for (std::size_t x = 0; x < g.order(); ++x) {
    auto e = static_cast<Element>(x);
    Subgroup c = subgroup_closure(g, std::span<const Element>(&e, 1));
    if (!seen.insert(c).second) continue;
    if (is_normal(g, c)) out.push_back({std::move(c), e});
  }
  return out;
}

CorpusEntry make_entry(std::string id, Family fam, FiniteGroup g, Element a, json recipe) {
  CorpusEntry e;
  e.id = std::move(id);
  e.family = fam;
  e.group = std::move(g);
  e.witness_generator = a;
  e.witness = subgroup_closure(e.group, std::span<const Element>(&a, 1));
  e.recipe = std::move(recipe);
  return e;
}

// Control witness: a cyclic normal subgroup of largest order.
CorpusEntry control_entry(std::string id, FiniteGroup g, json recipe) {
  auto cands = cyclic_normal_subgroups(g);
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i)
    if (cands[i].subgroup.order() > cands[best].subgroup.order()) best = i;
  return make_entry(std::move(id), Family::Control, std::move(g), cands[best].generator, std::move(recipe));
}

std::string perm_string(const std::vector<std::uint32_t>& image) { return Permutation(image).to_cycles(); }

json sl23_recipe() {
  // SL(2,3) acting on the nonzero vectors (a,b) of F_3^2, point 3a+b.
  auto perm_of = [](int m00, int m01, int m10, int m11) {
    std::vector<std::uint32_t> image(9);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const int c = (m00 * a + m01 * b) % 3, d = (m10 * a + m11 * b) % 3;
        image[3 * a + b] = static_cast<std::uint32_t>(3 * c + d);
      }
    // drop the zero vector so points are 1..8
    std::vector<std::uint32_t> shifted(8);
    for (int v = 1; v < 9; ++v) shifted[v - 1] = image[v] - 1;
    return perm_string(shifted);
  };
  return {{"kind", "perm"}, {"generators", {perm_of(1, 1, 0, 1), perm_of(0, 2, 1, 0)}}};
}

json agl18_recipe() {
  // x -> x + 1 and x -> t x on F_8 = F_2[t]/(t^3 + t + 1)
  std::vector<std::uint32_t> shift(8), times(8);
  for (std::uint32_t x = 0; x < 8; ++x) {
    shift[x] = x ^ 1U;
    std::uint32_t y = x << 1U;
    if (y & 8U) y ^= 0b1011U;
    times[x] = y;
  }
  return {{"kind", "perm"}, {"generators", {perm_string(shift), perm_string(times)}}};
}

json cyclic_recipe(std::uint64_t n) { return {{"kind", "cyclic"}, {"n", n}}; }

}  // namespace

std::optional<CorpusEntry> hamiltonian_witness(const FiniteGroup& g, std::optional<Element> preferred) {
  std::vector<CyclicCandidate> valid;
  for (auto& c : cyclic_normal_subgroups(g))
    if (is_hamiltonian(quotient(g, c.subgroup).target)) valid.push_back(std::move(c));
  if (valid.empty()) return std::nullopt;
  std::size_t best_order = 0;
  for (const auto& c : valid) best_order = std::max(best_order, c.subgroup.order());
  std::vector<CyclicCandidate> top;
  for (auto& c : valid)
    if (c.subgroup.order() == best_order) top.push_back(std::move(c));
  std::size_t pick = 0;
  if (preferred) {
    for (std::size_t i = 0; i < top.size(); ++i)
      if (top[i].subgroup.contains(*preferred) && g.element_order(*preferred) == best_order) pick = i;
  }
  CorpusEntry e;
  e.family = Family::CyclicByHamiltonian;
  e.group = g;
  e.witness = top[pick].subgroup;
  e.witness_generator = top[pick].generator;
  if (preferred && top[pick].subgroup.contains(*preferred) && g.element_order(*preferred) == best_order)
    e.witness_generator = *preferred;
  for (std::size_t i = 0; i < top.size(); ++i)
    if (i != pick) e.alternatives.push_back(top[i].generator);
  return e;
}

std::vector<CorpusEntry> build_corpus(std::size_t max_order) {
  if (max_order > kDefaultOrderCap) throw CapExceeded("corpus max order exceeds cap");
  std::vector<CorpusEntry> out;
  out.push_back(control_entry("1", FiniteGroup{}, cyclic_recipe(1)));
  if (max_order < 2) return out;

  std::set<std::string> abelian_seen{fingerprint(FiniteGroup{})};

  // C_n ⋊ C_q, q a prime power, one entry per cyclic subgroup ⟨r⟩ ≤ Aut(C_n)
  // of order dividing q (r = 1 gives the direct product).
  for (std::uint64_t n = 2; 2 * n <= max_order; ++n) {
    for (std::uint64_t q = 2; n * q <= max_order; ++q) {
      if (!is_prime_power(q)) continue;
      std::vector<std::int64_t> reps{1 % static_cast<std::int64_t>(n)};
      std::set<std::set<std::int64_t>> seen_subgroups;
      for (auto r : units_with_order_dividing(n, q)) {
        if (r == 1 % static_cast<std::int64_t>(n)) continue;
        std::set<std::int64_t> powers;
        for (std::uint64_t k = 0; k < q; ++k) powers.insert(pow_mod(r, k, static_cast<std::int64_t>(n)));
        if (seen_subgroups.insert(powers).second) reps.push_back(r);
      }
      for (auto r : reps) {
        json recipe = {{"kind", "semidirect"}, {"n", n}, {"complement", cyclic_recipe(q)}, {"images", {r}}};
        auto built = build_from_recipe(recipe);
        std::string id;
        if (r == 1) {
          if (!abelian_seen.insert(fingerprint(built.group)).second) continue;
          id = "C" + std::to_string(n) + "xC" + std::to_string(q);
        } else {
          id = "C" + std::to_string(n) + ":C" + std::to_string(q) + "(" + std::to_string(r) + ")";
        }
        out.push_back(make_entry(id, Family::CyclicByP, std::move(built.group), *built.a, recipe));
      }
    }
  }

  // C_n ⋊ H for a few abelian non-cyclic or non-prime-power H.
  const std::vector<std::pair<std::string, json>> abelian_complements = {
      {"C2xC2", {{"kind", "direct_product"}, {"factors", {cyclic_recipe(2), cyclic_recipe(2)}}}},
      {"C6", cyclic_recipe(6)},
      {"C2xC4", {{"kind", "direct_product"}, {"factors", {cyclic_recipe(2), cyclic_recipe(4)}}}},
  };
  for (const auto& [name, complement_recipe] : abelian_complements) {
    const FiniteGroup h = build_from_recipe(complement_recipe).group;
    std::vector<std::size_t> gen_orders;
    for (Element s : h.generators()) gen_orders.push_back(h.element_order(s));
    for (std::uint64_t n = 3; n * h.order() <= max_order; ++n) {
      std::set<std::string> seen;
      std::vector<std::vector<std::int64_t>> choices;
      for (auto k : gen_orders) choices.push_back(units_with_order_dividing(n, k));
      std::vector<std::int64_t> images(gen_orders.size());
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == images.size()) {
          if (std::all_of(images.begin(), images.end(), [](auto v) { return v == 1; })) return;
          json recipe = {{"kind", "semidirect"}, {"n", n}, {"complement", complement_recipe}, {"images", images}};
          BuiltGroup built;
          try {
            built = build_from_recipe(recipe);
          } catch (const InvalidInput&) {
            return;
          }
          if (!seen.insert(fingerprint(built.group)).second) return;
          std::string id = "C" + std::to_string(n) + ":" + name + "(";
          for (std::size_t k = 0; k < images.size(); ++k) id += (k ? "," : "") + std::to_string(images[k]);
          id += ")";
          out.push_back(make_entry(id, Family::CyclicByAbelian, std::move(built.group), *built.a, recipe));
          return;
        }
        for (auto v : choices[i]) {
          images[i] = v;
          rec(i + 1);
        }
      };
      rec(0);
    }
  }

  // C_n ⋊ Q8 over every homomorphism Q8 -> (Z/n)^x.
  std::set<std::string> hamiltonian_seen;
  for (std::uint64_t n = 1; 8 * n <= max_order; ++n) {
    const auto units = units_with_order_dividing(n, 2);
    for (auto s : units)
      for (auto t : units) {
        json recipe = {{"kind", "semidirect"}, {"n", n}, {"complement", {{"kind", "quaternion"}}}, {"images", {s, t}}};
        auto built = build_from_recipe(recipe);
        auto entry = hamiltonian_witness(built.group, n > 1 ? built.a : std::nullopt);
        if (!entry) throw GroupError("C_n:Q8 entry without a Hamiltonian witness");
        entry->id = n == 1 ? "Q8" : "C" + std::to_string(n) + ":Q8(" + std::to_string(s) + "," + std::to_string(t) + ")";
        entry->recipe = recipe;
        hamiltonian_seen.insert(fingerprint(entry->group));
        out.push_back(std::move(*entry));
      }
  }
  // Q8 x C2^r x O not already produced above.
  for (std::size_t r = 0; (std::size_t{8} << r) <= max_order; ++r) {
    for (std::uint64_t odd = 1; (std::uint64_t{8} << r) * odd <= max_order; odd += 2) {
      json recipe = {{"kind", "hamiltonian"}, {"odd", odd > 1 ? std::vector<std::uint64_t>{odd} : std::vector<std::uint64_t>{}}, {"two_rank", r}};
      auto g = build_from_recipe(recipe).group;
      if (!hamiltonian_seen.insert(fingerprint(g)).second) continue;
      auto entry = hamiltonian_witness(g, std::nullopt);
      if (!entry) throw GroupError("Hamiltonian group without a witness");
      entry->id = "Q8";
      for (std::size_t k = 0; k < r; ++k) entry->id += "xC2";
      if (odd > 1) entry->id += "xC" + std::to_string(odd);
      entry->recipe = recipe;
      out.push_back(std::move(*entry));
    }
  }

  // Controls, including groups where the lemma hypotheses fail.
  std::vector<std::pair<std::string, json>> controls = {
      {"A4", {{"kind", "perm"}, {"generators", {"(1,2,3)", "(1,2)(3,4)"}}}},
      {"S4", {{"kind", "perm"}, {"generators", {"(1,2,3,4)", "(1,2)"}}}},
      {"SL(2,3)", sl23_recipe()},
      {"S3xS3", {{"kind", "direct_product"},
                 {"factors", {{{"kind", "perm"}, {"generators", {"(1,2,3)", "(1,2)"}}},
                              {{"kind", "perm"}, {"generators", {"(1,2,3)", "(1,2)"}}}}}}},
      {"C2^3:C7", agl18_recipe()},
      {"C2^3", {{"kind", "direct_product"}, {"factors", {cyclic_recipe(2), cyclic_recipe(2), cyclic_recipe(2)}}}},
      {"C2^4", {{"kind", "direct_product"},
                {"factors", {cyclic_recipe(2), cyclic_recipe(2), cyclic_recipe(2), cyclic_recipe(2)}}}},
      {"C3xC3xC3", {{"kind", "direct_product"}, {"factors", {cyclic_recipe(3), cyclic_recipe(3), cyclic_recipe(3)}}}},
  };
  for (auto& [id, recipe] : controls) {
    auto g = build_from_recipe(recipe).group;
    if (g.order() > max_order) continue;
    out.push_back(control_entry(id, std::move(g), recipe));
  }

  for (const auto& e : out)
    if (!in_family(e.group, e.witness, e.family))
      throw GroupError("corpus entry " + e.id + " fails its family tag");
  return out;
}

json manifest_json(const std::vector<CorpusEntry>& entries, std::size_t max_order) {
  json list = json::array();
  for (const auto& e : entries) {
    list.push_back({{"id", e.id},
                    {"family", family_name(e.family)},
                    {"order", e.group.order()},
                    {"recipe", e.recipe},
                    {"witness_generator", e.witness_generator},
                    {"witness_order", e.witness.order()},
                    {"alternatives", e.alternatives}});
  }
  return {{"schema_version", kManifestSchemaVersion}, {"max_order", max_order}, {"entries", list}};
}

std::vector<CorpusEntry> load_manifest(const json& manifest) {
  if (!manifest.is_object()) throw InvalidInput("manifest must be a JSON object");
  if (manifest.value("schema_version", 0) != kManifestSchemaVersion)
    throw InvalidInput("unsupported manifest schema version");
  std::vector<CorpusEntry> out;
  if (!manifest.contains("entries")) return out;
  for (const auto& item : manifest.at("entries")) {
    try {
      auto built = build_from_recipe(item.at("recipe"));
      const auto gen = item.at("witness_generator").get<Element>();
      if (built.group.order() != item.at("order").get<std::size_t>())
        throw InvalidInput("entry " + item.at("id").get<std::string>() + " rebuilds with a different order");
      if (gen >= built.group.order()) throw InvalidInput("witness generator out of range");
      auto e = make_entry(item.at("id").get<std::string>(), parse_family(item.at("family").get<std::string>()),
                          std::move(built.group), gen, item.at("recipe"));
      e.alternatives = item.value("alternatives", std::vector<Element>{});
      if (!in_family(e.group, e.witness, e.family))
        throw InvalidInput("entry " + e.id + " does not satisfy its family tag");
      out.push_back(std::move(e));
    } catch (const json::exception& ex) {
      throw InvalidInput(std::string("malformed manifest entry: ") + ex.what());
    }
  }
  return out;
}

}  // namespace helpkit
