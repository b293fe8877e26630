#pragma once

// Linear characters of normal subgroups, their inductions to G, the sets
// K_N, and the X/Y coset-counting sets.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "helpkit/cyclotomic.hpp"
#include "helpkit/group.hpp"

namespace helpkit {

// All subgroups of an abelian subgroup N, joined up from its cyclic
// subgroups.  Throws InvalidInput if N is not abelian.
std::vector<Subgroup> abelian_subgroup_lattice(const FiniteGroup& g, const Subgroup& n);

// Invariant factors of an abelian subgroup as prime powers, ascending.
std::vector<std::uint64_t> abelian_invariants(const FiniteGroup& g, const Subgroup& n);

// True when K ⊴ N and N/K is cyclic.
bool cyclic_quotient(const FiniteGroup& g, const Subgroup& n, const Subgroup& k);

struct KNResult {
  std::vector<Subgroup> definitional;  // N/K cyclic, core_G(K) = 1
  bool hypotheses_hold = false;        // A cyclic normal ≤ N, G/A nilpotent
  std::vector<Subgroup> characterized; // K∩A = K∩Z(G) = 1, N/K cyclic
  bool sets_agree = true;
  std::uint64_t exponent = 1;          // Exp(N)
  bool size_bound = true;              // |K_N| ≤ |N|/Exp(N)
  bool index_equals_exponent = true;   // [N:K] = Exp(N) for K ∈ K_N
};

// K_N for an abelian normal N.  The characterization is computed and
// compared whenever `a` is supplied and the hypotheses hold.
KNResult compute_KN(const FiniteGroup& g, const Subgroup& n, const std::optional<Subgroup>& a = std::nullopt);

struct ExponentCount {
  std::uint64_t p = 0;
  std::uint64_t e = 0;          // exponent p^e
  std::uint64_t l = 0;          // number of C_{p^e} factors
  std::uint64_t q_order = 1;    // |Q| for N = C_{p^e}^l x Q
  std::uint64_t closed_form = 0;
  std::uint64_t brute_force = 0;
};

// Elements of maximal order p^e in an abelian p-subgroup N, by closed form
// and by direct count.  Throws InvalidInput if N is not an abelian p-group.
ExponentCount count_exponent_elements(const FiniteGroup& g, const Subgroup& n, std::uint64_t p);

// ψ: N -> C with kernel K and N/K cyclic.  N need not be abelian as long as
// K ⊴ N, which covers linear characters of G itself.
struct LinearCharacter {
  Subgroup domain;
  Subgroup kernel;
  std::uint64_t conductor = 1;   // [N:K]
  Element generator = 0;         // least element generating N/K
  std::vector<std::int32_t> exponent;  // per element of G; -1 outside N

  Cyclotomic value(Element x) const;
};

LinearCharacter linear_character(const FiniteGroup& g, const Subgroup& n, const Subgroup& k);

// A class function of G, given by its values on the classes of G.
struct ClassFunction {
  std::string name;
  std::vector<Cyclotomic> values;  // indexed like g.classes()
  std::uint64_t conductor = 1;

  Cyclotomic at_class(std::size_t c) const { return values[c]; }
  std::int64_t degree() const { return *values[0].as_integer(); }
};

// ψ^G for ψ on a normal subgroup, via class sums.
ClassFunction induce(const FiniteGroup& g, const LinearCharacter& psi);
// ψ^G(x) by the defining sum (1/|N|) Σ_{t∈G} ψ°(t x t^-1).
Cyclotomic frobenius_value(const FiniteGroup& g, const LinearCharacter& psi, Element x);
// <χ, χ> = (1/|G|) Σ_C |C| χ(C) conj(χ(C)).
Rational inner_product_norm(const FiniteGroup& g, const ClassFunction& chi);

enum class CharacterSelection { Linear, Induced, All };
CharacterSelection parse_selection(const std::string& s);
std::string selection_name(CharacterSelection s);

// Linear characters of G (one per kernel) and/or ψ_K^G for every abelian
// normal N and K ≤ N with N/K cyclic.  Duplicates and Galois conjugates are
// dropped; the order of the result is deterministic.
std::vector<ClassFunction> default_characters(const FiniteGroup& g, CharacterSelection sel);

struct XYSets {
  std::vector<Element> x;  // {t ∈ G : g^t ∈ hK}
  std::vector<Element> y;  // {k ∈ K : k = (g^h, h^-1 w) for some w ∈ G}
};

XYSets xy_sets(const FiniteGroup& g, const Subgroup& k, Element g_elt, Element h);
// Y_{K,g,h} alone; depends on h only through g^h.
std::vector<Element> y_set(const FiniteGroup& g, const Subgroup& k, Element g_elt, Element h);

}  // namespace helpkit
