#pragma once

// Partial augmentations of torsion units and the HeLP filter.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "helpkit/characters.hpp"
#include "helpkit/group.hpp"

namespace helpkit {

// Partial augmentations ε_C(u) of a unit u of order m, per class of G.
struct PartialAugVector {
  std::uint64_t m = 1;
  std::vector<std::int64_t> entries;

  friend bool operator==(const PartialAugVector&, const PartialAugVector&) = default;
  friend auto operator<=>(const PartialAugVector&, const PartialAugVector&) = default;
};

// u together with a group element g_d standing for u^d, for every divisor
// 1 < d < m.  (u^m = 1 needs no entry.)
struct PowerChain {
  std::uint64_t m = 1;
  std::map<std::uint64_t, Element> pinned;
  PartialAugVector unknown;

  // The element pinned for u^d; identity for d = m.
  Element power(const FiniteGroup& g, std::uint64_t d) const;
};

PartialAugVector trivial_pa(const FiniteGroup& g, Element x);
PowerChain trivial_chain(const FiniteGroup& g, Element x);

// Throws InvalidInput when orders or power compatibility are violated.
void validate_chain(const FiniteGroup& g, const PowerChain& chain, bool require_unknown = true);

struct HelpOptions {
  std::int64_t bound = 5;
  CharacterSelection characters = CharacterSelection::All;
  // Proper quotients satisfy ZC, so partial augmentations over g^G N are
  // those of a group element of G/N.
  bool assume_quotient_zc = true;
  std::uint64_t node_budget = 200'000'000;
  std::size_t workers = 1;
};

// Cliff–Weiss data for an abelian normal N and K ≤ N with N/K cyclic: for
// every x ∈ N, Σ_{k∈K} |C_G(xk)| ε_{xk}(u) ≥ 0 when u maps to 1 mod N.
struct CliffWeissPair {
  Subgroup n;
  Subgroup k;
  std::vector<std::vector<std::int64_t>> rows;  // coefficient per class, one row per coset xK
};

// Everything the filter needs about G, computed once.
struct HelpContext {
  const FiniteGroup* group = nullptr;
  HelpOptions options;
  std::vector<ClassFunction> characters;
  std::vector<Subgroup> normals;          // non-trivial normal subgroups
  std::vector<std::size_t> minimal;       // indices into normals
  std::vector<std::vector<std::size_t>> block_of;  // per normal: class -> block
  std::vector<CliffWeissPair> cliff_weiss;
};

HelpContext make_context(const FiniteGroup& g, const HelpOptions& options = {});
HelpContext make_context(const FiniteGroup& g, std::vector<ClassFunction> characters, const HelpOptions& options = {});

struct ConstraintResult {
  std::string id;
  bool passed = true;
  std::string detail;
};

struct ConstraintReport {
  std::vector<ConstraintResult> results;
  bool all_passed() const;
};

ConstraintReport basic_constraints(const HelpContext& ctx, const PowerChain& chain);

// Eigenvalue multiplicities μ_l of ζ_m^l for l = 0..m-1.  Each value is
// exact; it is a rational integer for genuine units.
struct MultiplicityVector {
  std::vector<Cyclotomic> mu;

  bool integral_nonnegative() const;
  std::vector<std::int64_t> as_integers() const;  // throws unless integral
};

MultiplicityVector multiplicities(const FiniteGroup& g, const PowerChain& chain, const ClassFunction& chi);

// μ_l = constant_l + Σ_C coefficient_l[C] ε_C for the given pinned powers.
struct AffineMultiplicities {
  std::vector<Rational> constant;
  std::vector<std::vector<Rational>> coefficient;
};
AffineMultiplicities affine_multiplicities(const FiniteGroup& g, const PowerChain& pinned_template,
                                           const ClassFunction& chi);

// Pinned powers for order m: one g_p per prime p | m, up to conjugacy, with
// g_p^q ~ g_q^p.  Result chains have an empty unknown vector.
std::vector<PowerChain> chain_templates(const FiniteGroup& g, std::uint64_t m);

// The filter's acceptance predicate for one complete chain.
bool filter_accepts(const HelpContext& ctx, const PowerChain& chain);

enum class FilterStatus { Complete, Budget };

struct FilterResult {
  std::vector<PartialAugVector> survivors;  // canonically sorted
  FilterStatus status = FilterStatus::Complete;
  std::uint64_t nodes = 0;
  std::map<std::string, std::uint64_t> rejections;  // constraint id -> pruned branches
};

// Every vector with entries in [-B, B] that passes the constraint battery
// and yields multiplicities in Z≥0 for every character of the context.
FilterResult help_filter(const HelpContext& ctx, const PowerChain& pinned_template);

bool rational_conjugacy_check(const PowerChain& chain);

struct SurvivorRecord {
  std::map<std::uint64_t, Element> pinned;
  PartialAugVector vector;
  bool non_negative = true;
};

struct LevelReport {
  std::uint64_t m = 1;
  std::size_t templates = 0;
  std::vector<SurvivorRecord> survivors;
  std::size_t negative_survivors = 0;
  std::string status;  // certified, undecided, budget
  std::uint64_t nodes = 0;
  double elapsed_ms = 0;
  std::map<std::string, std::uint64_t> rejections;
};

struct AuditReport {
  std::size_t group_order = 1;
  std::int64_t bound = 5;
  std::string characters;
  bool assume_quotient_zc = true;
  std::size_t character_count = 0;
  std::vector<LevelReport> levels;
};

AuditReport zc_audit(const FiniteGroup& g, const std::vector<std::uint64_t>& orders, const HelpOptions& options = {});
AuditReport zc_audit(const HelpContext& ctx, const std::vector<std::uint64_t>& orders);

}  // namespace helpkit
