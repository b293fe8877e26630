#pragma once

// Executable checks of the group-theoretic statements used in the ZC
// arguments for cyclic-by-nilpotent groups, and the ledger that collects
// them over a corpus.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "helpkit/constructions.hpp"
#include "helpkit/group.hpp"

namespace helpkit {

struct LemmaVerdict {
  std::string lemma;
  bool hypotheses_hold = false;
  std::optional<bool> conclusion;  // only set when the hypotheses hold
  std::vector<std::string> witnesses;
  std::string note;
  nlohmann::json quantities = nlohmann::json::object();

  bool violated() const { return hypotheses_hold && conclusion == false; }
};

nlohmann::json to_json(const LemmaVerdict& v);

// A cyclic, normal, G/A nilpotent.
bool nilpotent_setting(const FiniteGroup& g, const Subgroup& a);
// A cyclic, normal, G/A Hamiltonian.
bool hamiltonian_setting(const FiniteGroup& g, const Subgroup& a);

// C_G(A) normal and nilpotent, G' ⊆ C_G(A), (G', A) = 1.
LemmaVerdict check_centralizer_lemma(const FiniteGroup& g, const Subgroup& a);

// For A a cyclic normal Hall subgroup with G/A nilpotent:
// C_G(A) = C_G(Soc(A)), and Sylow p-subgroups are abelian when Z(G)_p = 1.
LemmaVerdict check_hall_lemma(const FiniteGroup& g, const Subgroup& a);

// x^G N = x^G as sets.
bool fusion_holds(const FiniteGroup& g, Element x, const Subgroup& n);
// Pattern (i): x ∉ C_G(A), N the normal subgroup generated by (a, x^t).
LemmaVerdict check_fusion_outside_centralizer(const FiniteGroup& g, const Subgroup& a, Element x);
// Pattern (ii): N = <(g,x)> non-trivial normal, ((g,x),g) = 1, ((g,G),x) = 1.
LemmaVerdict check_fusion_commutator(const FiniteGroup& g, Element g_elt, Element x);

// In the Hamiltonian setting: (g,G) ⊆ A_{2'} and (g, D_2) = 1 for odd-order g.
LemmaVerdict check_commutator_odd(const FiniteGroup& g, const Subgroup& a);

// Data of the cyclic-by-Hamiltonian setting.  `nu` is an order-2 element of
// G' outside A when one exists; `gamma` and `x_test` are the pinned image
// element and the test element of D.
struct FormulaContext {
  const FiniteGroup* group = nullptr;
  Subgroup a;
  Element a_gen = 0;
  std::uint64_t n = 1;
  Subgroup c;  // C_G(A)
  Subgroup d;  // Z(C)
  std::optional<Element> nu;
  std::uint64_t f = 1, f1 = 1, f2 = 1;  // f = f1 * f2, gcd(f2, |D|) = 1
  Subgroup b;                           // the subgroup of A of order gcd(f, n)
  Element gamma = 0;
  Element x_test = 0;
};

// Fills n, C, D, ν and splits f; b uses gcd(f, n).
FormulaContext make_formula_context(const FiniteGroup& g, const Subgroup& a, std::uint64_t f, Element gamma,
                                    Element x_test);
// The setting where the intersection claims apply: G not
// cyclic-by-abelian, ν exists with A x <ν> ⊆ D, and K_D non-empty.
bool strict_hamiltonian_setting(const FormulaContext& ctx);

LemmaVerdict check_section5_bounds(const FormulaContext& ctx);

// Both sides of the partial augmentation trace formula for the genuine
// element u, plus the two counting identities behind it.
LemmaVerdict verify_eq41(const FiniteGroup& g, const Subgroup& n, Element u, Element x, std::uint64_t f);

struct CounterexampleShape {
  Element x = 0, y = 0, w = 0, v = 0;
  std::uint64_t n = 1;
};
// First (x, y, w) in index order satisfying the relation set, or none.
std::optional<CounterexampleShape> scan_shape(const FiniteGroup& g, const Subgroup& a);

struct Thm13Conditions {
  bool a_not_multiple_of_8 = false;
  bool index_not_multiple_of_16 = false;
  bool action_image_not_4 = false;
  std::size_t action_image_order = 1;

  bool any() const { return a_not_multiple_of_8 || index_not_multiple_of_16 || action_image_not_4; }
};
Thm13Conditions check_thm13_conditions(const FiniteGroup& g, const Subgroup& a);

struct LemmaSuiteOptions {
  std::size_t workers = 1;
  std::size_t trace_samples = 500;
  std::size_t cardinal_max_order = 48;
};

// Every applicable check on every entry.  The ledger has schema_version,
// per-entry verdict lists and a summary; timing lives in elapsed_ms fields.
nlohmann::json run_lemma_suite(const std::vector<CorpusEntry>& entries, const LemmaSuiteOptions& options = {});
std::vector<LemmaVerdict> lemma_verdicts(const CorpusEntry& entry, const LemmaSuiteOptions& options = {});
// Removes every elapsed_ms field, recursively.
nlohmann::json strip_timing(nlohmann::json ledger);

}  // namespace helpkit
