#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "helpkit/group.hpp"

namespace helpkit {

// A ⋊ H with A = <a> cyclic of order n and h^-1 a h = a^action[h].
// Element a^i h has index i + n * h.
struct SemidirectSpec {
  std::uint64_t n = 1;
  FiniteGroup complement;
  std::vector<std::int64_t> action;  // one unit mod n per complement element
};

struct SemidirectResult {
  FiniteGroup group;
  Subgroup a_subgroup;
  Element a = 0;
};

// Extends exponents given on the complement's generators to all of H and
// checks the result is a homomorphism into the units mod n.
std::vector<std::int64_t> action_from_generators(const FiniteGroup& h, std::uint64_t n,
                                                 const std::vector<std::int64_t>& images);

SemidirectResult semidirect(const SemidirectSpec& spec);
FiniteGroup quaternion_group();
FiniteGroup elementary_abelian(std::uint64_t p, std::size_t rank);
// Q8 x C2^two_rank x prod C_k for k in odd_orders.
FiniteGroup hamiltonian(const std::vector<std::uint64_t>& odd_orders, std::size_t two_rank);

enum class Family { CyclicByP, CyclicByAbelian, CyclicByHamiltonian, Control };
std::string family_name(Family f);
Family parse_family(const std::string& s);

// Whether G/A lies in the family (A must be cyclic and normal).
bool in_family(const FiniteGroup& g, const Subgroup& a, Family f);

// Recipes are JSON objects describing how to rebuild a group:
//   {"kind":"cyclic","n":k}
//   {"kind":"quaternion"}
//   {"kind":"hamiltonian","odd":[...],"two_rank":r}
//   {"kind":"perm","generators":["(1,2,3)",...]}
//   {"kind":"direct_product","factors":[recipe,...]}
//   {"kind":"semidirect","n":k,"complement":recipe,"images":[e1,...]}
// Semidirect images give the exponent for each complement generator.
struct BuiltGroup {
  FiniteGroup group;
  std::optional<Element> a;  // generator of the constructed cyclic normal subgroup
};
BuiltGroup build_from_recipe(const nlohmann::json& recipe);

struct CorpusEntry {
  std::string id;
  Family family = Family::Control;
  FiniteGroup group;
  Subgroup witness;  // the cyclic normal subgroup A
  Element witness_generator = 0;
  std::vector<Element> alternatives;  // generators of other valid A of the same order
  nlohmann::json recipe;
};

// Largest cyclic normal A with G/A Hamiltonian.  Ties go to `preferred`
// when it qualifies, otherwise to the least generator index.
std::optional<CorpusEntry> hamiltonian_witness(const FiniteGroup& g, std::optional<Element> preferred);

std::vector<CorpusEntry> build_corpus(std::size_t max_order);

inline constexpr int kManifestSchemaVersion = 1;
nlohmann::json manifest_json(const std::vector<CorpusEntry>& entries, std::size_t max_order);
// Rebuilds every entry and re-verifies witness and family tag.
std::vector<CorpusEntry> load_manifest(const nlohmann::json& manifest);

}  // namespace helpkit
