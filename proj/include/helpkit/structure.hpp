#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "helpkit/group.hpp"

namespace helpkit {

struct StructureReport {
  std::size_t order = 1;
  std::size_t class_count = 1;
  Subgroup center;
  Subgroup derived;
  Subgroup socle;
  std::uint64_t exponent = 1;
  bool is_abelian = true;
  bool is_nilpotent = true;
  bool is_hamiltonian = false;
  std::map<std::uint64_t, Subgroup> sylow;  // one per prime divisor of |G|
};

StructureReport structure_report(const FiniteGroup& g);

Subgroup center(const FiniteGroup& g);
Subgroup derived_subgroup(const FiniteGroup& g);
std::uint64_t exponent(const FiniteGroup& g);
std::uint64_t exponent(const FiniteGroup& g, const Subgroup& h);
// A Sylow p-subgroup, grown one step at a time inside normalizers.
Subgroup sylow_subgroup(const FiniteGroup& g, std::uint64_t p);
bool is_nilpotent(const FiniteGroup& g);
// Non-abelian with every subgroup normal; checking cyclic subgroups suffices.
bool is_hamiltonian(const FiniteGroup& g);

// Every normal subgroup, sorted (by order, then elements).
std::vector<Subgroup> normal_subgroups(const FiniteGroup& g);
std::vector<Subgroup> minimal_normal_subgroups(const FiniteGroup& g);
Subgroup socle(const FiniteGroup& g);

// Invariant fingerprint: equal for isomorphic groups.
std::string fingerprint(const FiniteGroup& g);

}  // namespace helpkit
