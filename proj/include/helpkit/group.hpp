#pragma once

// Finite groups stored as dense Cayley tables, plus the subgroup/class
// queries everything else is built on.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace helpkit {

using Element = std::uint16_t;

inline constexpr std::size_t kDefaultOrderCap = 4096;

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a construction would produce a group above the order cap.
class CapExceeded : public GroupError {
 public:
  using GroupError::GroupError;
};

// Malformed user input (files, manifests, parameters).
class InvalidInput : public GroupError {
 public:
  using GroupError::GroupError;
};

// A subset of a group's elements, kept sorted and mirrored in a bitmask so
// membership and equality are cheap.  Values are only meaningful relative to
// the group they were computed in.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(std::size_t parent_order, std::vector<Element> elements);

  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t parent_order() const noexcept { return parent_order_; }
  std::span<const Element> elements() const noexcept { return elements_; }
  const std::vector<std::uint64_t>& mask() const noexcept { return mask_; }

  bool contains(Element g) const noexcept {
    return (mask_[g >> 6] >> (g & 63)) & 1U;
  }
  bool is_subset_of(const Subgroup& other) const noexcept;
  bool is_trivial() const noexcept { return elements_.size() <= 1; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) noexcept {
    return a.mask_ == b.mask_;
  }
  // Orders by size first, then by mask; gives a deterministic listing.
  friend bool operator<(const Subgroup& a, const Subgroup& b) noexcept;

 private:
  std::size_t parent_order_ = 0;
  std::vector<Element> elements_;
  std::vector<std::uint64_t> mask_;
};

struct SubgroupHash {
  std::size_t operator()(const Subgroup& h) const noexcept;
};

struct ConjugacyClass {
  Element representative = 0;
  std::vector<Element> members;
  std::size_t centralizer_order = 0;

  std::size_t size() const noexcept { return members.size(); }
};

class FiniteGroup {
 public:
  FiniteGroup();  // trivial group

  // Validates the table (closure, identity, inverses, associativity) and
  // precomputes inverses, element orders and conjugacy classes.
  static FiniteGroup from_table(std::vector<Element> table, std::size_t order,
                                std::vector<std::string> labels = {},
                                std::vector<Element> generators = {});

  std::size_t order() const noexcept { return n_; }
  Element identity() const noexcept { return identity_; }

  Element mul(Element a, Element b) const noexcept {
    return table_[static_cast<std::size_t>(a) * n_ + b];
  }
  Element inv(Element a) const noexcept { return inverse_[a]; }
  Element pow(Element a, long long k) const noexcept;
  // g^h = h^-1 g h
  Element conj(Element g, Element h) const noexcept {
    return mul(mul(inverse_[h], g), h);
  }
  // (g,h) = g^-1 h^-1 g h
  Element comm(Element g, Element h) const noexcept {
    return mul(mul(inverse_[g], inverse_[h]), mul(g, h));
  }

  std::size_t element_order(Element g) const noexcept { return orders_[g]; }
  const std::vector<ConjugacyClass>& classes() const noexcept { return classes_; }
  std::size_t class_of(Element g) const noexcept { return class_index_[g]; }
  const ConjugacyClass& class_of_element(Element g) const noexcept {
    return classes_[class_index_[g]];
  }
  std::span<const Element> generators() const noexcept { return generators_; }
  std::span<const Element> table() const noexcept { return table_; }

  bool has_labels() const noexcept { return !labels_.empty(); }
  std::string label(Element g) const;

  Subgroup whole() const;
  Subgroup trivial() const;

  // Full O(n^3) associativity scan; construction uses Light's test instead.
  bool is_associative_exhaustive() const;

 private:
  std::size_t n_ = 1;
  Element identity_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<std::size_t> orders_;
  std::vector<ConjugacyClass> classes_;
  std::vector<std::size_t> class_index_;
  std::vector<Element> generators_;
  std::vector<std::string> labels_;

  void compute_derived_data();
};

// Image of G under the natural map to G/N.
struct QuotientMap {
  Subgroup normal;
  FiniteGroup target;
  std::vector<Element> projection;    // indexed by source element
  std::vector<Element> section;       // a coset representative per target element
};

Subgroup subgroup_closure(const FiniteGroup& g, std::span<const Element> generators);
Subgroup normal_closure(const FiniteGroup& g, std::span<const Element> generators);
Subgroup join(const FiniteGroup& g, const Subgroup& a, const Subgroup& b);
Subgroup intersection(const Subgroup& a, const Subgroup& b);
Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, Element x);
// Largest normal subgroup of G contained in H.
Subgroup normal_core(const FiniteGroup& g, const Subgroup& h);
// Set product AB; a subgroup whenever one factor normalizes the other.
Subgroup product(const FiniteGroup& g, const Subgroup& a, const Subgroup& b);

Subgroup centralizer(const FiniteGroup& g, std::span<const Element> x);
Subgroup centralizer(const FiniteGroup& g, const Subgroup& h);
Subgroup normalizer(const FiniteGroup& g, const Subgroup& h);

bool is_subgroup(const FiniteGroup& g, std::span<const Element> elements);
bool is_normal(const FiniteGroup& g, const Subgroup& h);
bool is_abelian(const FiniteGroup& g, const Subgroup& h);
bool is_cyclic(const FiniteGroup& g, const Subgroup& h);
// Least-index element of order |H| in H; requires H cyclic.
Element cyclic_generator(const FiniteGroup& g, const Subgroup& h);

// The subgroup H as a group in its own right; element i of the result is
// the i-th smallest element of H.
FiniteGroup as_group(const FiniteGroup& g, const Subgroup& h);
// Maps a subgroup of as_group(g, h) back into g.
Subgroup lift_from(const FiniteGroup& g, const Subgroup& h, const Subgroup& inner);

QuotientMap quotient(const FiniteGroup& g, const Subgroup& n);

// Decomposes g into commuting pi- and pi'-parts.
std::pair<Element, Element> pi_parts(const FiniteGroup& g, Element x,
                                     std::span<const std::uint64_t> primes);

// x^G N as a sorted set of elements.
std::vector<Element> class_times(const FiniteGroup& g, Element x, const Subgroup& n);

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup cyclic_group(std::size_t n);

}  // namespace helpkit
