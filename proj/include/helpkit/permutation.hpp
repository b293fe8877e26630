#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "helpkit/group.hpp"

namespace helpkit {

// Permutation of {0..degree-1}; printed and parsed 1-based in cycle notation.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> image);

  // Accepts "()", "(1,2,3)(4,5)" or "(1 2 3)(4 5)".  Throws GroupError on
  // malformed text or repeated points.
  static Permutation parse(std::string_view text);

  std::size_t degree() const noexcept { return image_.size(); }
  std::uint32_t operator()(std::uint32_t point) const noexcept {
    return point < image_.size() ? image_[point] : point;
  }
  bool is_identity() const noexcept;
  Permutation padded(std::size_t degree) const;

  // Apply this, then other.
  Permutation then(const Permutation& other) const;

  std::string to_cycles() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> image_;
};

// Group generated by the permutations, as a Cayley table.  Elements are
// numbered in breadth-first order from the identity, so element 0 is the
// identity and the numbering depends only on the generator list.
FiniteGroup closure(const std::vector<Permutation>& generators, std::size_t cap = kDefaultOrderCap);

// Subgroup of an existing group generated by the given elements, as a group.
FiniteGroup closure(const FiniteGroup& ambient, std::span<const Element> generators);

}  // namespace helpkit
