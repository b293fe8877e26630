#pragma once

// Text format for group definitions, one group per file.  Blank lines and
// anything after '#' are ignored.  The first line names the stanza:
//
//   perm                     generators in cycle notation, one per line:
//   gen (1,2,3)(4,5)         points numbered from 1
//
//   cayley <n>               n rows of n element indices (0-based), then
//   <row 0> ... <row n-1>    optional "label <i> <text>" lines
//
//   cyclic <n>
//
//   semidirect <n>           C_n ⋊ H with H given by permutation generators;
//   gen (1,2) -> 7           each generator lists its exponent on a = C_n's
//                            generator, i.e. a^h = a^7
//
//   hamiltonian              Q8 x C2^r x odd abelian part
//   odd 3 5                  (optional) cyclic odd factors
//   two_rank 1               (optional) r
//
// Parse failures throw ParseError naming the offending line.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "helpkit/constructions.hpp"
#include "helpkit/group.hpp"

namespace helpkit {

class ParseError : public InvalidInput {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct ParsedGroup {
  FiniteGroup group;
  std::optional<Element> a;          // generator of C_n for semidirect stanzas
  std::optional<nlohmann::json> recipe;  // absent for cayley stanzas
};

ParsedGroup parse_group_text(std::string_view text);
ParsedGroup read_group_file(const std::string& path);

// Cayley stanza with labels; parse_group_text reads it back to the same table.
std::string write_cayley(const FiniteGroup& g);

}  // namespace helpkit
