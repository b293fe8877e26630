#pragma once

// Small integer number theory used throughout.

#include <cstdint>
#include <numeric>
#include <vector>

namespace helpkit {

inline std::uint64_t gcd_u(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }
inline std::uint64_t lcm_u(std::uint64_t a, std::uint64_t b) {
  return a == 0 || b == 0 ? 0 : a / std::gcd(a, b) * b;
}

// Non-negative residue of a mod m (m > 0).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n);   // distinct, ascending
std::vector<std::uint64_t> divisors(std::uint64_t n);        // ascending
std::uint64_t euler_phi(std::uint64_t n);
int mobius(std::uint64_t n);
bool is_prime(std::uint64_t n);
bool is_prime_power(std::uint64_t n);
// The p-part of n.
std::uint64_t p_part(std::uint64_t n, std::uint64_t p);
// Multiplicative order of r modulo n (gcd(r, n) = 1, n >= 1).
std::uint64_t multiplicative_order(std::int64_t r, std::uint64_t n);
std::int64_t pow_mod(std::int64_t base, std::uint64_t exp, std::int64_t m);

}  // namespace helpkit
