#include "helpkit/arith.hpp"

#include <algorithm>

namespace helpkit {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (auto p : prime_factors(n)) result = result / p * (p - 1);
  return result;
}

int mobius(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      sign = -sign;
    }
  }
  if (n > 1) sign = -sign;
  return sign;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

bool is_prime_power(std::uint64_t n) { return n > 1 && prime_factors(n).size() == 1; }

std::uint64_t p_part(std::uint64_t n, std::uint64_t p) {
  std::uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

std::int64_t pow_mod(std::int64_t base, std::uint64_t exp, std::int64_t m) {
  if (m == 1) return 0;
  __int128 result = 1;
  __int128 b = mod_floor(base, m);
  while (exp > 0) {
    if (exp & 1U) result = result * b % m;
    b = b * b % m;
    exp >>= 1U;
  }
  return static_cast<std::int64_t>(result);
}

std::uint64_t multiplicative_order(std::int64_t r, std::uint64_t n) {
  if (n == 1) return 1;
  const auto m = static_cast<std::int64_t>(n);
  std::int64_t x = mod_floor(r, m);
  std::int64_t cur = x;
  std::uint64_t k = 1;
  while (cur != 1) {
    cur = static_cast<std::int64_t>(static_cast<__int128>(cur) * x % m);
    ++k;
    if (k > n) return 0;  // r not a unit
  }
  return k;
}

}  // namespace helpkit
