#pragma once

// Exact elements of Q(ζ_e), stored in the power basis 1, ζ, ..., ζ^{φ(e)-1}
// after reduction modulo the e-th cyclotomic polynomial.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "helpkit/rational.hpp"

namespace helpkit {

// Coefficients of Φ_e, lowest degree first.
const std::vector<std::int64_t>& cyclotomic_polynomial(std::uint64_t e);

class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(1) {}
  explicit Cyclotomic(std::uint64_t conductor);  // zero of Q(ζ_e)
  Cyclotomic(std::uint64_t conductor, Rational value);

  static Cyclotomic zeta(std::uint64_t e, std::int64_t k = 1);
  // Σ coeffs[k] ζ_e^k for arbitrary exponent vectors of length ≤ e.
  static Cyclotomic from_exponents(std::uint64_t e, const std::vector<Rational>& coeffs);

  std::uint64_t conductor() const noexcept { return e_; }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }

  // Same value, viewed in Q(ζ_{e'}) for a multiple e' of the conductor.
  Cyclotomic promote(std::uint64_t e) const;
  // ζ ↦ ζ^k; requires gcd(k, e) = 1.
  Cyclotomic galois(std::int64_t k) const;
  Cyclotomic conj() const { return galois(-1); }
  // Multiply by ζ_e^k without a full product.
  Cyclotomic times_root(std::int64_t k) const;

  // Trace from Q(ζ_e) to Q, via Ramanujan sums on the basis.
  Rational trace() const;
  // The same trace as an explicit sum over the Galois group.
  Rational trace_by_galois_sum() const;

  bool is_zero() const noexcept;
  std::optional<Rational> as_rational() const;
  std::optional<std::int64_t> as_integer() const;

  Cyclotomic operator-() const;
  Cyclotomic scaled(const Rational& r) const;
  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  std::string to_string() const;

 private:
  std::uint64_t e_ = 1;
  std::vector<Rational> c_;
};

}  // namespace helpkit
