#include "helpkit/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "helpkit/arith.hpp"

namespace helpkit {

namespace {

struct Tables {
  std::uint64_t e = 1;
  std::size_t phi = 1;
  std::vector<std::int64_t> poly;
  // reduce[k] = x^k mod Φ_e as a length-phi vector, for 0 <= k < e
  std::vector<std::vector<std::int64_t>> reduce;
};

std::vector<std::int64_t> compute_phi_poly(std::uint64_t e);

const Tables& tables(std::uint64_t e) {
  thread_local std::unordered_map<std::uint64_t, std::shared_ptr<const Tables>> local;
  if (auto it = local.find(e); it != local.end()) return *it->second;

  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const Tables>> shared;
  std::shared_ptr<const Tables> t;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = shared.find(e); it != shared.end()) t = it->second;
  }
  if (!t) {
    auto fresh = std::make_shared<Tables>();
    fresh->e = e;
    fresh->poly = compute_phi_poly(e);
    fresh->phi = fresh->poly.size() - 1;
    const std::size_t phi = fresh->phi;
    fresh->reduce.assign(e, std::vector<std::int64_t>(phi, 0));
    for (std::size_t k = 0; k < e; ++k) {
      if (k < phi) {
        fresh->reduce[k][k] = 1;
        continue;
      }
      const auto& prev = fresh->reduce[k - 1];
      auto& cur = fresh->reduce[k];
      const std::int64_t top = prev[phi - 1];
      for (std::size_t i = phi - 1; i > 0; --i) cur[i] = prev[i - 1];
      cur[0] = 0;
      for (std::size_t i = 0; i < phi; ++i) cur[i] -= top * fresh->poly[i];
    }
    std::lock_guard<std::mutex> lock(mu);
    t = shared.emplace(e, std::move(fresh)).first->second;
  }
  local.emplace(e, t);
  return *t;
}

// Exact division of integer polynomials by a monic divisor.
std::vector<std::int64_t> divide_monic(std::vector<std::int64_t> num, const std::vector<std::int64_t>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<std::int64_t> q(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const std::int64_t c = num[k];
    q[k - dn] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
  }
  return q;
}

std::vector<std::int64_t> compute_phi_poly(std::uint64_t e) {
  std::vector<std::int64_t> p(e + 1, 0);
  p[0] = -1;
  p[e] = 1;
  for (auto d : divisors(e))
    if (d < e) p = divide_monic(p, cyclotomic_polynomial(d));
  return p;
}

std::int64_t ramanujan_sum(std::uint64_t e, std::uint64_t i) {
  const std::uint64_t g = gcd_u(i, e);
  const std::uint64_t q = e / g;
  return mobius(q) * static_cast<std::int64_t>(euler_phi(e) / euler_phi(q));
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(std::uint64_t e) {
  if (e == 0) throw std::invalid_argument("cyclotomic polynomial of index 0");
  if (e == 1) {
    static const std::vector<std::int64_t> phi1{-1, 1};
    return phi1;
  }
  return tables(e).poly;
}

Cyclotomic::Cyclotomic(std::uint64_t conductor) : e_(conductor) {
  if (conductor == 0) throw std::invalid_argument("conductor must be positive");
  c_.assign(euler_phi(conductor), Rational{});
}

Cyclotomic::Cyclotomic(std::uint64_t conductor, Rational value) : Cyclotomic(conductor) { c_[0] = value; }

Cyclotomic Cyclotomic::from_exponents(std::uint64_t e, const std::vector<Rational>& coeffs) {
  const Tables& t = tables(e);
  Cyclotomic out(e);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    const auto& row = t.reduce[k % e];
    for (std::size_t i = 0; i < t.phi; ++i)
      if (row[i] != 0) out.c_[i] += coeffs[k] * Rational(row[i]);
  }
  return out;
}

Cyclotomic Cyclotomic::zeta(std::uint64_t e, std::int64_t k) {
  const Tables& t = tables(e);
  Cyclotomic out(e);
  const auto& row = t.reduce[static_cast<std::size_t>(mod_floor(k, static_cast<std::int64_t>(e)))];
  for (std::size_t i = 0; i < t.phi; ++i) out.c_[i] = Rational(row[i]);
  return out;
}

Cyclotomic Cyclotomic::promote(std::uint64_t e) const {
  if (e == e_) return *this;
  if (e % e_ != 0) throw std::invalid_argument("promotion target is not a multiple of the conductor");
  const std::uint64_t step = e / e_;
  std::vector<Rational> expo(e);
  for (std::size_t i = 0; i < c_.size(); ++i) expo[i * step] = c_[i];
  return from_exponents(e, expo);
}

Cyclotomic Cyclotomic::galois(std::int64_t k) const {
  const auto m = static_cast<std::int64_t>(e_);
  const auto kk = mod_floor(k, m);
  if (e_ > 1 && gcd_u(static_cast<std::uint64_t>(kk), e_) != 1)
    throw std::invalid_argument("Galois exponent not coprime to the conductor");
  std::vector<Rational> expo(e_);
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) expo[static_cast<std::size_t>(mod_floor(static_cast<std::int64_t>(i) * kk, m))] += c_[i];
  return from_exponents(e_, expo);
}

Cyclotomic Cyclotomic::times_root(std::int64_t k) const {
  const auto m = static_cast<std::int64_t>(e_);
  std::vector<Rational> expo(e_);
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) expo[static_cast<std::size_t>(mod_floor(static_cast<std::int64_t>(i) + k, m))] += c_[i];
  return from_exponents(e_, expo);
}

Rational Cyclotomic::trace() const {
  Rational sum;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) sum += c_[i] * Rational(ramanujan_sum(e_, i));
  return sum;
}

Rational Cyclotomic::trace_by_galois_sum() const {
  Cyclotomic sum(e_);
  for (std::uint64_t k = 1; k <= e_; ++k)
    if (gcd_u(k, e_) == 1) sum += galois(static_cast<std::int64_t>(k));
  auto r = sum.as_rational();
  if (!r) throw std::logic_error("Galois sum is not rational");
  return *r;
}

bool Cyclotomic::is_zero() const noexcept {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

std::optional<Rational> Cyclotomic::as_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return std::nullopt;
  return c_[0];
}

std::optional<std::int64_t> Cyclotomic::as_integer() const {
  auto r = as_rational();
  if (!r || !r->is_integer()) return std::nullopt;
  return r->num();
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

Cyclotomic Cyclotomic::scaled(const Rational& r) const {
  Cyclotomic out = *this;
  for (auto& c : out.c_) c *= r;
  return out;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  const std::uint64_t e = lcm_u(a.e_, b.e_);
  Cyclotomic x = a.promote(e);
  const Cyclotomic y = b.promote(e);
  for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
  return x;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  const std::uint64_t e = lcm_u(a.e_, b.e_);
  const Cyclotomic x = a.promote(e);
  const Cyclotomic y = b.promote(e);
  std::vector<Rational> expo(e);
  for (std::size_t i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.c_.size(); ++j)
      if (!y.c_[j].is_zero()) expo[(i + j) % e] += x.c_[i] * y.c_[j];
  }
  return Cyclotomic::from_exponents(e, expo);
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.e_ == b.e_) return a.c_ == b.c_;
  const std::uint64_t e = lcm_u(a.e_, b.e_);
  return a.promote(e).c_ == b.promote(e).c_;
}

std::string Cyclotomic::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    std::string term = i == 0 ? c_[i].to_string() : "";
    if (i > 0) {
      const std::string root = "z" + std::to_string(e_) + (i == 1 ? "" : "^" + std::to_string(i));
      if (c_[i] == Rational(1)) term = root;
      else if (c_[i] == Rational(-1)) term = "-" + root;
      else term = c_[i].to_string() + "*" + root;
    }
    if (!out.empty()) out += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
    else out = term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace helpkit
