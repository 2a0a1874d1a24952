#pragma once

// Exact base fields: the prime field F_p (default p = 32003) and the
// rationals. Elements are plain values; all arithmetic is routed through a
// small field object so the same templates run over either coefficient
// domain. Arithmetic is exact by construction, there is no rounding anywhere.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace gkoszul {

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// F_p with a runtime modulus. Elements are canonical representatives in
// [0, p). p is required to be prime and small enough that products fit in
// 64 bits.
class FpField {
 public:
  using Elem = std::uint64_t;

  explicit FpField(std::uint64_t p) : p_(p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("FpField: modulus is not prime");
    if (p >= (1ull << 31)) throw std::invalid_argument("FpField: modulus too large");
  }

  std::uint64_t modulus() const { return p_; }
  std::int64_t characteristic() const { return static_cast<std::int64_t>(p_); }
  std::string name() const { return "fp:" + std::to_string(p_); }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p_; }
  Elem from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r);
  }

  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("FpField: inverse of zero");
    // Fermat: a^(p-2) mod p.
    Elem result = 1, base = a;
    std::uint64_t e = p_ - 2;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  std::string to_string(Elem a) const { return std::to_string(a); }

 private:
  std::uint64_t p_;
};

// Exact rationals on top of boost::multiprecision. Values are kept in
// canonical reduced form by cpp_rational itself.
class RationalField {
 public:
  using Elem = boost::multiprecision::cpp_rational;

  std::int64_t characteristic() const { return 0; }
  std::string name() const { return "q"; }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(std::int64_t v) const { return Elem(v); }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw std::domain_error("RationalField: inverse of zero");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return a / inv_guard(b); }

  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string to_string(const Elem& a) const { return a.str(); }

 private:
  const Elem& inv_guard(const Elem& b) const {
    if (b == 0) throw std::domain_error("RationalField: division by zero");
    return b;
  }
};

}  // namespace gkoszul
