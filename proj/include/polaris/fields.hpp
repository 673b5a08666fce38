#ifndef POLARIS_FIELDS_HPP
#define POLARIS_FIELDS_HPP

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "polaris/error.hpp"

namespace polaris {

// Named working primes (odd, < 2^31 so products fit 64-bit intermediates).
inline constexpr uint32_t kPrimeSmall = 101;
inline constexpr uint32_t kPrimeLarge = 32003;

inline bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (uint32_t d = 3; static_cast<uint64_t>(d) * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

// Field of rationals, GMP-backed. mpq_class arithmetic keeps results
// canonical (reduced, positive denominator) as long as inputs are; raw
// num/den construction goes through from_frac which canonicalizes.
struct RatField {
  using Elem = mpq_class;
  static constexpr bool kFinite = false;

  static Elem zero() { return Elem(0); }
  static Elem one() { return Elem(1); }
  static Elem from_int(long v) { return Elem(v); }
  static Elem from_frac(long num, long den) {
    Elem q(num, den);
    q.canonicalize();
    return q;
  }
  static Elem add(const Elem& a, const Elem& b) { return a + b; }
  static Elem sub(const Elem& a, const Elem& b) { return a - b; }
  static Elem mul(const Elem& a, const Elem& b) { return a * b; }
  static Elem div(const Elem& a, const Elem& b) { return a / b; }
  static Elem neg(const Elem& a) { return -a; }
  static bool is_zero(const Elem& a) { return sgn(a) == 0; }
  static bool eq(const Elem& a, const Elem& b) { return a == b; }
  static std::string str(const Elem& a) { return a.get_str(); }

  bool operator==(const RatField&) const { return true; }
};

// Prime field F_p, p an odd prime < 2^31, verified at construction.
struct FpField {
  using Elem = uint32_t;
  static constexpr bool kFinite = true;

  uint32_t p;

  explicit FpField(uint32_t p_) : p(p_) {
    if (p < 3 || p >= (1u << 31) || !is_prime_u32(p))
      fail(ErrorKind::BadPrime, "field characteristic must be an odd prime < 2^31, got " + std::to_string(p));
  }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long v) const {
    long r = v % static_cast<long>(p);
    if (r < 0) r += p;
    return static_cast<Elem>(r);
  }
  Elem add(Elem a, Elem b) const {
    uint64_t s = static_cast<uint64_t>(a) + b;
    return static_cast<Elem>(s >= p ? s - p : s);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>(static_cast<uint64_t>(a) * b % p);
  }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem inv(Elem a) const {
    if (a == 0) fail(ErrorKind::Structural, "division by zero in F_p");
    return pow(a, p - 2);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, uint64_t e) const {
    uint64_t base = a, acc = 1;
    while (e) {
      if (e & 1) acc = acc * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return static_cast<Elem>(acc);
  }
  static bool is_zero(Elem a) { return a == 0; }
  static bool eq(Elem a, Elem b) { return a == b; }
  static std::string str(Elem a) { return std::to_string(a); }

  // Image of an exact rational; BadPrime when the denominator vanishes mod p.
  // mpz_fdiv_ui uses floor semantics, so the residue is in [0,p) for any sign.
  Elem from_rat(const mpq_class& q) const {
    unsigned long den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p);
    if (den == 0)
      fail(ErrorKind::BadPrime, "denominator not a unit mod " + std::to_string(p));
    unsigned long num = mpz_fdiv_ui(q.get_num().get_mpz_t(), p);
    return div(static_cast<Elem>(num), static_cast<Elem>(den));
  }

  bool operator==(const FpField& o) const { return p == o.p; }
};

}  // namespace polaris

#endif
