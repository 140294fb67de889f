#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gll/errors.hpp"

namespace gll {

/// Largest prime accepted by Modulus. The fixed Miller-Rabin base set
/// {2,3,5,7,11,13,17} is deterministic below 341550071728321.
inline constexpr std::uint64_t max_supported_prime = 330000000000000ULL;

bool is_prime(std::uint64_t n);

/// Distinct prime factors of n, ascending (trial division).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// The ring Z/p^e for an odd prime p < 3.3e14 and e >= 1.
///
/// Copies share the precomputed power p^e.
class Modulus {
 public:
  Modulus(std::uint64_t p, unsigned e);

  std::uint64_t prime() const { return data_->p; }
  unsigned exponent() const { return data_->e; }
  /// p^e.
  const mpz_class& value() const { return data_->pe; }

  /// Same prime, exponent e (no primality re-check).
  Modulus at_level(unsigned e) const;

  /// Order of the unit group, p^(e-1)(p-1).
  mpz_class unit_group_order() const;

  /// x mod p^e in [0, p^e).
  mpz_class reduce(const mpz_class& x) const;

  friend bool operator==(const Modulus& a, const Modulus& b) {
    return a.data_ == b.data_ || (a.prime() == b.prime() && a.exponent() == b.exponent());
  }

 private:
  struct Data {
    std::uint64_t p;
    unsigned e;
    mpz_class pe;
  };
  explicit Modulus(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  static std::shared_ptr<const Data> make(std::uint64_t p, unsigned e);

  std::shared_ptr<const Data> data_;
};

/// p^k as an arbitrary-precision integer.
mpz_class prime_power(std::uint64_t p, unsigned k);

/// A residue of Z/p^e.
class ModInt {
 public:
  ModInt(const mpz_class& value, const Modulus& mod);
  ModInt(long value, const Modulus& mod) : ModInt(mpz_class(value), mod) {}

  const mpz_class& value() const { return value_; }
  const Modulus& modulus() const { return mod_; }

  bool is_zero() const { return value_ == 0; }
  bool is_unit() const;

  ModInt operator-() const;
  ModInt& operator+=(const ModInt& o);
  ModInt& operator-=(const ModInt& o);
  ModInt& operator*=(const ModInt& o);
  friend ModInt operator+(ModInt a, const ModInt& b) { return a += b; }
  friend ModInt operator-(ModInt a, const ModInt& b) { return a -= b; }
  friend ModInt operator*(ModInt a, const ModInt& b) { return a *= b; }

  /// Throws NonUnit when the value is divisible by p.
  ModInt inverse() const;

  /// Reduction to Z/p^i, i <= e.
  ModInt reduce(unsigned i) const;

  friend bool operator==(const ModInt& a, const ModInt& b) {
    return a.mod_ == b.mod_ && a.value_ == b.value_;
  }

  std::string to_string() const { return value_.get_str(); }

 private:
  void check_same(const ModInt& o) const;

  mpz_class value_;
  Modulus mod_;
};

/// u^k; negative k uses the modular inverse (NonUnit if u is not a unit).
ModInt mod_pow(const ModInt& u, const mpz_class& k);
inline ModInt mod_pow(const ModInt& u, long k) { return mod_pow(u, mpz_class(k)); }

/// min(v_p(value), e); zero has valuation e.
unsigned valuation(const ModInt& x);

/// v_p of a nonzero integer; v_p(0) is reported as `cap`.
unsigned valuation(const mpz_class& x, std::uint64_t p, unsigned cap);

/// Generator of (Z/p^e)^x: the smallest primitive root g mod p, replaced by
/// g + p when g^(p-1) = 1 mod p^2.
ModInt primitive_root(const Modulus& mod);

/// The character chi^k viewed at level e.
struct CharExponent {
  mpz_class k;
  std::uint64_t p;
  unsigned level;
};

/// p^(m-1)(p-1), the exponent of (Z/p^m)^x.
mpz_class character_period(std::uint64_t p, unsigned m);

/// True iff chi^a and chi^b agree on (Z/p^m)^x.
bool char_equal_at_level(const CharExponent& a, const CharExponent& b, unsigned m);

/// Non-negative representative of x mod m (m > 0).
mpz_class floor_mod(const mpz_class& x, const mpz_class& m);

}  // namespace gll
