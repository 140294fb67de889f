#include "gll/arith.hpp"

#include <stdexcept>

namespace gll {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

mpz_class prime_power(std::uint64_t p, unsigned k) {
  mpz_class r;
  mpz_class base(static_cast<unsigned long>(p));
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), k);
  return r;
}

std::shared_ptr<const Modulus::Data> Modulus::make(std::uint64_t p, unsigned e) {
  return std::make_shared<const Data>(Data{p, e, prime_power(p, e)});
}

Modulus::Modulus(std::uint64_t p, unsigned e) {
  if (p < 3 || p > max_supported_prime || !is_prime(p)) {
    throw std::invalid_argument("modulus prime must be an odd prime below 3.3e14, got " +
                                std::to_string(p));
  }
  if (e < 1) throw std::invalid_argument("modulus exponent must be >= 1");
  data_ = make(p, e);
}

Modulus Modulus::at_level(unsigned e) const {
  if (e < 1) throw std::invalid_argument("modulus exponent must be >= 1");
  if (e == exponent()) return *this;
  return Modulus(make(prime(), e));
}

mpz_class Modulus::unit_group_order() const {
  return character_period(prime(), exponent());
}

mpz_class Modulus::reduce(const mpz_class& x) const { return floor_mod(x, value()); }

mpz_class floor_mod(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

ModInt::ModInt(const mpz_class& value, const Modulus& mod) : value_(mod.reduce(value)), mod_(mod) {}

bool ModInt::is_unit() const {
  return mpz_divisible_ui_p(value_.get_mpz_t(), static_cast<unsigned long>(mod_.prime())) == 0;
}

void ModInt::check_same(const ModInt& o) const {
  if (!(mod_ == o.mod_)) throw std::invalid_argument("ModInt arithmetic across different moduli");
}

ModInt ModInt::operator-() const { return ModInt(-value_, mod_); }

ModInt& ModInt::operator+=(const ModInt& o) {
  check_same(o);
  value_ += o.value_;
  if (value_ >= mod_.value()) value_ -= mod_.value();
  return *this;
}

ModInt& ModInt::operator-=(const ModInt& o) {
  check_same(o);
  value_ -= o.value_;
  if (value_ < 0) value_ += mod_.value();
  return *this;
}

ModInt& ModInt::operator*=(const ModInt& o) {
  check_same(o);
  value_ *= o.value_;
  mpz_mod(value_.get_mpz_t(), value_.get_mpz_t(), mod_.value().get_mpz_t());
  return *this;
}

ModInt ModInt::inverse() const {
  if (!is_unit()) throw NonUnit(value_.get_str() + " is not invertible mod p^" +
                                std::to_string(mod_.exponent()));
  mpz_class r;
  mpz_invert(r.get_mpz_t(), value_.get_mpz_t(), mod_.value().get_mpz_t());
  return ModInt(r, mod_);
}

ModInt ModInt::reduce(unsigned i) const {
  if (i > mod_.exponent()) throw std::invalid_argument("cannot reduce to a higher level");
  return ModInt(value_, mod_.at_level(i));
}

ModInt mod_pow(const ModInt& u, const mpz_class& k) {
  if (k < 0) {
    mpz_class nk = -k;
    return mod_pow(u.inverse(), nk);
  }
  mpz_class r;
  mpz_powm(r.get_mpz_t(), u.value().get_mpz_t(), k.get_mpz_t(), u.modulus().value().get_mpz_t());
  return ModInt(r, u.modulus());
}

unsigned valuation(const mpz_class& x, std::uint64_t p, unsigned cap) {
  if (x == 0) return cap;
  mpz_class t = x;
  unsigned v = 0;
  while (v < cap && mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

unsigned valuation(const ModInt& x) {
  return valuation(x.value(), x.modulus().prime(), x.modulus().exponent());
}

ModInt primitive_root(const Modulus& mod) {
  const std::uint64_t p = mod.prime();
  const auto qs = prime_factors(p - 1);
  std::uint64_t g = 2;
  for (;; ++g) {
    bool ok = true;
    for (std::uint64_t q : qs) {
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) break;
  }
  mpz_class root(static_cast<unsigned long>(g));
  if (mod.exponent() >= 2) {
    const Modulus sq = mod.at_level(2);
    if (mod_pow(ModInt(root, sq), mpz_class(static_cast<unsigned long>(p - 1))).value() == 1) {
      root += static_cast<unsigned long>(p);
    }
  }
  return ModInt(root, mod);
}

mpz_class character_period(std::uint64_t p, unsigned m) {
  if (m < 1) throw std::invalid_argument("character level must be >= 1");
  return prime_power(p, m - 1) * static_cast<unsigned long>(p - 1);
}

bool char_equal_at_level(const CharExponent& a, const CharExponent& b, unsigned m) {
  if (a.p != b.p) throw std::invalid_argument("characters for different primes");
  if (m > a.level || m > b.level) throw std::invalid_argument("level exceeds character context");
  const mpz_class period = character_period(a.p, m);
  return floor_mod(a.k - b.k, period) == 0;
}

}  // namespace gll
