#include <doctest.h>

#include "gll/arith.hpp"
#include "gll/random.hpp"
#include "support/oracles.hpp"

using namespace gll;

TEST_CASE("primality agrees with trial division") {
  for (std::uint64_t n = 0; n < 20000; ++n) CHECK(is_prime(n) == oracle::trial_prime(n));
  CHECK(is_prime(1000000007ULL));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(prime_factors(360) == std::vector<std::uint64_t>{2, 3, 5});
}

TEST_CASE("modulus rejects bad input") {
  CHECK_THROWS_AS(Modulus(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(Modulus(9, 1), std::invalid_argument);
  CHECK_THROWS_AS(Modulus(7, 0), std::invalid_argument);
  CHECK_THROWS_AS(Modulus(max_supported_prime + 31, 1), std::invalid_argument);
  const Modulus m(7, 50);
  CHECK(m.value() == prime_power(7, 50));
  CHECK(m.value() > mpz_class("1000000000000000000000000000000000000000000"));
}

TEST_CASE("mod_pow") {
  const Modulus m(7, 3);
  CHECK(mod_pow(ModInt(3, m), 5).value() == 243);
  CHECK(mod_pow(ModInt(3, m), 0).value() == 1);
  CHECK(mod_pow(ModInt(3, m), 14).value() == oracle::naive_pow(3, 14, 343));
  CHECK(mod_pow(ModInt(3, m), -1) * ModInt(3, m) == ModInt(1, m));
  CHECK_THROWS_AS(mod_pow(ModInt(7, m), -1), NonUnit);

  Rng rng(11);
  for (int s = 0; s < 500; ++s) {
    mpz_class u;
    do {
      u = rng.below(m.value());
    } while (u % 7 == 0);
    const ModInt x(u, m);
    const long a = rng.range(-300, 300);
    const long b = rng.range(-300, 300);
    CHECK(mod_pow(x, a) * mod_pow(x, b) == mod_pow(x, a + b));
  }
}

TEST_CASE("valuation") {
  const Modulus m(5, 5);
  CHECK(valuation(ModInt(25 * 3, m)) == 2);
  CHECK(valuation(ModInt(0, m)) == 5);
  CHECK(valuation(ModInt(4, m)) == 0);
  Rng rng(3);
  for (int s = 0; s < 500; ++s) {
    const ModInt x(rng.below(m.value()), m);
    const ModInt y(rng.below(m.value()), m);
    CHECK(valuation(x * y) == std::min(valuation(x) + valuation(y), 5u));
  }
}

TEST_CASE("inverse and ring laws") {
  const Modulus m(11, 4);
  Rng rng(5);
  for (int s = 0; s < 300; ++s) {
    const ModInt x(rng.below(m.value()), m);
    if (x.is_unit()) {
      CHECK(x * x.inverse() == ModInt(1, m));
    } else {
      CHECK_THROWS_AS(x.inverse(), NonUnit);
    }
    const ModInt y(rng.below(m.value()), m);
    CHECK((x + y) - y == x);
    CHECK(x.reduce(2).value() == x.value() % 121);
  }
  CHECK_THROWS_AS(ModInt(1, m) + ModInt(1, Modulus(11, 3)), std::invalid_argument);
}

TEST_CASE("primitive roots are generators") {
  CHECK(primitive_root(Modulus(7, 1)).value() == 3);
  CHECK(primitive_root(Modulus(5, 2)).value() == 2);
  for (std::uint64_t p : {3, 5, 7, 11, 13, 29, 37, 40487}) {
    for (unsigned e : {1u, 2u, 3u}) {
      const Modulus m(p, e);
      if (m.value() > 2000000) continue;
      const std::uint64_t q = m.value().get_ui();
      const std::uint64_t g = primitive_root(m).value().get_ui();
      CHECK(oracle::order_mod(g, q) == m.unit_group_order().get_ui());
    }
  }
  // 40487 is the smallest prime whose smallest root 5 is not a root mod p^2.
  CHECK(primitive_root(Modulus(40487, 1)).value() == 5);
  CHECK(primitive_root(Modulus(40487, 2)).value() == 5 + 40487);
}

TEST_CASE("character equality at a level") {
  CHECK(char_equal_at_level({14, 7, 3}, {14 + 49 * 6, 7, 3}, 3));
  CHECK_FALSE(char_equal_at_level({14, 7, 3}, {31, 7, 3}, 3));
  CHECK(char_equal_at_level({5, 7, 3}, {5, 7, 3}, 2));
  CHECK(character_period(7, 3) == 294);

  // Exhaustive against pointwise evaluation at a generator.
  for (std::uint64_t p : {3, 5, 7}) {
    for (unsigned m = 1; m <= 3; ++m) {
      const Modulus mod(p, m);
      const ModInt g = primitive_root(mod);
      const long period = character_period(p, m).get_si();
      for (long a = -period; a <= 2 * period; a += 7) {
        for (long b = 0; b < period; ++b) {
          CHECK(char_equal_at_level({a, p, m}, {b, p, m}, m) == (mod_pow(g, a) == mod_pow(g, b)));
        }
      }
    }
  }
}
