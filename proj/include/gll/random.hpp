#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

namespace gll {

/// Seeded mt19937_64 with named sub-streams. Bounded draws use rejection
/// sampling on raw engine output so results are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Independent stream keyed by name; does not advance this generator.
  Rng stream(std::string_view name) const { return Rng(splitmix(seed_ ^ fnv1a(name))); }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("empty range");
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin() { return (engine_() >> 63) != 0; }

  /// Uniform in [0, bound), bound > 0.
  mpz_class below(const mpz_class& bound) {
    if (bound <= 0) throw std::invalid_argument("empty range");
    if (bound.fits_ulong_p()) return mpz_class(below(std::uint64_t(bound.get_ui())));
    const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    mpz_class x;
    do {
      x = 0;
      std::size_t have = 0;
      while (have < bits) {
        x <<= 64;
        mpz_class limb;
        const std::uint64_t r = engine_();
        mpz_import(limb.get_mpz_t(), 1, 1, sizeof(r), 0, 0, &r);
        x += limb;
        have += 64;
      }
      x >>= static_cast<mp_bitcnt_t>(have - bits);
    } while (x >= bound);
    return x;
  }

 private:
  static std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  static std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace gll
