#pragma once

// Random inputs shared by the tests.

#include "gll/matgroup.hpp"
#include "gll/random.hpp"

namespace sample {

inline gll::MatZq matrix(gll::Rng& rng, unsigned n, const gll::Modulus& mod) {
  std::vector<mpz_class> v;
  for (unsigned i = 0; i < n * n; ++i) v.push_back(rng.below(mod.value()));
  return gll::MatZq(n, mod, v);
}

inline gll::MatZq invertible(gll::Rng& rng, unsigned n, const gll::Modulus& mod) {
  for (;;) {
    gll::MatZq a = matrix(rng, n, mod);
    if (gll::is_invertible(a)) return a;
  }
}

/// I + p^t A for random A.
inline gll::MatZq congruent(gll::Rng& rng, unsigned n, const gll::Modulus& mod, unsigned t) {
  return gll::MatZq::identity(n, mod) + matrix(rng, n, mod).scaled(gll::prime_power(mod.prime(), t));
}

}  // namespace sample
