#pragma once

// Slow, independent reference computations used only by tests.

#include <gmpxx.h>

#include <cstdint>
#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "gll/matgroup.hpp"
#include "gll/spectrum.hpp"

namespace oracle {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t naive_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  for (std::uint64_t i = 0; i < e; ++i) r = mulmod(r, b, m);
  return r;
}

inline bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Multiplicative order of a mod m by repeated multiplication.
inline std::uint64_t order_mod(std::uint64_t a, std::uint64_t m) {
  std::uint64_t x = a % m, k = 1;
  while (x != 1) {
    x = mulmod(x, a, m);
    ++k;
    if (k > m) return 0;
  }
  return k;
}

/// B_k mod p for 0 <= k <= p-3 from power sums: sum_{a<p} a^k = p B_k mod p^2
/// for even k >= 2; B_0 = 1, B_1 = -1/2, odd k >= 3 give 0.
inline std::vector<std::uint64_t> power_sum_bernoulli(std::uint64_t p) {
  std::vector<std::uint64_t> out(p - 2, 0);
  out[0] = 1;
  out[1] = (p - 1) / 2;  // -1/2 mod p
  const std::uint64_t p2 = p * p;
  for (std::uint64_t k = 2; k + 3 <= p; k += 2) {
    std::uint64_t s = 0;
    for (std::uint64_t a = 1; a < p; ++a) {
      std::uint64_t x = 1;
      for (std::uint64_t i = 0; i < k; ++i) x = x * a % p2;
      s = (s + x) % p2;
    }
    out[k] = (s / p) % p;
  }
  return out;
}

/// D x D^{-1} with D = diag(u^(k_i)), computed by full matrix products.
inline gll::MatZq conjugate(const gll::ExponentTuple& t, const gll::ModInt& u, const gll::MatZq& x) {
  std::vector<mpz_class> d;
  for (const auto& k : t.ks()) d.push_back(gll::mod_pow(u, k).value());
  const gll::MatZq dm = gll::MatZq::diagonal(d, x.modulus());
  return dm * x * gll::inverse(dm);
}

/// All elements of the additive span of `gens` in (Z/q)^d, by closure.
inline std::set<std::vector<std::uint64_t>> additive_span(const std::vector<std::vector<std::uint64_t>>& gens,
                                                          std::size_t d, std::uint64_t q) {
  std::set<std::vector<std::uint64_t>> seen{std::vector<std::uint64_t>(d, 0)};
  std::vector<std::vector<std::uint64_t>> frontier{std::vector<std::uint64_t>(d, 0)};
  while (!frontier.empty()) {
    std::vector<std::vector<std::uint64_t>> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        std::vector<std::uint64_t> y(d);
        for (std::size_t i = 0; i < d; ++i) y[i] = (x[i] + g[i]) % q;
        if (seen.insert(y).second) next.push_back(y);
      }
    }
    frontier.swap(next);
  }
  return seen;
}

/// Determinant by the permutation expansion.
inline mpz_class leibniz_det(const gll::MatZq& a) {
  const unsigned n = a.dim();
  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  mpz_class total = 0;
  do {
    int inversions = 0;
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    mpz_class term = inversions % 2 ? -1 : 1;
    for (unsigned i = 0; i < n; ++i) term *= a(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return a.modulus().reduce(total);
}

/// Schoolbook product over the integers, reduced once at the end.
inline gll::MatZq naive_product(const gll::MatZq& a, const gll::MatZq& b) {
  const unsigned n = a.dim();
  std::vector<mpz_class> out(n * n, 0);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      for (unsigned k = 0; k < n; ++k) out[i * n + j] += a(i, k) * b(k, j);
    }
  }
  return gll::MatZq(n, a.modulus(), out);
}

}  // namespace oracle
