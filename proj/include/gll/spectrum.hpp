#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "gll/arith.hpp"

namespace gll {

/// Levels of the lifting construction for (p, n).
struct ParamProfile {
  std::uint64_t p = 0;
  unsigned n = 0;
  unsigned m = 0;  ///< 3 + floor(log_p(2^n + 1))
  unsigned M = 0;  ///< m(n^2 - n) + 1
  unsigned N = 0;  ///< 2M
  unsigned t = 0;  ///< 8M; the congruence level reached by the construction
};

ParamProfile compute_profile(std::uint64_t p, unsigned n);

/// floor(log_p(x)) for x >= 1, in exact integer arithmetic.
unsigned floor_log(std::uint64_t p, const mpz_class& x);

/// Exponents (k_1..k_n) with beta_i = chi^(k_i).
///
/// All k_i >= 1 is enforced. The congruence k_i = ((1 + (-1)^i)/2) k mod (p-1)
/// is available as lifts_residual() but not enforced.
class ExponentTuple {
 public:
  ExponentTuple(std::uint64_t p, std::vector<mpz_class> ks, long anchor);

  std::uint64_t prime() const { return p_; }
  unsigned size() const { return static_cast<unsigned>(ks_.size()); }
  const std::vector<mpz_class>& ks() const { return ks_; }
  const mpz_class& operator[](unsigned i) const { return ks_[i]; }
  long anchor() const { return anchor_; }

  /// k_i - k_j for 0-based indices.
  mpz_class difference(unsigned i, unsigned j) const { return ks_[i] - ks_[j]; }

  /// Whether chi^(k_i) reduces mod p to the alternating residual character.
  bool lifts_residual() const;

  friend bool operator==(const ExponentTuple& a, const ExponentTuple& b) {
    return a.p_ == b.p_ && a.ks_ == b.ks_;
  }

 private:
  std::uint64_t p_;
  std::vector<mpz_class> ks_;
  long anchor_;
};

/// ((1 + (-1)^i)/2) * k for 1-based i.
inline long parity_offset(unsigned i, long k) { return (i % 2 == 0) ? k : 0; }

/// (2^i p + parity_offset(i, k))_{i=1..n} with no range check on k beyond
/// k >= 1 odd. Used for reduced-parameter models where p is too small for the
/// canonical anchor range.
ExponentTuple formula_exponents(std::uint64_t p, unsigned n, long k);

/// formula_exponents with the anchor restricted to odd k in [3, (p-1)/2].
/// Throws AnchorOutOfRange.
ExponentTuple canonical_exponents(std::uint64_t p, unsigned n, long k);

/// Distinctness of the k_i and of all k_i - k_j (i != j) mod p^(m-1)(p-1).
bool check_admissible(const ExponentTuple& t, unsigned m);

/// Largest p^m the pointwise oracle will evaluate.
inline constexpr std::uint64_t oracle_scale_limit = 10000000;

/// Evaluates every beta_i and beta_i/beta_j at a generator of (Z/p^m)^x and
/// tests distinctness of the values. Throws OracleScaleExceeded.
bool admissibility_oracle(const ExponentTuple& t, unsigned m);

/// Default cap on p for the O(p^2) Bernoulli recurrence.
inline constexpr std::uint64_t bernoulli_default_cap = 10000;

/// B_0..B_{p-3} mod p via sum_{j<=m} C(m+1, j) B_j = 0 with B_1 = -1/2.
std::vector<std::uint64_t> bernoulli_mod(std::uint64_t p,
                                         std::uint64_t cap = bernoulli_default_cap);

struct IrregularityReport {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> bernoulli_table;
  std::vector<unsigned> irregular_indices;
  unsigned e_upper = 0;
  /// Odd k in [3, (p-1)/2] with p not dividing B_{k+1} nor B_{p-k}.
  std::vector<long> admissible_ks;
  /// e_upper < floor((p-2)/4).
  bool count_hypothesis = false;
  /// (p-1)/2 when p = 3 mod 4, which needs no Bernoulli certificate.
  std::optional<long> unconditional_k;

  bool certified() const { return !admissible_ks.empty() || unconditional_k.has_value(); }
  /// Smallest certified anchor, if any.
  std::optional<long> chosen_k() const;
};

IrregularityReport scan_assumption_k(std::uint64_t p,
                                     std::uint64_t cap = bernoulli_default_cap);

}  // namespace gll
