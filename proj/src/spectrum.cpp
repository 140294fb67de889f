#include "gll/spectrum.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace gll {

unsigned floor_log(std::uint64_t p, const mpz_class& x) {
  if (x < 1) throw std::invalid_argument("floor_log needs x >= 1");
  unsigned j = 0;
  mpz_class power = static_cast<unsigned long>(p);
  while (power <= x) {
    power *= static_cast<unsigned long>(p);
    ++j;
  }
  return j;
}

ParamProfile compute_profile(std::uint64_t p, unsigned n) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("profile needs an odd prime p");
  if (n < 2) throw std::invalid_argument("profile needs n >= 2");
  mpz_class two_n;
  mpz_ui_pow_ui(two_n.get_mpz_t(), 2, n);
  ParamProfile out;
  out.p = p;
  out.n = n;
  out.m = 3 + floor_log(p, two_n + 1);
  out.M = out.m * (n * n - n) + 1;
  out.N = 2 * out.M;
  out.t = 8 * out.M;
  const unsigned closed_form = 8 * (n * n - n) * out.m + 8;
  if (out.t != closed_form) throw std::logic_error("t = 8M identity violated");
  return out;
}

ExponentTuple::ExponentTuple(std::uint64_t p, std::vector<mpz_class> ks, long anchor)
    : p_(p), ks_(std::move(ks)), anchor_(anchor) {
  if (ks_.size() < 2) throw std::invalid_argument("exponent tuple needs n >= 2");
  for (const auto& k : ks_) {
    if (k < 1) throw std::invalid_argument("exponents must be >= 1, got " + k.get_str());
  }
}

bool ExponentTuple::lifts_residual() const {
  const mpz_class period(static_cast<unsigned long>(p_ - 1));
  for (unsigned i = 0; i < size(); ++i) {
    if (floor_mod(ks_[i] - parity_offset(i + 1, anchor_), period) != 0) return false;
  }
  return true;
}

ExponentTuple formula_exponents(std::uint64_t p, unsigned n, long k) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  if (k < 1 || k % 2 == 0) throw AnchorOutOfRange("anchor must be a positive odd integer");
  std::vector<mpz_class> ks;
  ks.reserve(n);
  for (unsigned i = 1; i <= n; ++i) {
    mpz_class two_i;
    mpz_ui_pow_ui(two_i.get_mpz_t(), 2, i);
    ks.push_back(two_i * static_cast<unsigned long>(p) + parity_offset(i, k));
  }
  return ExponentTuple(p, std::move(ks), k);
}

ExponentTuple canonical_exponents(std::uint64_t p, unsigned n, long k) {
  const long hi = static_cast<long>((p - 1) / 2);
  if (k < 3 || k > hi || k % 2 == 0) {
    throw AnchorOutOfRange("k = " + std::to_string(k) + " is not an odd integer in [3, " +
                           std::to_string(hi) + "]");
  }
  return formula_exponents(p, n, k);
}

bool check_admissible(const ExponentTuple& t, unsigned m) {
  const mpz_class period = character_period(t.prime(), m);
  std::vector<mpz_class> residues;
  for (const auto& k : t.ks()) residues.push_back(floor_mod(k, period));
  std::sort(residues.begin(), residues.end());
  if (std::adjacent_find(residues.begin(), residues.end()) != residues.end()) return false;

  std::vector<mpz_class> diffs;
  for (unsigned i = 0; i < t.size(); ++i) {
    for (unsigned j = 0; j < t.size(); ++j) {
      if (i != j) diffs.push_back(floor_mod(t.difference(i, j), period));
    }
  }
  std::sort(diffs.begin(), diffs.end());
  return std::adjacent_find(diffs.begin(), diffs.end()) == diffs.end();
}

bool admissibility_oracle(const ExponentTuple& t, unsigned m) {
  const mpz_class scale = prime_power(t.prime(), m);
  if (scale > static_cast<unsigned long>(oracle_scale_limit)) {
    throw OracleScaleExceeded("p^m = " + scale.get_str() + " exceeds " +
                              std::to_string(oracle_scale_limit));
  }
  const Modulus mod(t.prime(), m);
  const ModInt g = primitive_root(mod);

  std::vector<mpz_class> values;
  for (const auto& k : t.ks()) values.push_back(mod_pow(g, k).value());
  for (std::size_t a = 0; a < values.size(); ++a) {
    for (std::size_t b = a + 1; b < values.size(); ++b) {
      if (values[a] == values[b]) return false;
    }
  }

  std::vector<mpz_class> ratios;
  for (unsigned i = 0; i < t.size(); ++i) {
    for (unsigned j = 0; j < t.size(); ++j) {
      if (i == j) continue;
      ratios.push_back((mod_pow(g, t[i]) * mod_pow(g, t[j]).inverse()).value());
    }
  }
  for (std::size_t a = 0; a < ratios.size(); ++a) {
    for (std::size_t b = a + 1; b < ratios.size(); ++b) {
      if (ratios[a] == ratios[b]) return false;
    }
  }
  return true;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  mpz_class r, x(static_cast<unsigned long>(a)), m(static_cast<unsigned long>(p));
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw NonUnit(std::to_string(a) + " mod " + std::to_string(p));
  }
  return r.get_ui();
}

}  // namespace

std::vector<std::uint64_t> bernoulli_mod(std::uint64_t p, std::uint64_t cap) {
  if (p < 5 || !is_prime(p)) throw std::invalid_argument("bernoulli_mod needs a prime p >= 5");
  if (p > cap) {
    throw std::invalid_argument("p = " + std::to_string(p) + " exceeds the Bernoulli cap " +
                                std::to_string(cap));
  }
  const std::size_t count = p - 2;  // B_0 .. B_{p-3}
  std::vector<std::uint64_t> b(count, 0);
  b[0] = 1;
  // Pascal row C(r, .) mod p, advanced to r = m + 1 before computing B_m.
  std::vector<std::uint64_t> row{1};
  for (std::size_t m = 1; m < count; ++m) {
    while (row.size() < m + 2) {
      std::vector<std::uint64_t> next(row.size() + 1, 1);
      for (std::size_t j = 1; j < row.size(); ++j) next[j] = (row[j - 1] + row[j]) % p;
      row = std::move(next);
    }
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < m; ++j) acc = (acc + mulmod(row[j], b[j], p)) % p;
    const std::uint64_t inv = invmod((m + 1) % p, p);
    b[m] = mulmod((p - acc) % p, inv, p);
  }
  return b;
}

std::optional<long> IrregularityReport::chosen_k() const {
  std::optional<long> best;
  if (!admissible_ks.empty()) best = admissible_ks.front();
  if (unconditional_k && (!best || *unconditional_k < *best)) best = unconditional_k;
  return best;
}

IrregularityReport scan_assumption_k(std::uint64_t p, std::uint64_t cap) {
  if (p < 7) throw std::invalid_argument("scan_assumption_k needs p >= 7");
  IrregularityReport r;
  r.p = p;
  r.bernoulli_table = bernoulli_mod(p, cap);
  for (unsigned a = 2; a + 3 <= p; a += 2) {
    if (r.bernoulli_table[a] == 0) r.irregular_indices.push_back(a);
  }
  r.e_upper = static_cast<unsigned>(r.irregular_indices.size());
  r.count_hypothesis = r.e_upper < (p - 2) / 4;
  const long hi = static_cast<long>((p - 1) / 2);
  for (long k = 3; k <= hi; k += 2) {
    const std::uint64_t plus = static_cast<std::uint64_t>(k + 1);
    const std::uint64_t reflect = p - static_cast<std::uint64_t>(k);
    if (r.bernoulli_table[plus] != 0 && r.bernoulli_table[reflect] != 0) {
      r.admissible_ks.push_back(k);
    }
  }
  if (p % 4 == 3) r.unconditional_k = hi;
  return r;
}

}  // namespace gll
