#pragma once

#include <gmpxx.h>

#include <vector>

#include "gll/arith.hpp"

namespace gll {

inline constexpr unsigned max_matrix_dim = 16;

/// Dense n x n matrix over Z/p^e, entries stored as residues in [0, p^e).
class MatZq {
 public:
  MatZq(unsigned n, const Modulus& mod);
  MatZq(unsigned n, const Modulus& mod, const std::vector<mpz_class>& row_major);

  static MatZq identity(unsigned n, const Modulus& mod);
  /// e_{i,j} (0-based).
  static MatZq unit(unsigned n, const Modulus& mod, unsigned i, unsigned j);
  static MatZq diagonal(const std::vector<mpz_class>& diag, const Modulus& mod);

  unsigned dim() const { return n_; }
  const Modulus& modulus() const { return mod_; }
  unsigned level() const { return mod_.exponent(); }

  const mpz_class& operator()(unsigned i, unsigned j) const { return a_[i * n_ + j]; }
  void set(unsigned i, unsigned j, const mpz_class& v) { a_[i * n_ + j] = mod_.reduce(v); }
  ModInt entry(unsigned i, unsigned j) const { return ModInt(a_[i * n_ + j], mod_); }
  const std::vector<mpz_class>& entries() const { return a_; }

  MatZq& operator+=(const MatZq& o);
  MatZq& operator-=(const MatZq& o);
  friend MatZq operator+(MatZq a, const MatZq& b) { return a += b; }
  friend MatZq operator-(MatZq a, const MatZq& b) { return a -= b; }
  friend MatZq operator*(const MatZq& a, const MatZq& b);
  MatZq operator-() const;
  MatZq scaled(const mpz_class& c) const;

  ModInt trace() const;
  bool is_zero() const;
  bool is_identity() const;
  bool is_diagonal() const;

  friend bool operator==(const MatZq& a, const MatZq& b) {
    return a.n_ == b.n_ && a.mod_ == b.mod_ && a.a_ == b.a_;
  }

 private:
  void check_same(const MatZq& o) const;

  unsigned n_;
  Modulus mod_;
  std::vector<mpz_class> a_;
};

/// [x, y] = xy - yx.
MatZq commutator_bracket(const MatZq& x, const MatZq& y);

/// Determinant by unit-pivot elimination, falling back to fraction-free
/// (Bareiss) elimination over the integer lift when no unit pivot exists.
ModInt det(const MatZq& a);
bool is_invertible(const MatZq& a);

/// Inverse by Gauss-Jordan with unit pivots. Throws NonUnit if singular mod p.
MatZq inverse(const MatZq& a);

/// a^k for k >= 0 (square and multiply); negative k inverts first.
MatZq power(const MatZq& a, const mpz_class& k);

/// Entrywise reduction to Z/p^i, 1 <= i <= e.
MatZq reduce(const MatZq& a, unsigned i);

/// Lift residues to Z/p^e (entries keep their [0, p^i) representatives).
MatZq lift(const MatZq& a, unsigned e);

/// Largest i <= e with a = I mod p^i.
unsigned congruence_level(const MatZq& a);

/// I + p^m A at modulus p^(m+1), for A over F_p (A of level 1, or any level:
/// only A mod p matters). m >= 1.
MatZq exp_level(const MatZq& a, unsigned m);

/// Inverse of exp_level on the kernel of GL_n(Z/p^(m+1)) -> GL_n(Z/p^m).
/// X of higher level is first reduced to p^(m+1). Throws NotInKernel.
MatZq log_level(const MatZq& x, unsigned m);

/// Z/p^N -> Z/p^M with M < N <= 2M.
struct SmallExtension {
  unsigned source_level;  ///< N
  unsigned target_level;  ///< M
  SmallExtension(unsigned N, unsigned M);
  /// Level of R' = Z/p^(N-M).
  unsigned quotient_level() const { return source_level - target_level; }
};

/// I + p^M A at modulus p^N for A over Z/p^(N-M) (any lift).
MatZq kernel_embed(const MatZq& a, const SmallExtension& ext);

/// The A over Z/p^(N-M) with X = I + p^M A. Throws NotInKernel.
MatZq kernel_log(const MatZq& x, const SmallExtension& ext);

}  // namespace gll
