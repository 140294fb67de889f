#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gll/arith.hpp"
#include "gll/matgroup.hpp"
#include "gll/spectrum.hpp"

namespace gll {

/// (row, column), 0-based.
using IndexPair = std::pair<unsigned, unsigned>;

/// All (i, j) with i != j in row-major order.
std::vector<IndexPair> offdiagonal_pairs(unsigned n);

/// An element of Ad rho_M = M_n(Z/p^M) for the diagonal representation
/// g -> diag(chi(g)^(k_1), ..., chi(g)^(k_n)).
class AdjointElement {
 public:
  AdjointElement(MatZq matrix, ExponentTuple context);

  static AdjointElement zero(const Modulus& mod, const ExponentTuple& context);
  static AdjointElement unit(const Modulus& mod, const ExponentTuple& context, IndexPair ij);

  const MatZq& matrix() const { return matrix_; }
  const ExponentTuple& context() const { return context_; }
  const Modulus& modulus() const { return matrix_.modulus(); }
  unsigned dim() const { return matrix_.dim(); }

  /// Coefficient y_{i,j} of e_{i,j}.
  ModInt coefficient(IndexPair ij) const { return matrix_.entry(ij.first, ij.second); }

  AdjointElement& operator+=(const AdjointElement& o);
  friend AdjointElement operator+(AdjointElement a, const AdjointElement& b) { return a += b; }
  AdjointElement scaled(const mpz_class& c) const;

  friend bool operator==(const AdjointElement& a, const AdjointElement& b) {
    return a.matrix_ == b.matrix_ && a.context_ == b.context_;
  }

 private:
  void check_context(const AdjointElement& o) const;

  MatZq matrix_;
  ExponentTuple context_;
};

/// x = x_0 + sum_{i != j} y_{i,j} e_{i,j}.
struct Decomposition {
  std::vector<mpz_class> torus;  ///< diagonal of x_0
  std::vector<mpz_class> lines;  ///< y_{i,j} in offdiagonal_pairs order
};

Decomposition decompose(const AdjointElement& x);
AdjointElement reassemble(const Decomposition& d, const Modulus& mod, const ExponentTuple& ctx);

/// gamma_{k,l}(u) = u^(k_k - k_l); equals 1 on the diagonal.
ModInt gamma(const ExponentTuple& ctx, IndexPair kl, const ModInt& u);

/// diag(u^(k_1), ..., u^(k_n)): the value of rho on an element with chi = u.
MatZq character_matrix(const ExponentTuple& ctx, const ModInt& u);

/// Adjoint action of an element with chi = u, computed line by line.
/// Throws NonUnit.
AdjointElement galois_act(const ModInt& u, const AdjointElement& x);

/// [x, y]. Throws ContextMismatch.
AdjointElement bracket(const AdjointElement& x, const AdjointElement& y);

/// diag(a_1, ..., a_n) with a_i = (1 + (-1)^i)/2, i.e. diag(0, 1, 0, 1, ...).
MatZq mu_matrix(unsigned n, const Modulus& mod);

enum class OpKind { line_kill, torus_kill };

/// A group-ring element acting on Ad rho_M. line_kill (s,t) with witness u is
/// gamma_{s,t}(u) - [u]; torus_kill is 1 - [u].
struct GroupRingOp {
  OpKind kind;
  IndexPair line{0, 0};  ///< (s, t) for line_kill
  ModInt witness;
};

AdjointElement apply(const GroupRingOp& op, const AdjointElement& x);

/// Multiplier the op applies to the e_{k,l} coefficient.
ModInt op_factor(const GroupRingOp& op, const ExponentTuple& ctx, IndexPair kl);

/// Finite formal sum of group elements (keyed by chi value) with Z/p^M
/// coefficients.
class GroupRingElement {
 public:
  explicit GroupRingElement(const Modulus& mod) : mod_(mod) {}
  static GroupRingElement from_op(const GroupRingOp& op, const ExponentTuple& ctx);

  void add_term(const mpz_class& chi_value, const mpz_class& coeff);
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);

  /// sum_g c_g * D_g x D_g^{-1} with explicit conjugation matrices.
  AdjointElement act_by_conjugation(const AdjointElement& x) const;

  std::size_t term_count() const { return terms_.size(); }

 private:
  Modulus mod_;
  std::map<mpz_class, mpz_class> terms_;
};

/// Smallest power g^j (g the fixed primitive root mod p^M, j >= 1) separating
/// the character of `other` from that of `target` at level m:
/// v_p(gamma_other(u) - gamma_target(u)) < m. A missing target means the
/// trivial character (the torus). Throws NoWitness after exhausting
/// (Z/p^m)^x.
ModInt find_witness(std::optional<IndexPair> target, IndexPair other, const ExponentTuple& ctx,
                    const Modulus& mod, unsigned m);

struct LineCertificate {
  IndexPair target;
  ModInt scalar;                 ///< c with result = c e_{i,j}
  unsigned scalar_valuation = 0;
  std::vector<GroupRingOp> ops;  ///< torus_kill first, then line_kill per (s,t)
  AdjointElement result;
};

/// Applies the torus kill and a line kill for every (s,t) != (i,j).
/// Throws NotAdmissible when the context is not m-admissible.
LineCertificate annihilate_to_line(const AdjointElement& x, IndexPair target, unsigned m);

struct TorusCertificate {
  ModInt scalar;                 ///< result = scalar * x_0
  unsigned scalar_valuation = 0;
  std::vector<GroupRingOp> ops;
  AdjointElement result;
};

TorusCertificate annihilate_to_torus(const AdjointElement& x, unsigned m);

}  // namespace gll
