#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "gll/matgroup.hpp"

namespace gll {

/// Flattened n x n matrix over F_p, row-major, entries in [0, p).
using FpMatrix = std::vector<std::uint64_t>;

FpMatrix to_fp(const MatZq& a);
FpMatrix fp_unit(unsigned n, unsigned i, unsigned j);
FpMatrix fp_bracket(const FpMatrix& x, const FpMatrix& y, unsigned n, std::uint64_t p);

/// F_p-span of n x n matrices, kept in reduced row echelon form.
class PhiSubspace {
 public:
  PhiSubspace(std::uint64_t p, unsigned n, unsigned level);

  std::uint64_t prime() const { return p_; }
  unsigned dim_n() const { return n_; }
  unsigned level() const { return level_; }
  const std::vector<FpMatrix>& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }

  /// Returns true when x enlarged the span.
  bool add(const FpMatrix& x);
  bool contains(const FpMatrix& x) const;
  bool contains(const PhiSubspace& other) const;
  /// Contains every e_{i,j} (i != j) and every e_{i,i} - e_{i+1,i+1}.
  bool contains_sl() const;

  friend bool operator==(const PhiSubspace& a, const PhiSubspace& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.basis_ == b.basis_;
  }

 private:
  FpMatrix reduce(FpMatrix x) const;

  std::uint64_t p_;
  unsigned n_;
  unsigned level_;
  std::vector<FpMatrix> basis_;
  std::vector<unsigned> pivots_;
};

/// Default cap on enumerated group orders.
inline constexpr std::uint64_t enumeration_default_cap = 10000000;

/// A subgroup of GL_n(Z/p^e) given by generators, optionally enumerated.
class GeneratedSubgroup {
 public:
  explicit GeneratedSubgroup(std::vector<MatZq> generators);

  const std::vector<MatZq>& generators() const { return gens_; }
  const Modulus& modulus() const { return mod_; }
  unsigned dim() const { return n_; }
  unsigned level() const { return mod_.exponent(); }

  /// Breadth-first closure under right multiplication by the generators.
  /// Requires (p^e)^(n^2) < 2^64. Throws EnumerationCapExceeded.
  void enumerate(std::uint64_t cap = enumeration_default_cap);
  bool enumerated() const { return enumerated_; }
  std::size_t order() const;
  bool contains(const MatZq& x) const;
  /// Elements in discovery order. Throws NotEnumerated.
  std::vector<MatZq> elements() const;
  /// Encoded elements in discovery order. Throws NotEnumerated.
  const std::vector<std::uint64_t>& codes() const;
  bool contains_code(std::uint64_t code) const;

  /// Canonical integer encoding of a matrix at this modulus.
  std::uint64_t encode(const MatZq& x) const;
  MatZq decode(std::uint64_t code) const;

 private:
  void require_enumerated() const;

  std::vector<MatZq> gens_;
  Modulus mod_;
  unsigned n_;
  std::uint64_t q_ = 0;
  bool enumerated_ = false;
  std::vector<std::uint64_t> order_list_;
  std::vector<bool> bitmap_;
  std::unordered_set<std::uint64_t> hashset_;
  bool use_bitmap_ = false;
};

/// Span of log_level(x mod p^(i+1), i) over the x in G congruent to I mod
/// p^i. Needs 1 <= i and i + 1 <= e. Throws NotEnumerated.
PhiSubspace phi_subspace(const GeneratedSubgroup& g, unsigned i);

/// [Phi_i, Phi_j] is contained in Phi_{i+j}. Needs i + j + 1 <= e.
bool bracket_containment_check(const GeneratedSubgroup& g, unsigned i, unsigned j);

/// B_1 = span(S), B_r = span(B_{r-1} and every [B_a, B_b] with a + b = r).
std::vector<PhiSubspace> bracket_closure(const std::vector<FpMatrix>& s, unsigned n,
                                         std::uint64_t p, unsigned steps);

/// Which diagonal element plays mu in the closure hypothesis.
enum class MuConvention {
  alternating,  ///< diag(0, 1, 0, 1, ...)
  first_entry   ///< e_{1,1}
};

struct GenerationReport {
  unsigned n = 0;
  std::uint64_t p = 0;
  MuConvention convention = MuConvention::alternating;
  std::optional<unsigned> steps_to_sln;
  std::vector<std::size_t> dims_per_step;
  /// Every e_{i,j}, i != j, lies in B_2 (recorded for n > 2).
  std::optional<bool> all_lines_in_b2;
  bool pass = false;
};

/// Hypothesis set {mu} plus {e_{i,j} : i + j odd}, closure to 4 steps.
GenerationReport verify_prop45(unsigned n, std::uint64_t p,
                           MuConvention convention = MuConvention::alternating);

/// Whether every X in SL_n(Z/p^e) with X = I mod p^t lies in G.
/// Needs t < e and p^((e-t)(n^2-1)) within cap. Throws
/// EnumerationCapExceeded and NotEnumerated.
bool contains_Ut(const GeneratedSubgroup& g, unsigned t,
                 std::uint64_t cap = enumeration_default_cap);

}  // namespace gll
