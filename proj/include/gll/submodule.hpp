#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gll/arith.hpp"

namespace gll {

using ModVector = std::vector<mpz_class>;

/// Payload traits for a submodule without per-row data.
struct NoPayload {
  struct Payload {};
  static Payload combine(const Payload&, const Payload&, const mpz_class&) { return {}; }
  static Payload scale(const Payload&, const mpz_class&) { return {}; }
};

/// A Z/p^e-submodule of (Z/p^e)^d held in Howell normal form: rows sorted by
/// pivot column, each pivot equal to p^v with v < e, entries above a pivot
/// reduced into [0, p^v), and p^(e-v) times any row lying in the span of the
/// rows below it. The form is unique, so two submodules are equal iff their
/// rows are.
///
/// Traits::combine(a, b, c) must return the payload of `a + c*b` and
/// Traits::scale(a, c) the payload of `c*a`, for c in [0, p^e).
template <class Traits = NoPayload>
class BasicSubmodule {
 public:
  using Payload = typename Traits::Payload;

  struct Row {
    ModVector v;
    Payload payload;
    unsigned pivot = 0;       ///< pivot column
    unsigned pivot_val = 0;   ///< pivot entry is p^pivot_val
  };

  BasicSubmodule(const Modulus& mod, unsigned dim) : mod_(mod), dim_(dim) {}

  const Modulus& modulus() const { return mod_; }
  unsigned dim() const { return dim_; }
  const std::vector<Row>& rows() const { return rows_; }

  /// log_p of the number of elements.
  unsigned log_size() const {
    unsigned s = 0;
    for (const auto& r : rows_) s += mod_.exponent() - r.pivot_val;
    return s;
  }

  bool is_zero() const { return rows_.empty(); }

  bool contains(const ModVector& x) const {
    check_dim(x);
    ModVector v = reduced(x);
    for (const auto& r : rows_) {
      const mpz_class& a = v[r.pivot];
      if (a == 0) continue;
      const mpz_class pv = prime_power(mod_.prime(), r.pivot_val);
      if (!mpz_divisible_p(a.get_mpz_t(), pv.get_mpz_t())) return false;
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), pv.get_mpz_t());
      axpy(v, r.v, -q);
    }
    for (const auto& a : v) {
      if (a != 0) return false;
    }
    return true;
  }

  bool contains(const BasicSubmodule& other) const {
    for (const auto& r : other.rows_) {
      if (!contains(r.v)) return false;
    }
    return true;
  }

  /// Adds a generator; returns false (and leaves the form untouched) when x
  /// is already a member.
  bool add(const ModVector& x, const Payload& payload = {}) {
    if (contains(x)) return false;
    std::vector<Row> work = rows_;
    work.push_back(Row{reduced(x), payload, 0, 0});
    rebuild(std::move(work));
    return true;
  }

  /// Howell form of the span of the given rows (payloads attached).
  static BasicSubmodule from_rows(const Modulus& mod, unsigned dim, std::vector<Row> rows) {
    BasicSubmodule s(mod, dim);
    for (auto& r : rows) r.v = s.reduced(r.v);
    s.rebuild(std::move(rows));
    return s;
  }

  /// Generators of the p-torsion {x in M : p x = 0} = M meet p^(e-1) R^d,
  /// read off the Howell form of [[M, M], [p^(e-1) I, 0]].
  std::vector<Row> p_torsion_generators() const {
    std::vector<Row> out;
    if (rows_.empty()) return out;
    const unsigned e = mod_.exponent();
    const mpz_class top = prime_power(mod_.prime(), e - 1);
    const Payload none = Traits::scale(rows_.front().payload, 0);
    std::vector<Row> work;
    for (const auto& r : rows_) {
      ModVector v(r.v);
      v.insert(v.end(), r.v.begin(), r.v.end());
      work.push_back(Row{std::move(v), r.payload, 0, 0});
    }
    for (unsigned i = 0; i < dim_; ++i) {
      ModVector v(2 * std::size_t(dim_), 0);
      v[i] = top;
      work.push_back(Row{std::move(v), none, 0, 0});
    }
    const BasicSubmodule big = from_rows(mod_, 2 * dim_, std::move(work));
    for (const auto& r : big.rows_) {
      if (r.pivot < dim_) continue;
      Row s{ModVector(r.v.begin() + dim_, r.v.end()), r.payload, r.pivot - dim_, r.pivot_val};
      out.push_back(std::move(s));
    }
    return out;
  }

  friend bool operator==(const BasicSubmodule& a, const BasicSubmodule& b) {
    if (!(a.mod_ == b.mod_) || a.dim_ != b.dim_ || a.rows_.size() != b.rows_.size()) return false;
    for (std::size_t i = 0; i < a.rows_.size(); ++i) {
      if (a.rows_[i].v != b.rows_[i].v) return false;
    }
    return true;
  }

 private:
  void check_dim(const ModVector& x) const {
    if (x.size() != dim_) throw std::invalid_argument("vector dimension mismatch");
  }

  ModVector reduced(const ModVector& x) const {
    check_dim(x);
    ModVector v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = mod_.reduce(x[i]);
    return v;
  }

  ModVector scaled(const ModVector& x, const mpz_class& c) const {
    ModVector v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = mod_.reduce(x[i] * c);
    return v;
  }

  // v += c * w
  void axpy(ModVector& v, const ModVector& w, const mpz_class& c) const {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (w[i] == 0) continue;
      v[i] = mod_.reduce(v[i] + c * w[i]);
    }
  }

  static bool is_zero_vec(const ModVector& v) {
    for (const auto& a : v) {
      if (a != 0) return false;
    }
    return true;
  }

  void rebuild(std::vector<Row> work) {
    const unsigned e = mod_.exponent();
    const std::uint64_t p = mod_.prime();
    std::vector<Row> result;
    for (unsigned col = 0; col < dim_; ++col) {
      std::size_t best = work.size();
      unsigned best_val = e;
      for (std::size_t i = 0; i < work.size(); ++i) {
        const mpz_class& a = work[i].v[col];
        if (a == 0) continue;
        const unsigned v = valuation(a, p, e);
        if (v < best_val) {
          best_val = v;
          best = i;
        }
      }
      if (best == work.size()) continue;
      Row piv = std::move(work[best]);
      work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));

      const mpz_class pv = prime_power(p, best_val);
      mpz_class unit;
      mpz_divexact(unit.get_mpz_t(), piv.v[col].get_mpz_t(), pv.get_mpz_t());
      mpz_class unit_inv;
      mpz_invert(unit_inv.get_mpz_t(), unit.get_mpz_t(), mod_.value().get_mpz_t());
      piv.v = scaled(piv.v, unit_inv);
      piv.payload = Traits::scale(piv.payload, unit_inv);
      piv.pivot = col;
      piv.pivot_val = best_val;

      for (auto& r : work) {
        const mpz_class& a = r.v[col];
        if (a == 0) continue;
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), pv.get_mpz_t());
        const mpz_class neg_q = mod_.reduce(-q);
        axpy(r.v, piv.v, neg_q);
        r.payload = Traits::combine(r.payload, piv.payload, neg_q);
      }
      const mpz_class sat_c = prime_power(p, e - best_val);
      Row sat{scaled(piv.v, sat_c), Traits::scale(piv.payload, sat_c), 0, 0};
      if (!is_zero_vec(sat.v)) work.push_back(std::move(sat));
      std::erase_if(work, [](const Row& r) { return is_zero_vec(r.v); });
      result.push_back(std::move(piv));
    }
    for (std::size_t idx = 0; idx < result.size(); ++idx) {
      const Row& piv = result[idx];
      const mpz_class pv = prime_power(p, piv.pivot_val);
      for (std::size_t above = 0; above < idx; ++above) {
        Row& r = result[above];
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), r.v[piv.pivot].get_mpz_t(), pv.get_mpz_t());
        if (q == 0) continue;
        const mpz_class neg_q = mod_.reduce(-q);
        axpy(r.v, piv.v, neg_q);
        r.payload = Traits::combine(r.payload, piv.payload, neg_q);
      }
    }
    rows_ = std::move(result);
  }

  Modulus mod_;
  unsigned dim_;
  std::vector<Row> rows_;
};

using Submodule = BasicSubmodule<NoPayload>;

}  // namespace gll
