#include "gll/matgroup.hpp"

#include <stdexcept>
#include <string>

namespace gll {

MatZq::MatZq(unsigned n, const Modulus& mod) : n_(n), mod_(mod), a_(std::size_t(n) * n) {
  if (n < 2 || n > max_matrix_dim) {
    throw std::invalid_argument("matrix dimension must lie in [2, 16], got " + std::to_string(n));
  }
}

MatZq::MatZq(unsigned n, const Modulus& mod, const std::vector<mpz_class>& row_major)
    : MatZq(n, mod) {
  if (row_major.size() != a_.size()) throw std::invalid_argument("wrong number of matrix entries");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] = mod_.reduce(row_major[i]);
}

MatZq MatZq::identity(unsigned n, const Modulus& mod) {
  MatZq r(n, mod);
  for (unsigned i = 0; i < n; ++i) r.a_[i * n + i] = 1;
  return r;
}

MatZq MatZq::unit(unsigned n, const Modulus& mod, unsigned i, unsigned j) {
  MatZq r(n, mod);
  r.a_[i * n + j] = 1;
  return r;
}

MatZq MatZq::diagonal(const std::vector<mpz_class>& diag, const Modulus& mod) {
  MatZq r(static_cast<unsigned>(diag.size()), mod);
  for (unsigned i = 0; i < r.n_; ++i) r.a_[i * r.n_ + i] = mod.reduce(diag[i]);
  return r;
}

void MatZq::check_same(const MatZq& o) const {
  if (n_ != o.n_ || !(mod_ == o.mod_)) {
    throw std::invalid_argument("matrix operands differ in dimension or modulus");
  }
}

MatZq& MatZq::operator+=(const MatZq& o) {
  check_same(o);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    a_[i] += o.a_[i];
    if (a_[i] >= mod_.value()) a_[i] -= mod_.value();
  }
  return *this;
}

MatZq& MatZq::operator-=(const MatZq& o) {
  check_same(o);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    a_[i] -= o.a_[i];
    if (a_[i] < 0) a_[i] += mod_.value();
  }
  return *this;
}

MatZq operator*(const MatZq& a, const MatZq& b) {
  a.check_same(b);
  const unsigned n = a.n_;
  MatZq r(n, a.mod_);
  mpz_class acc;
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      acc = 0;
      for (unsigned k = 0; k < n; ++k) {
        mpz_addmul(acc.get_mpz_t(), a.a_[i * n + k].get_mpz_t(), b.a_[k * n + j].get_mpz_t());
      }
      mpz_mod(r.a_[i * n + j].get_mpz_t(), acc.get_mpz_t(), a.mod_.value().get_mpz_t());
    }
  }
  return r;
}

MatZq MatZq::operator-() const {
  MatZq r(n_, mod_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] == 0 ? mpz_class(0) : mod_.value() - a_[i];
  return r;
}

MatZq MatZq::scaled(const mpz_class& c) const {
  MatZq r(n_, mod_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = mod_.reduce(a_[i] * c);
  return r;
}

ModInt MatZq::trace() const {
  mpz_class t = 0;
  for (unsigned i = 0; i < n_; ++i) t += a_[i * n_ + i];
  return ModInt(t, mod_);
}

bool MatZq::is_zero() const {
  for (const auto& x : a_) {
    if (x != 0) return false;
  }
  return true;
}

bool MatZq::is_identity() const {
  for (unsigned i = 0; i < n_; ++i) {
    for (unsigned j = 0; j < n_; ++j) {
      if (a_[i * n_ + j] != (i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

bool MatZq::is_diagonal() const {
  for (unsigned i = 0; i < n_; ++i) {
    for (unsigned j = 0; j < n_; ++j) {
      if (i != j && a_[i * n_ + j] != 0) return false;
    }
  }
  return true;
}

MatZq commutator_bracket(const MatZq& x, const MatZq& y) { return x * y - y * x; }

namespace {

bool is_unit_value(const mpz_class& v, std::uint64_t p) {
  return mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(p)) == 0;
}

mpz_class bareiss(std::vector<mpz_class> m, unsigned n) {
  int sign = 1;
  mpz_class prev = 1;
  for (unsigned k = 0; k + 1 < n; ++k) {
    if (m[k * n + k] == 0) {
      unsigned swap_row = n;
      for (unsigned i = k + 1; i < n; ++i) {
        if (m[i * n + k] != 0) {
          swap_row = i;
          break;
        }
      }
      if (swap_row == n) return 0;
      for (unsigned j = 0; j < n; ++j) std::swap(m[k * n + j], m[swap_row * n + j]);
      sign = -sign;
    }
    for (unsigned i = k + 1; i < n; ++i) {
      for (unsigned j = k + 1; j < n; ++j) {
        mpz_class v = m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i * n + j] = v;
      }
    }
    prev = m[k * n + k];
  }
  return sign * m[(n - 1) * n + (n - 1)];
}

}  // namespace

ModInt det(const MatZq& a) {
  const unsigned n = a.dim();
  const Modulus& mod = a.modulus();
  const std::uint64_t p = mod.prime();
  std::vector<mpz_class> m = a.entries();
  mpz_class result = 1;
  for (unsigned col = 0; col < n; ++col) {
    unsigned pivot = n;
    for (unsigned r = col; r < n; ++r) {
      if (is_unit_value(m[r * n + col], p)) {
        pivot = r;
        break;
      }
    }
    if (pivot == n) return ModInt(bareiss(a.entries(), n), mod);
    if (pivot != col) {
      for (unsigned j = 0; j < n; ++j) std::swap(m[col * n + j], m[pivot * n + j]);
      result = -result;
    }
    const mpz_class& piv = m[col * n + col];
    result = mod.reduce(result * piv);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), piv.get_mpz_t(), mod.value().get_mpz_t());
    for (unsigned r = col + 1; r < n; ++r) {
      if (m[r * n + col] == 0) continue;
      const mpz_class f = mod.reduce(m[r * n + col] * inv);
      for (unsigned j = col; j < n; ++j) m[r * n + j] = mod.reduce(m[r * n + j] - f * m[col * n + j]);
    }
  }
  return ModInt(result, mod);
}

bool is_invertible(const MatZq& a) { return det(a).is_unit(); }

MatZq inverse(const MatZq& a) {
  const unsigned n = a.dim();
  const Modulus& mod = a.modulus();
  std::vector<mpz_class> m = a.entries();
  MatZq inv = MatZq::identity(n, mod);
  std::vector<mpz_class> r(inv.entries());
  for (unsigned col = 0; col < n; ++col) {
    unsigned pivot = n;
    for (unsigned i = col; i < n; ++i) {
      if (is_unit_value(m[i * n + col], mod.prime())) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) throw NonUnit("matrix is singular mod p");
    if (pivot != col) {
      for (unsigned j = 0; j < n; ++j) {
        std::swap(m[col * n + j], m[pivot * n + j]);
        std::swap(r[col * n + j], r[pivot * n + j]);
      }
    }
    mpz_class pinv;
    mpz_invert(pinv.get_mpz_t(), m[col * n + col].get_mpz_t(), mod.value().get_mpz_t());
    for (unsigned j = 0; j < n; ++j) {
      m[col * n + j] = mod.reduce(m[col * n + j] * pinv);
      r[col * n + j] = mod.reduce(r[col * n + j] * pinv);
    }
    for (unsigned i = 0; i < n; ++i) {
      if (i == col || m[i * n + col] == 0) continue;
      const mpz_class f = m[i * n + col];
      for (unsigned j = 0; j < n; ++j) {
        m[i * n + j] = mod.reduce(m[i * n + j] - f * m[col * n + j]);
        r[i * n + j] = mod.reduce(r[i * n + j] - f * r[col * n + j]);
      }
    }
  }
  return MatZq(n, mod, r);
}

MatZq power(const MatZq& a, const mpz_class& k) {
  if (k < 0) return power(inverse(a), mpz_class(-k));
  MatZq result = MatZq::identity(a.dim(), a.modulus());
  MatZq base = a;
  const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t b = 0; b < bits; ++b) {
    if (mpz_tstbit(k.get_mpz_t(), b)) result = result * base;
    if (b + 1 < bits) base = base * base;
  }
  return result;
}

MatZq reduce(const MatZq& a, unsigned i) {
  if (i < 1 || i > a.level()) {
    throw std::invalid_argument("reduction level must lie in [1, " + std::to_string(a.level()) + "]");
  }
  return MatZq(a.dim(), a.modulus().at_level(i), a.entries());
}

MatZq lift(const MatZq& a, unsigned e) {
  if (e < a.level()) throw std::invalid_argument("lift target below current level");
  return MatZq(a.dim(), a.modulus().at_level(e), a.entries());
}

unsigned congruence_level(const MatZq& a) {
  const MatZq diff = a - MatZq::identity(a.dim(), a.modulus());
  unsigned level = a.level();
  for (const auto& x : diff.entries()) {
    if (x != 0) level = std::min(level, valuation(x, a.modulus().prime(), a.level()));
  }
  return level;
}

MatZq exp_level(const MatZq& a, unsigned m) {
  if (m < 1) throw std::invalid_argument("exp_level needs m >= 1");
  const Modulus target = a.modulus().at_level(m + 1);
  const mpz_class pm = prime_power(a.modulus().prime(), m);
  const mpz_class p(static_cast<unsigned long>(a.modulus().prime()));
  MatZq r = MatZq::identity(a.dim(), target);
  for (unsigned i = 0; i < a.dim(); ++i) {
    for (unsigned j = 0; j < a.dim(); ++j) {
      r.set(i, j, r(i, j) + pm * floor_mod(a(i, j), p));
    }
  }
  return r;
}

MatZq log_level(const MatZq& x, unsigned m) {
  if (m < 1) throw std::invalid_argument("log_level needs m >= 1");
  if (x.level() < m + 1) throw std::invalid_argument("log_level needs a matrix of level >= m + 1");
  const MatZq y = reduce(x, m + 1);
  const MatZq diff = y - MatZq::identity(y.dim(), y.modulus());
  const mpz_class pm = prime_power(y.modulus().prime(), m);
  std::vector<mpz_class> out(diff.entries().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const mpz_class& v = diff.entries()[i];
    if (!mpz_divisible_p(v.get_mpz_t(), pm.get_mpz_t())) {
      throw NotInKernel("matrix is not congruent to I mod p^" + std::to_string(m));
    }
    mpz_divexact(out[i].get_mpz_t(), v.get_mpz_t(), pm.get_mpz_t());
  }
  return MatZq(y.dim(), y.modulus().at_level(1), out);
}

SmallExtension::SmallExtension(unsigned N, unsigned M) : source_level(N), target_level(M) {
  if (M < 1 || !(M < N && N <= 2 * M)) {
    throw std::invalid_argument("small extension needs 1 <= M < N <= 2M");
  }
}

MatZq kernel_embed(const MatZq& a, const SmallExtension& ext) {
  if (a.level() < ext.quotient_level()) {
    throw std::invalid_argument("kernel_embed needs a matrix over Z/p^(N-M)");
  }
  const Modulus target = a.modulus().at_level(ext.source_level);
  const std::uint64_t p = a.modulus().prime();
  const mpz_class pM = prime_power(p, ext.target_level);
  const mpz_class pk = prime_power(p, ext.quotient_level());
  MatZq r = MatZq::identity(a.dim(), target);
  for (unsigned i = 0; i < a.dim(); ++i) {
    for (unsigned j = 0; j < a.dim(); ++j) r.set(i, j, r(i, j) + pM * floor_mod(a(i, j), pk));
  }
  return r;
}

MatZq kernel_log(const MatZq& x, const SmallExtension& ext) {
  if (x.level() < ext.source_level) throw std::invalid_argument("kernel_log needs level >= N");
  const MatZq y = reduce(x, ext.source_level);
  const MatZq diff = y - MatZq::identity(y.dim(), y.modulus());
  const mpz_class pM = prime_power(y.modulus().prime(), ext.target_level);
  std::vector<mpz_class> out(diff.entries().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const mpz_class& v = diff.entries()[i];
    if (!mpz_divisible_p(v.get_mpz_t(), pM.get_mpz_t())) {
      throw NotInKernel("matrix is not congruent to I mod p^" + std::to_string(ext.target_level));
    }
    mpz_divexact(out[i].get_mpz_t(), v.get_mpz_t(), pM.get_mpz_t());
  }
  return MatZq(y.dim(), y.modulus().at_level(ext.quotient_level()), out);
}

}  // namespace gll
