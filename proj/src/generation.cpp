#include "gll/generation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace gll {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, e = p - 2;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Small dense matrices over Z/q with q < 2^16, used by enumeration.
using SmallMat = std::vector<std::uint64_t>;

SmallMat small_mul(const SmallMat& a, const SmallMat& b, unsigned n, std::uint64_t q) {
  SmallMat r(std::size_t(n) * n);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      std::uint64_t acc = 0;
      for (unsigned k = 0; k < n; ++k) acc += a[i * n + k] * b[k * n + j];
      r[i * n + j] = acc % q;
    }
  }
  return r;
}

std::uint64_t small_det(const SmallMat& a, unsigned n, std::uint64_t q) {
  if (n == 1) return a[0] % q;
  if (n == 2) return (a[0] * a[3] % q + q - a[1] * a[2] % q) % q;
  std::uint64_t total = 0;
  for (unsigned c = 0; c < n; ++c) {
    if (a[c] == 0) continue;
    SmallMat minor;
    minor.reserve(std::size_t(n - 1) * (n - 1));
    for (unsigned i = 1; i < n; ++i) {
      for (unsigned j = 0; j < n; ++j) {
        if (j != c) minor.push_back(a[i * n + j]);
      }
    }
    const std::uint64_t term = a[c] * small_det(minor, n - 1, q) % q;
    total = (c % 2 == 0) ? (total + term) % q : (total + q - term) % q;
  }
  return total;
}

}  // namespace

FpMatrix to_fp(const MatZq& a) {
  const std::uint64_t p = a.modulus().prime();
  FpMatrix r;
  r.reserve(a.entries().size());
  for (const auto& v : a.entries()) {
    mpz_class t;
    mpz_fdiv_r_ui(t.get_mpz_t(), v.get_mpz_t(), p);
    r.push_back(t.get_ui());
  }
  return r;
}

FpMatrix fp_unit(unsigned n, unsigned i, unsigned j) {
  FpMatrix r(std::size_t(n) * n, 0);
  r[i * n + j] = 1;
  return r;
}

FpMatrix fp_bracket(const FpMatrix& x, const FpMatrix& y, unsigned n, std::uint64_t p) {
  FpMatrix r(std::size_t(n) * n, 0);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      std::uint64_t acc = 0;
      for (unsigned k = 0; k < n; ++k) {
        acc = (acc + mulmod(x[i * n + k], y[k * n + j], p)) % p;
        acc = (acc + p - mulmod(y[i * n + k], x[k * n + j], p)) % p;
      }
      r[i * n + j] = acc;
    }
  }
  return r;
}

PhiSubspace::PhiSubspace(std::uint64_t p, unsigned n, unsigned level) : p_(p), n_(n), level_(level) {
  if (!is_prime(p) || p == 2) throw std::invalid_argument("PhiSubspace needs an odd prime");
}

FpMatrix PhiSubspace::reduce(FpMatrix x) const {
  if (x.size() != std::size_t(n_) * n_) throw std::invalid_argument("matrix size mismatch");
  for (auto& v : x) v %= p_;
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    const std::uint64_t c = x[pivots_[r]];
    if (c == 0) continue;
    const std::uint64_t neg = p_ - c;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (basis_[r][k] != 0) x[k] = (x[k] + mulmod(neg, basis_[r][k], p_)) % p_;
    }
  }
  return x;
}

bool PhiSubspace::add(const FpMatrix& x) {
  FpMatrix v = reduce(x);
  auto it = std::find_if(v.begin(), v.end(), [](std::uint64_t a) { return a != 0; });
  if (it == v.end()) return false;
  const unsigned piv = static_cast<unsigned>(it - v.begin());
  const std::uint64_t inv = invmod(v[piv], p_);
  for (auto& a : v) a = mulmod(a, inv, p_);
  for (auto& row : basis_) {
    const std::uint64_t c = row[piv];
    if (c == 0) continue;
    const std::uint64_t neg = p_ - c;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (v[k] != 0) row[k] = (row[k] + mulmod(neg, v[k], p_)) % p_;
    }
  }
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, piv);
  basis_.insert(basis_.begin() + pos, std::move(v));
  return true;
}

bool PhiSubspace::contains(const FpMatrix& x) const {
  const FpMatrix v = reduce(x);
  return std::all_of(v.begin(), v.end(), [](std::uint64_t a) { return a == 0; });
}

bool PhiSubspace::contains(const PhiSubspace& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [&](const FpMatrix& b) { return contains(b); });
}

bool PhiSubspace::contains_sl() const {
  for (unsigned i = 0; i < n_; ++i) {
    for (unsigned j = 0; j < n_; ++j) {
      if (i != j && !contains(fp_unit(n_, i, j))) return false;
    }
  }
  for (unsigned i = 0; i + 1 < n_; ++i) {
    FpMatrix h = fp_unit(n_, i, i);
    h[(i + 1) * n_ + i + 1] = p_ - 1;
    if (!contains(h)) return false;
  }
  return true;
}

GeneratedSubgroup::GeneratedSubgroup(std::vector<MatZq> generators)
    : gens_(std::move(generators)),
      mod_(gens_.empty() ? throw std::invalid_argument("need at least one generator")
                         : gens_.front().modulus()),
      n_(gens_.front().dim()) {
  for (const auto& g : gens_) {
    if (g.dim() != n_ || !(g.modulus() == mod_)) {
      throw std::invalid_argument("generators differ in dimension or modulus");
    }
    if (!is_invertible(g)) throw NonUnit("generator is not invertible");
  }
  if (mod_.value().fits_ulong_p() && mod_.value() < 65536) q_ = mod_.value().get_ui();
}

std::uint64_t GeneratedSubgroup::encode(const MatZq& x) const {
  if (q_ == 0) throw NotEnumerated("modulus too large for compact encoding");
  std::uint64_t code = 0;
  for (std::size_t k = x.entries().size(); k-- > 0;) code = code * q_ + x.entries()[k].get_ui();
  return code;
}

MatZq GeneratedSubgroup::decode(std::uint64_t code) const {
  std::vector<mpz_class> v(std::size_t(n_) * n_);
  for (auto& a : v) {
    a = static_cast<unsigned long>(code % q_);
    code /= q_;
  }
  return MatZq(n_, mod_, v);
}

void GeneratedSubgroup::enumerate(std::uint64_t cap) {
  if (enumerated_) return;
  if (q_ == 0) throw NotEnumerated("modulus too large for enumeration");
  const unsigned cells = n_ * n_;
  unsigned __int128 space = 1;
  for (unsigned k = 0; k < cells; ++k) {
    space *= q_;
    if (space > (static_cast<unsigned __int128>(1) << 64) - 1) {
      throw NotEnumerated("matrix encoding does not fit in 64 bits");
    }
  }
  use_bitmap_ = space <= (static_cast<unsigned __int128>(1) << 33);
  if (use_bitmap_) bitmap_.assign(static_cast<std::size_t>(space), false);

  auto to_small = [&](std::uint64_t code) {
    SmallMat m(cells);
    for (auto& a : m) {
      a = code % q_;
      code /= q_;
    }
    return m;
  };
  auto to_code = [&](const SmallMat& m) {
    std::uint64_t code = 0;
    for (std::size_t k = m.size(); k-- > 0;) code = code * q_ + m[k];
    return code;
  };
  auto insert = [&](std::uint64_t code) {
    if (use_bitmap_) {
      if (bitmap_[code]) return false;
      bitmap_[code] = true;
      return true;
    }
    return hashset_.insert(code).second;
  };

  std::vector<SmallMat> gs;
  for (const auto& g : gens_) gs.push_back(to_small(encode(g)));

  const std::uint64_t id = encode(MatZq::identity(n_, mod_));
  insert(id);
  order_list_.push_back(id);
  for (std::size_t head = 0; head < order_list_.size(); ++head) {
    const SmallMat x = to_small(order_list_[head]);
    for (const auto& g : gs) {
      const std::uint64_t c = to_code(small_mul(x, g, n_, q_));
      if (insert(c)) {
        order_list_.push_back(c);
        if (order_list_.size() > cap) {
          order_list_.clear();
          bitmap_.clear();
          hashset_.clear();
          throw EnumerationCapExceeded("subgroup has more than " + std::to_string(cap) + " elements");
        }
      }
    }
  }
  enumerated_ = true;
}

void GeneratedSubgroup::require_enumerated() const {
  if (!enumerated_) throw NotEnumerated("subgroup has not been enumerated");
}

std::size_t GeneratedSubgroup::order() const {
  require_enumerated();
  return order_list_.size();
}

bool GeneratedSubgroup::contains(const MatZq& x) const {
  if (x.dim() != n_ || !(x.modulus() == mod_)) return false;
  return contains_code(encode(x));
}

bool GeneratedSubgroup::contains_code(std::uint64_t code) const {
  require_enumerated();
  return use_bitmap_ ? bool(bitmap_[code]) : hashset_.count(code) != 0;
}

const std::vector<std::uint64_t>& GeneratedSubgroup::codes() const {
  require_enumerated();
  return order_list_;
}

std::vector<MatZq> GeneratedSubgroup::elements() const {
  require_enumerated();
  std::vector<MatZq> out;
  out.reserve(order_list_.size());
  for (auto c : order_list_) out.push_back(decode(c));
  return out;
}

PhiSubspace phi_subspace(const GeneratedSubgroup& g, unsigned i) {
  if (!g.enumerated()) throw NotEnumerated("phi_subspace needs an enumerated subgroup");
  if (i < 1 || i + 1 > g.level()) throw std::invalid_argument("phi index out of range");
  const std::uint64_t p = g.modulus().prime();
  const unsigned n = g.dim();
  const std::uint64_t q = g.modulus().value().get_ui();
  std::uint64_t pi = 1;
  for (unsigned k = 0; k < i; ++k) pi *= p;
  const std::uint64_t pi1 = pi * p;
  PhiSubspace phi(p, n, i);
  FpMatrix a(std::size_t(n) * n);
  for (std::uint64_t code : g.codes()) {
    bool in_kernel = true;
    for (unsigned k = 0; k < n * n; ++k) {
      std::uint64_t v = (code % q) % pi1;
      code /= q;
      if (k % (n + 1) == 0) v = (v + pi1 - 1) % pi1;
      if (v % pi != 0) {
        in_kernel = false;
        break;
      }
      a[k] = v / pi;
    }
    if (in_kernel) phi.add(a);
    if (phi.dimension() == std::size_t(n) * n) break;
  }
  return phi;
}

bool bracket_containment_check(const GeneratedSubgroup& g, unsigned i, unsigned j) {
  if (i + j + 1 > g.level()) throw std::invalid_argument("i + j + 1 exceeds the level");
  const PhiSubspace a = phi_subspace(g, i);
  const PhiSubspace b = i == j ? a : phi_subspace(g, j);
  const PhiSubspace c = phi_subspace(g, i + j);
  for (const auto& x : a.basis()) {
    for (const auto& y : b.basis()) {
      if (!c.contains(fp_bracket(x, y, g.dim(), g.modulus().prime()))) return false;
    }
  }
  return true;
}

std::vector<PhiSubspace> bracket_closure(const std::vector<FpMatrix>& s, unsigned n,
                                         std::uint64_t p, unsigned steps) {
  std::vector<PhiSubspace> chain;
  if (steps == 0) return chain;
  PhiSubspace b1(p, n, 1);
  for (const auto& x : s) b1.add(x);
  chain.push_back(std::move(b1));
  for (unsigned r = 2; r <= steps; ++r) {
    PhiSubspace next(p, n, r);
    for (const auto& x : chain.back().basis()) next.add(x);
    for (unsigned a = 1; a <= r / 2; ++a) {
      const unsigned b = r - a;
      for (const auto& x : chain[a - 1].basis()) {
        for (const auto& y : chain[b - 1].basis()) next.add(fp_bracket(x, y, n, p));
      }
    }
    chain.push_back(std::move(next));
  }
  return chain;
}

GenerationReport verify_prop45(unsigned n, std::uint64_t p, MuConvention convention) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  GenerationReport rep;
  rep.n = n;
  rep.p = p;
  rep.convention = convention;
  std::vector<FpMatrix> s;
  FpMatrix mu(std::size_t(n) * n, 0);
  if (convention == MuConvention::alternating) {
    for (unsigned i = 1; i <= n; ++i) mu[(i - 1) * n + i - 1] = (i % 2 == 0) ? 1 : 0;
  } else {
    mu[0] = 1;
  }
  s.push_back(mu);
  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned j = 1; j <= n; ++j) {
      if ((i + j) % 2 == 1) s.push_back(fp_unit(n, i - 1, j - 1));
    }
  }
  const auto chain = bracket_closure(s, n, p, 4);
  for (std::size_t r = 0; r < chain.size(); ++r) {
    rep.dims_per_step.push_back(chain[r].dimension());
    if (!rep.steps_to_sln && chain[r].contains_sl()) rep.steps_to_sln = static_cast<unsigned>(r + 1);
  }
  if (n > 2) {
    bool all = true;
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; j < n; ++j) {
        if (i != j && !chain[1].contains(fp_unit(n, i, j))) all = false;
      }
    }
    rep.all_lines_in_b2 = all;
  }
  rep.pass = rep.steps_to_sln.has_value() && *rep.steps_to_sln <= 4 &&
             rep.all_lines_in_b2.value_or(true);
  return rep;
}

bool contains_Ut(const GeneratedSubgroup& g, unsigned t, std::uint64_t cap) {
  if (!g.enumerated()) throw NotEnumerated("contains_Ut needs an enumerated subgroup");
  const unsigned e = g.level();
  if (t < 1 || t >= e) throw std::invalid_argument("t must satisfy 1 <= t < e");
  const unsigned n = g.dim();
  const std::uint64_t p = g.modulus().prime();
  const std::uint64_t q = g.modulus().value().get_ui();
  unsigned __int128 size = 1;
  for (unsigned k = 0; k < (e - t) * (n * n - 1); ++k) {
    size *= p;
    if (size > cap) throw EnumerationCapExceeded("U_t has more than " + std::to_string(cap) + " elements");
  }
  std::uint64_t pt = 1;
  for (unsigned k = 0; k < t; ++k) pt *= p;
  const std::uint64_t base = q / pt;  // p^(e-t)
  const unsigned cells = n * n;
  std::vector<std::uint64_t> digits(cells, 0);
  SmallMat x(cells);
  while (true) {
    for (unsigned k = 0; k < cells; ++k) x[k] = (digits[k] * pt + ((k % (n + 1)) == 0 ? 1 : 0)) % q;
    if (small_det(x, n, q) == 1) {
      std::uint64_t code = 0;
      for (std::size_t k = cells; k-- > 0;) code = code * q + x[k];
      if (!g.contains_code(code)) return false;
    }
    unsigned k = 0;
    while (k < cells && ++digits[k] == base) digits[k++] = 0;
    if (k == cells) break;
  }
  return true;
}

}  // namespace gll
