#include "gll/adjoint.hpp"

#include <stdexcept>
#include <string>

namespace gll {

std::vector<IndexPair> offdiagonal_pairs(unsigned n) {
  std::vector<IndexPair> out;
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      if (i != j) out.emplace_back(i, j);
    }
  }
  return out;
}

AdjointElement::AdjointElement(MatZq matrix, ExponentTuple context)
    : matrix_(std::move(matrix)), context_(std::move(context)) {
  if (context_.size() != matrix_.dim()) {
    throw ContextMismatch("exponent tuple length differs from matrix dimension");
  }
  if (context_.prime() != matrix_.modulus().prime()) {
    throw ContextMismatch("exponent tuple prime differs from matrix modulus");
  }
}

AdjointElement AdjointElement::zero(const Modulus& mod, const ExponentTuple& context) {
  return AdjointElement(MatZq(context.size(), mod), context);
}

AdjointElement AdjointElement::unit(const Modulus& mod, const ExponentTuple& context, IndexPair ij) {
  return AdjointElement(MatZq::unit(context.size(), mod, ij.first, ij.second), context);
}

void AdjointElement::check_context(const AdjointElement& o) const {
  if (!(context_ == o.context_) || !(modulus() == o.modulus())) {
    throw ContextMismatch("adjoint elements live in different modules");
  }
}

AdjointElement& AdjointElement::operator+=(const AdjointElement& o) {
  check_context(o);
  matrix_ += o.matrix_;
  return *this;
}

AdjointElement AdjointElement::scaled(const mpz_class& c) const {
  return AdjointElement(matrix_.scaled(c), context_);
}

Decomposition decompose(const AdjointElement& x) {
  Decomposition d;
  const MatZq& a = x.matrix();
  for (unsigned i = 0; i < a.dim(); ++i) d.torus.push_back(a(i, i));
  for (auto [i, j] : offdiagonal_pairs(a.dim())) d.lines.push_back(a(i, j));
  return d;
}

AdjointElement reassemble(const Decomposition& d, const Modulus& mod, const ExponentTuple& ctx) {
  const unsigned n = ctx.size();
  if (d.torus.size() != n || d.lines.size() != std::size_t(n) * (n - 1)) {
    throw std::invalid_argument("decomposition has the wrong shape");
  }
  MatZq a(n, mod);
  for (unsigned i = 0; i < n; ++i) a.set(i, i, d.torus[i]);
  const auto pairs = offdiagonal_pairs(n);
  for (std::size_t k = 0; k < pairs.size(); ++k) a.set(pairs[k].first, pairs[k].second, d.lines[k]);
  return AdjointElement(std::move(a), ctx);
}

ModInt gamma(const ExponentTuple& ctx, IndexPair kl, const ModInt& u) {
  if (kl.first == kl.second) return ModInt(1, u.modulus());
  return mod_pow(u, ctx.difference(kl.first, kl.second));
}

MatZq character_matrix(const ExponentTuple& ctx, const ModInt& u) {
  std::vector<mpz_class> diag;
  for (const auto& k : ctx.ks()) diag.push_back(mod_pow(u, k).value());
  return MatZq::diagonal(diag, u.modulus());
}

AdjointElement galois_act(const ModInt& u, const AdjointElement& x) {
  if (!u.is_unit()) throw NonUnit("Galois action needs a unit chi value");
  const ModInt v = u.modulus() == x.modulus() ? u : ModInt(u.value(), x.modulus());
  MatZq out = x.matrix();
  for (auto ij : offdiagonal_pairs(x.dim())) {
    const mpz_class& a = out(ij.first, ij.second);
    if (a == 0) continue;
    out.set(ij.first, ij.second, a * gamma(x.context(), ij, v).value());
  }
  return AdjointElement(std::move(out), x.context());
}

AdjointElement bracket(const AdjointElement& x, const AdjointElement& y) {
  if (!(x.context() == y.context()) || !(x.modulus() == y.modulus())) {
    throw ContextMismatch("bracket of elements from different modules");
  }
  return AdjointElement(commutator_bracket(x.matrix(), y.matrix()), x.context());
}

MatZq mu_matrix(unsigned n, const Modulus& mod) {
  std::vector<mpz_class> diag;
  for (unsigned i = 1; i <= n; ++i) diag.push_back(i % 2 == 0 ? 1 : 0);
  return MatZq::diagonal(diag, mod);
}

ModInt op_factor(const GroupRingOp& op, const ExponentTuple& ctx, IndexPair kl) {
  const ModInt g_kl = gamma(ctx, kl, op.witness);
  if (op.kind == OpKind::torus_kill) return ModInt(1, op.witness.modulus()) - g_kl;
  return gamma(ctx, op.line, op.witness) - g_kl;
}

AdjointElement apply(const GroupRingOp& op, const AdjointElement& x) {
  const ModInt u = op.witness.modulus() == x.modulus() ? op.witness
                                                       : ModInt(op.witness.value(), x.modulus());
  const GroupRingOp local{op.kind, op.line, u};
  MatZq out(x.dim(), x.modulus());
  for (unsigned k = 0; k < x.dim(); ++k) {
    for (unsigned l = 0; l < x.dim(); ++l) {
      const mpz_class& a = x.matrix()(k, l);
      if (a == 0) continue;
      out.set(k, l, a * op_factor(local, x.context(), {k, l}).value());
    }
  }
  return AdjointElement(std::move(out), x.context());
}

GroupRingElement GroupRingElement::from_op(const GroupRingOp& op, const ExponentTuple& ctx) {
  GroupRingElement r(op.witness.modulus());
  const mpz_class one = 1;
  if (op.kind == OpKind::torus_kill) {
    r.add_term(one, 1);
  } else {
    r.add_term(one, gamma(ctx, op.line, op.witness).value());
  }
  r.add_term(op.witness.value(), -1);
  return r;
}

void GroupRingElement::add_term(const mpz_class& chi_value, const mpz_class& coeff) {
  const mpz_class key = mod_.reduce(chi_value);
  mpz_class& c = terms_[key];
  c = mod_.reduce(c + coeff);
  if (c == 0) terms_.erase(key);
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  if (!(a.mod_ == b.mod_)) throw std::invalid_argument("group ring elements over different rings");
  GroupRingElement r(a.mod_);
  for (const auto& [ga, ca] : a.terms_) {
    for (const auto& [gb, cb] : b.terms_) r.add_term(ga * gb, ca * cb);
  }
  return r;
}

AdjointElement GroupRingElement::act_by_conjugation(const AdjointElement& x) const {
  MatZq total(x.dim(), x.modulus());
  for (const auto& [g, c] : terms_) {
    const ModInt u(g, x.modulus());
    const MatZq d = character_matrix(x.context(), u);
    total += (d * x.matrix() * inverse(d)).scaled(c);
  }
  return AdjointElement(std::move(total), x.context());
}

ModInt find_witness(std::optional<IndexPair> target, IndexPair other, const ExponentTuple& ctx,
                    const Modulus& mod, unsigned m) {
  if (m < 1 || m > mod.exponent()) {
    throw std::invalid_argument("witness level must lie in [1, M]");
  }
  const ModInt g = primitive_root(mod);
  const mpz_class d_other = ctx.difference(other.first, other.second);
  const mpz_class d_target = target ? ctx.difference(target->first, target->second) : mpz_class(0);
  const mpz_class limit = character_period(mod.prime(), m);
  ModInt u = g;
  for (mpz_class j = 1; j <= limit; ++j) {
    const ModInt diff = mod_pow(u, d_other) - mod_pow(u, d_target);
    if (valuation(diff) < m) return u;
    u *= g;
  }
  throw NoWitness("characters of the two lines agree at level " + std::to_string(m));
}

LineCertificate annihilate_to_line(const AdjointElement& x, IndexPair target, unsigned m) {
  if (target.first == target.second) throw std::invalid_argument("target must be off-diagonal");
  if (!check_admissible(x.context(), m)) {
    throw NotAdmissible("exponent tuple is not " + std::to_string(m) + "-admissible");
  }
  const ExponentTuple& ctx = x.context();
  std::vector<GroupRingOp> ops;
  ops.push_back({OpKind::torus_kill, {0, 0}, find_witness(std::nullopt, target, ctx, x.modulus(), m)});
  for (auto st : offdiagonal_pairs(x.dim())) {
    if (st == target) continue;
    ops.push_back({OpKind::line_kill, st, find_witness(target, st, ctx, x.modulus(), m)});
  }
  AdjointElement z = x;
  for (const auto& op : ops) z = apply(op, z);
  for (unsigned k = 0; k < z.dim(); ++k) {
    for (unsigned l = 0; l < z.dim(); ++l) {
      if (IndexPair{k, l} != target && z.matrix()(k, l) != 0) {
        throw std::logic_error("annihilator left a component outside the target line");
      }
    }
  }
  ModInt c = z.coefficient(target);
  const unsigned v = valuation(c);
  return LineCertificate{target, std::move(c), v, std::move(ops), std::move(z)};
}

TorusCertificate annihilate_to_torus(const AdjointElement& x, unsigned m) {
  if (!check_admissible(x.context(), m)) {
    throw NotAdmissible("exponent tuple is not " + std::to_string(m) + "-admissible");
  }
  const ExponentTuple& ctx = x.context();
  std::vector<GroupRingOp> ops;
  ModInt scalar(1, x.modulus());
  for (auto st : offdiagonal_pairs(x.dim())) {
    GroupRingOp op{OpKind::line_kill, st, find_witness(std::nullopt, st, ctx, x.modulus(), m)};
    scalar *= op_factor(op, ctx, {0, 0});
    ops.push_back(std::move(op));
  }
  AdjointElement z = x;
  for (const auto& op : ops) z = apply(op, z);
  if (!z.matrix().is_diagonal()) throw std::logic_error("torus annihilator left an off-diagonal term");
  const unsigned v = valuation(scalar);
  return TorusCertificate{std::move(scalar), v, std::move(ops), std::move(z)};
}

}  // namespace gll
