#include "gll/galmodel.hpp"

#include <stdexcept>
#include <string>

namespace gll {

Word Word::generator(unsigned g, int exp) {
  if (exp != 1 && exp != -1) throw std::invalid_argument("letter exponent must be +1 or -1");
  Word w;
  w.letters_.push_back({g, exp});
  return w;
}

void Word::push(Letter l) {
  if (l.exp != 1 && l.exp != -1) throw std::invalid_argument("letter exponent must be +1 or -1");
  if (!letters_.empty() && letters_.back().gen == l.gen && letters_.back().exp == -l.exp) {
    letters_.pop_back();
  } else {
    letters_.push_back(l);
  }
}

Word Word::inverse() const {
  Word w;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back({it->gen, -it->exp});
  return w;
}

Word operator*(const Word& a, const Word& b) {
  Word w = a;
  for (const auto& l : b.letters_) w.push(l);
  return w;
}

Word Word::random(Rng& rng, unsigned generators, std::size_t max_length) {
  Word w;
  const std::size_t len = rng.below(max_length + 1);
  for (std::size_t k = 0; k < len; ++k) {
    const unsigned g = static_cast<unsigned>(rng.below(generators));
    w.push({g, rng.coin() ? 1 : -1});
  }
  return w;
}

ModelLevels full_levels(const ParamProfile& profile) { return {profile.m, profile.M, profile.N}; }

SyntheticModel::SyntheticModel(ExponentTuple exponents, ModelLevels levels,
                               std::vector<mpz_class> chi_values, std::vector<GeneratorRole> roles)
    : exps_(std::move(exponents)),
      levels_(levels),
      chi_(std::move(chi_values)),
      roles_(std::move(roles)),
      mod_N_(exps_.prime(), levels.N == 0 ? 1 : levels.N),
      mod_M_(mod_N_.at_level(levels.M == 0 ? 1 : levels.M)),
      mod_Q_(mod_N_.at_level(levels.N > levels.M ? levels.N - levels.M : 1)) {
  if (levels.m < 1 || levels.m > levels.M || levels.N <= levels.M || levels.N > 2 * levels.M) {
    throw std::invalid_argument("model levels must satisfy 1 <= m <= M < N <= 2M");
  }
  if (chi_.size() != roles_.size()) throw std::invalid_argument("one role per generator required");
  for (auto& u : chi_) {
    u = mod_N_.reduce(u);
    const ModInt v(u, mod_N_);
    if (!v.is_unit()) throw NonUnit("chi value " + u.get_str() + " is not a unit");
    const MatZq d = character_matrix(exps_, v);
    rho_N_.push_back(d);
    rho_N_inv_.push_back(character_matrix(exps_, v.inverse()));
  }
}

std::vector<IndexPair> odd_pairs(unsigned n) {
  std::vector<IndexPair> out;
  for (auto ij : offdiagonal_pairs(n)) {
    if ((ij.first + ij.second) % 2 == 1) out.push_back(ij);
  }
  return out;
}

SyntheticModel build_standard_model(const ExponentTuple& exponents, ModelLevels levels,
                                    unsigned extra_generic, std::uint64_t seed) {
  const Modulus mod_N(exponents.prime(), levels.N);
  std::vector<mpz_class> chi;
  std::vector<GeneratorRole> roles;
  chi.push_back(primitive_root(mod_N).value());
  roles.push_back(GeneratorRole::generic);
  Rng rng = Rng(seed).stream("model-generators");
  for (unsigned k = 0; k < extra_generic; ++k) {
    mpz_class u;
    do {
      u = rng.below(mod_N.value());
    } while (!ModInt(u, mod_N).is_unit());
    chi.push_back(u);
    roles.push_back(GeneratorRole::generic);
  }
  for (std::size_t k = 0; k < odd_pairs(exponents.size()).size(); ++k) {
    chi.push_back(1);
    roles.push_back(GeneratorRole::reserved);
  }
  chi.push_back(1 + prime_power(exponents.prime(), levels.M));
  roles.push_back(GeneratorRole::mu_witness);
  return SyntheticModel(exponents, levels, std::move(chi), std::move(roles));
}

Cocycle zero_cocycle(const SyntheticModel& model) {
  Cocycle f;
  f.values.assign(model.generator_count(), MatZq(model.n(), model.mod_M()));
  return f;
}

Cocycle random_cocycle(const SyntheticModel& model, Rng& rng) {
  Cocycle f;
  for (unsigned g = 0; g < model.generator_count(); ++g) {
    std::vector<mpz_class> v(std::size_t(model.n()) * model.n());
    for (auto& a : v) a = rng.below(model.mod_M().value());
    f.values.emplace_back(model.n(), model.mod_M(), v);
  }
  return f;
}

Cocycle operator+(const Cocycle& a, const Cocycle& b) {
  if (a.values.size() != b.values.size()) throw std::invalid_argument("cocycles of different models");
  Cocycle r = a;
  for (std::size_t k = 0; k < r.values.size(); ++k) r.values[k] += b.values[k];
  return r;
}

namespace {

void check_cocycle(const SyntheticModel& model, const Cocycle& f) {
  if (f.values.size() != model.generator_count()) {
    throw std::invalid_argument("cocycle has the wrong number of values");
  }
  for (const auto& v : f.values) {
    if (!(v.modulus() == model.mod_M()) || v.dim() != model.n()) {
      throw std::invalid_argument("cocycle values must lie in M_n(Z/p^M)");
    }
  }
}

// D A D^{-1} for diagonal D, given D and D^{-1} at a level >= that of A.
MatZq conjugate_diag(const MatZq& d, const MatZq& d_inv, const MatZq& a) {
  MatZq r = a;
  const unsigned n = a.dim();
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      if (a(i, j) == 0) continue;
      r.set(i, j, a(i, j) * d(i, i) * d_inv(j, j));
    }
  }
  return r;
}

}  // namespace

MatZq eval_rep_M(const SyntheticModel& model, const Word& w) {
  return reduce(eval_rep(model, w), model.levels().M);
}

MatZq act(const SyntheticModel& model, const Word& w, const MatZq& a) {
  const MatZq d = eval_rep(model, w);
  const MatZq d_inv = eval_rep(model, w.inverse());
  return conjugate_diag(d, d_inv, a);
}

MatZq cocycle_value(const SyntheticModel& model, const Cocycle& f, const Word& w) {
  check_cocycle(model, f);
  MatZq total(model.n(), model.mod_M());
  MatZq d = MatZq::identity(model.n(), model.mod_N());
  MatZq d_inv = d;
  for (const auto& l : w.letters()) {
    if (l.gen >= model.generator_count()) throw NoSuchGenerator("generator index out of range");
    if (l.exp == 1) {
      total += conjugate_diag(d, d_inv, f.values[l.gen]);
      d = d * model.rho_N(l.gen);
      d_inv = model.rho_N_inverse(l.gen) * d_inv;
    } else {
      // F(g^{-1}) = -g^{-1}.F(g)
      const MatZq local = -conjugate_diag(model.rho_N_inverse(l.gen), model.rho_N(l.gen), f.values[l.gen]);
      total += conjugate_diag(d, d_inv, local);
      d = d * model.rho_N_inverse(l.gen);
      d_inv = model.rho_N(l.gen) * d_inv;
    }
  }
  return total;
}

MatZq eval_rep(const SyntheticModel& model, const Word& w, const Cocycle* twist) {
  MatZq d = MatZq::identity(model.n(), model.mod_N());
  for (const auto& l : w.letters()) {
    if (l.gen >= model.generator_count()) throw NoSuchGenerator("generator index out of range");
    d = d * (l.exp == 1 ? model.rho_N(l.gen) : model.rho_N_inverse(l.gen));
  }
  if (twist == nullptr) return d;
  const MatZq f = cocycle_value(model, *twist, w);
  const SmallExtension ext(model.levels().N, model.levels().M);
  return kernel_embed(reduce(f, ext.quotient_level()), ext) * d;
}

Cocycle coboundary(const MatZq& x, const SyntheticModel& model) {
  if (!(x.modulus() == model.mod_M()) || x.dim() != model.n()) {
    throw std::invalid_argument("coboundary needs x in M_n(Z/p^M)");
  }
  Cocycle z;
  for (unsigned g = 0; g < model.generator_count(); ++g) {
    z.values.push_back(x - conjugate_diag(model.rho_N(g), model.rho_N_inverse(g), x));
  }
  return z;
}

Cocycle build_standard_twist(const SyntheticModel& model) {
  const auto pairs = odd_pairs(model.n());
  Cocycle f = zero_cocycle(model);
  std::size_t next = 0;
  for (unsigned g = 0; g < model.generator_count() && next < pairs.size(); ++g) {
    if (model.roles()[g] != GeneratorRole::reserved) continue;
    if (model.mod_M().reduce(model.chi_values()[g]) != 1) continue;
    f.values[g] = MatZq::unit(model.n(), model.mod_M(), pairs[next].first, pairs[next].second);
    ++next;
  }
  if (next < pairs.size()) {
    throw ModelTooSmall("need " + std::to_string(pairs.size()) +
                        " reserved generators with chi = 1 mod p^M, found " + std::to_string(next));
  }
  return f;
}

unsigned reserved_generator(const SyntheticModel& model, IndexPair ij) {
  const auto pairs = odd_pairs(model.n());
  std::size_t want = pairs.size();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (pairs[k] == ij) want = k;
  }
  if (want == pairs.size()) throw NoSuchGenerator("pair is not an odd pair");
  std::size_t seen = 0;
  for (unsigned g = 0; g < model.generator_count(); ++g) {
    if (model.roles()[g] != GeneratorRole::reserved) continue;
    if (model.mod_M().reduce(model.chi_values()[g]) != 1) continue;
    if (seen++ == want) return g;
  }
  throw NoSuchGenerator("no reserved generator for the pair");
}

Word mu_witness(const SyntheticModel& model) {
  const mpz_class target = model.mod_N().reduce(1 + prime_power(model.prime(), model.levels().M));
  for (unsigned g = 0; g < model.generator_count(); ++g) {
    if (model.chi_values()[g] == target) return Word::generator(g);
  }
  throw NoSuchGenerator("no generator with chi = 1 + p^M");
}

bool ImageModule::contains(const MatZq& a) const { return module.contains(a.entries()); }

namespace {

std::vector<mpz_class> diag_key(const MatZq& d) {
  std::vector<mpz_class> k;
  for (unsigned i = 0; i < d.dim(); ++i) k.push_back(d(i, i));
  return k;
}

MatZq twisted_generator(const SyntheticModel& model, const Cocycle& twist, unsigned g, int exp) {
  return eval_rep(model, Word::generator(g, exp), &twist);
}

}  // namespace

ImageModule image_module(const SyntheticModel& model, const Cocycle& twist, std::uint64_t cap) {
  check_cocycle(model, twist);
  const SmallExtension ext(model.levels().N, model.levels().M);
  const unsigned r = model.generator_count();
  const unsigned M = model.levels().M;

  std::vector<MatZq> gen, gen_inv;
  for (unsigned g = 0; g < r; ++g) {
    gen.push_back(twisted_generator(model, twist, g, 1));
    gen_inv.push_back(twisted_generator(model, twist, g, -1));
  }

  ImageModule out{WitnessedModule(model.mod_quotient(), model.n() * model.n()), 0, 0, false, 0, {}};
  std::map<std::vector<mpz_class>, std::size_t> index;
  std::vector<MatZq> rep, rep_inv;
  const MatZq id = MatZq::identity(model.n(), model.mod_N());
  index.emplace(diag_key(reduce(id, M)), 0);
  rep.push_back(id);
  rep_inv.push_back(id);

  for (std::size_t head = 0; head < rep.size(); ++head) {
    for (unsigned g = 0; g < r; ++g) {
      const MatZq t = rep[head] * gen[g];
      auto key = diag_key(reduce(t, M));
      auto it = index.find(key);
      if (it == index.end()) {
        if (rep.size() >= cap) {
          throw ImageTooLarge("image of rho_M has more than " + std::to_string(cap) + " elements");
        }
        index.emplace(std::move(key), rep.size());
        rep.push_back(t);
        rep_inv.push_back(gen_inv[g] * rep_inv[head]);
        continue;
      }
      const MatZq k = t * rep_inv[it->second];
      ++out.schreier_count;
      const MatZq a = kernel_log(k, ext);
      if (!a.is_zero()) out.module.add(a.entries(), k);
    }
  }
  out.image_order = rep.size();
  for (const auto& [key, idx] : index) out.transversal_inverse.emplace(key, rep_inv[idx]);

  bool changed = true;
  bool first_pass = true;
  while (changed) {
    changed = false;
    const auto rows = out.module.rows();
    for (const auto& row : rows) {
      const MatZq x(model.n(), model.mod_quotient(), row.v);
      for (unsigned g = 0; g < r; ++g) {
        const AdjointElement y =
            galois_act(ModInt(model.chi_values()[g], model.mod_N()), AdjointElement(x, model.exponents()));
        if (out.module.contains(y.matrix().entries())) continue;
        out.module.add(y.matrix().entries(), gen[g] * row.payload * gen_inv[g]);
        ++out.closure_additions;
        changed = true;
      }
    }
    if (first_pass) out.galois_stable = !changed;
    first_pass = false;
  }
  return out;
}

PhiSubspace phi_N_of_model(const SyntheticModel& model, const ImageModule& image) {
  PhiSubspace phi(model.prime(), model.n(), model.levels().N - 1);
  const unsigned q = model.mod_quotient().exponent();
  const mpz_class scale = prime_power(model.prime(), q - 1);
  for (const auto& row : image.module.p_torsion_generators()) {
    FpMatrix b;
    for (const auto& a : row.v) {
      mpz_class t;
      mpz_divexact(t.get_mpz_t(), a.get_mpz_t(), scale.get_mpz_t());
      b.push_back(mpz_class(t % model.prime()).get_ui());
    }
    phi.add(b);
  }
  return phi;
}

bool verify_phi_witnesses(const SyntheticModel& model, const ImageModule& image,
                          const PhiSubspace& phi) {
  const SmallExtension ext(model.levels().N, model.levels().M);
  const unsigned top = model.levels().N - 1;
  const mpz_class scale = prime_power(model.prime(), model.mod_quotient().exponent() - 1);
  for (const auto& row : image.module.p_torsion_generators()) {
    if (kernel_log(row.payload, ext).entries() != row.v) return false;
    MatZq b(model.n(), model.mod_N().at_level(1));
    for (std::size_t k = 0; k < row.v.size(); ++k) {
      mpz_class t;
      mpz_divexact(t.get_mpz_t(), row.v[k].get_mpz_t(), scale.get_mpz_t());
      b.set(static_cast<unsigned>(k / model.n()), static_cast<unsigned>(k % model.n()), t);
    }
    try {
      if (!(log_level(row.payload, top) == b)) return false;
    } catch (const NotInKernel&) {
      return false;
    }
    if (!phi.contains(to_fp(b))) return false;
  }
  return true;
}

bool sampled_phi_check(const SyntheticModel& model, const Cocycle& twist, const ImageModule& image,
                       const PhiSubspace& phi, Rng& rng, std::size_t samples) {
  const SmallExtension ext(model.levels().N, model.levels().M);
  const mpz_class e = prime_power(model.prime(), model.mod_quotient().exponent() - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    const Word w = Word::random(rng, model.generator_count(), 24);
    const MatZq x = eval_rep(model, w, &twist);
    const auto it = image.transversal_inverse.find(diag_key(reduce(x, model.levels().M)));
    if (it == image.transversal_inverse.end()) return false;
    const MatZq k = x * it->second;
    if (!image.contains(kernel_log(k, ext))) return false;
    const MatZq top = power(k, e);
    try {
      if (!phi.contains(to_fp(log_level(top, model.levels().N - 1)))) return false;
    } catch (const NotInKernel&) {
      return false;
    }
  }
  return true;
}

ModelCertificate model_certificates(const SyntheticModel& model, const Cocycle& twist,
                                  const ImageModule& image) {
  ModelCertificate cert;
  const unsigned m = model.levels().m;
  const unsigned n = model.n();
  const unsigned bound = m * (n * n - n);
  if (m > model.mod_quotient().exponent() || !check_admissible(model.exponents(), m)) return cert;
  cert.applicable = true;
  const SmallExtension ext(model.levels().N, model.levels().M);
  const mpz_class pb = prime_power(model.prime(), bound);

  cert.lines_ok = true;
  for (auto ij : odd_pairs(n)) {
    const unsigned g = reserved_generator(model, ij);
    const MatZq x = kernel_log(eval_rep(model, Word::generator(g), &twist), ext);
    if (!image.contains(x)) {
      cert.lines_ok = false;
      continue;
    }
    const LineCertificate lc = annihilate_to_line(AdjointElement(x, model.exponents()), ij, m);
    cert.max_line_valuation = std::max(cert.max_line_valuation, lc.scalar_valuation);
    const MatZq target = MatZq::unit(n, model.mod_quotient(), ij.first, ij.second).scaled(pb);
    if (!image.contains(lc.result.matrix()) || lc.scalar_valuation > bound || !image.contains(target)) {
      cert.lines_ok = false;
    }
  }

  const MatZq y = kernel_log(eval_rep(model, mu_witness(model), &twist), ext);
  const TorusCertificate tc = annihilate_to_torus(AdjointElement(y, model.exponents()), m);
  cert.torus_valuation = tc.scalar_valuation;
  cert.torus_ok = image.contains(y) && image.contains(tc.result.matrix()) && tc.scalar_valuation <= bound;
  return cert;
}

GeneratedSubgroup twisted_image_group(const SyntheticModel& model, const Cocycle& twist) {
  std::vector<MatZq> gens;
  for (unsigned g = 0; g < model.generator_count(); ++g) gens.push_back(twisted_generator(model, twist, g, 1));
  return GeneratedSubgroup(std::move(gens));
}

}  // namespace gll
