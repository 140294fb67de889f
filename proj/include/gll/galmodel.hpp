#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gll/adjoint.hpp"
#include "gll/generation.hpp"
#include "gll/matgroup.hpp"
#include "gll/random.hpp"
#include "gll/spectrum.hpp"
#include "gll/submodule.hpp"

namespace gll {

/// Element of a free group: letters (generator, +1/-1), freely reduced.
class Word {
 public:
  struct Letter {
    unsigned gen;
    int exp;
    friend bool operator==(const Letter&, const Letter&) = default;
  };

  Word() = default;
  static Word generator(unsigned g, int exp = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t length() const { return letters_.size(); }

  /// Appends one letter, cancelling against the tail.
  void push(Letter l);
  Word inverse() const;
  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;

  static Word random(Rng& rng, unsigned generators, std::size_t max_length);

 private:
  std::vector<Letter> letters_;
};

enum class GeneratorRole { generic, reserved, mu_witness };

/// Levels (m, M, N) with 1 <= m <= M < N <= 2M.
struct ModelLevels {
  unsigned m = 0;
  unsigned M = 0;
  unsigned N = 0;
};

ModelLevels full_levels(const ParamProfile& profile);

/// A free group whose generators carry assigned cyclotomic-character values
/// mod p^N, with the induced diagonal representation.
class SyntheticModel {
 public:
  SyntheticModel(ExponentTuple exponents, ModelLevels levels, std::vector<mpz_class> chi_values,
                 std::vector<GeneratorRole> roles);

  std::uint64_t prime() const { return exps_.prime(); }
  unsigned n() const { return exps_.size(); }
  const ExponentTuple& exponents() const { return exps_; }
  const ModelLevels& levels() const { return levels_; }
  const std::vector<mpz_class>& chi_values() const { return chi_; }
  const std::vector<GeneratorRole>& roles() const { return roles_; }
  unsigned generator_count() const { return static_cast<unsigned>(chi_.size()); }

  const Modulus& mod_N() const { return mod_N_; }
  const Modulus& mod_M() const { return mod_M_; }
  /// Z/p^(N-M), the coefficient ring of the image module.
  const Modulus& mod_quotient() const { return mod_Q_; }

  /// rho_N(g_i) = diag(u_i^(k_1), ..., u_i^(k_n)).
  const MatZq& rho_N(unsigned g) const { return rho_N_[g]; }
  const MatZq& rho_N_inverse(unsigned g) const { return rho_N_inv_[g]; }
  MatZq rho_M(unsigned g) const { return reduce(rho_N_[g], levels_.M); }

 private:
  ExponentTuple exps_;
  ModelLevels levels_;
  std::vector<mpz_class> chi_;
  std::vector<GeneratorRole> roles_;
  Modulus mod_N_;
  Modulus mod_M_;
  Modulus mod_Q_;
  std::vector<MatZq> rho_N_;
  std::vector<MatZq> rho_N_inv_;
};

/// Generic generators (the primitive root mod p^N plus `extra_generic` random
/// units), one reserved generator with chi = 1 per pair (i, j) with i + j odd
/// (1-based), and one mu-witness with chi = 1 + p^M.
SyntheticModel build_standard_model(const ExponentTuple& exponents, ModelLevels levels,
                                    unsigned extra_generic = 0, std::uint64_t seed = 0);

/// Pairs (i, j), 0-based, with (i+1) + (j+1) odd, in row-major order.
std::vector<IndexPair> odd_pairs(unsigned n);

/// One value in M_n(Z/p^M) per generator; extended to words by
/// F(gh) = F(g) + g.F(h).
struct Cocycle {
  std::vector<MatZq> values;
};

Cocycle zero_cocycle(const SyntheticModel& model);
Cocycle random_cocycle(const SyntheticModel& model, Rng& rng);
Cocycle operator+(const Cocycle& a, const Cocycle& b);

/// g.A = rho_M(g) A rho_M(g)^{-1} for a word g.
MatZq act(const SyntheticModel& model, const Word& w, const MatZq& a);

/// F(w) mod p^M.
MatZq cocycle_value(const SyntheticModel& model, const Cocycle& f, const Word& w);

/// rho_N(w), or (I + p^M F(w)) rho_N(w) when a twist is given.
MatZq eval_rep(const SyntheticModel& model, const Word& w, const Cocycle* twist = nullptr);

/// rho_M(w).
MatZq eval_rep_M(const SyntheticModel& model, const Word& w);

/// h -> x - h.x on generators.
Cocycle coboundary(const MatZq& x, const SyntheticModel& model);

/// f = sum of f_{i,j} over pairs with i + j odd: the k-th reserved generator
/// carries e_{i,j} for the k-th odd pair, every other generator carries 0.
/// Throws ModelTooSmall.
Cocycle build_standard_twist(const SyntheticModel& model);

/// Index of the reserved generator carrying e_{i,j}. Throws NoSuchGenerator.
unsigned reserved_generator(const SyntheticModel& model, IndexPair ij);

/// The generator with chi = 1 + p^M. Throws NoSuchGenerator.
Word mu_witness(const SyntheticModel& model);

/// Submodule payload: the kernel element of the twisted image whose
/// kernel_log is the row.
struct KernelWitness {
  using Payload = MatZq;
  static MatZq combine(const MatZq& a, const MatZq& b, const mpz_class& c) { return a * power(b, c); }
  static MatZq scale(const MatZq& a, const mpz_class& c) { return power(a, c); }
};

using WitnessedModule = BasicSubmodule<KernelWitness>;

/// Default cap on |im rho_M|.
inline constexpr std::uint64_t image_default_cap = 1000000;

struct ImageModule {
  WitnessedModule module;        ///< over Z/p^(N-M), vectors are row-major matrices
  std::size_t image_order = 0;   ///< |im rho_M|
  std::size_t schreier_count = 0;
  bool galois_stable = false;    ///< the Galois closure added nothing
  std::size_t closure_additions = 0;
  /// Coset representatives T of im rho_M: rho'(T)^{-1} at level N, keyed by
  /// the diagonal of rho_M(T).
  std::map<std::vector<mpz_class>, MatZq> transversal_inverse;

  bool contains(const MatZq& a) const;
};

/// Coset enumeration over im rho_M, kernel_log of the Schreier generators,
/// additive span, then closure under the Galois action of every generator.
/// Throws ImageTooLarge.
ImageModule image_module(const SyntheticModel& model, const Cocycle& twist,
                         std::uint64_t cap = image_default_cap);

/// {B over F_p : p^(N-M-1) B in M}, recorded at filtration index N-1 (the
/// level at which I + p^(N-1) B is attained).
PhiSubspace phi_N_of_model(const SyntheticModel& model, const ImageModule& image);

/// For each p-torsion generator of M, its witness W is attained by the twisted
/// representation and satisfies W = I + p^(N-1) B mod p^N with B in Phi.
bool verify_phi_witnesses(const SyntheticModel& model, const ImageModule& image,
                          const PhiSubspace& phi);

/// Random words w: K = rho'(w) rho'(T)^{-1} for the coset representative T
/// of w must have kernel_log in M, and log_(N-1) of K^(p^(N-M-1)) in Phi.
bool sampled_phi_check(const SyntheticModel& model, const Cocycle& twist, const ImageModule& image,
                       const PhiSubspace& phi, Rng& rng, std::size_t samples);

struct ModelCertificate {
  bool applicable = false;        ///< exponents are m-admissible
  bool lines_ok = false;          ///< p^(m(n^2-n)) e_{i,j} in M for every odd pair
  bool torus_ok = false;          ///< scalar * log(mu-witness) in M, scalar valuation bounded
  unsigned max_line_valuation = 0;
  unsigned torus_valuation = 0;
};

/// Runs the line and torus annihilators inside the image module, starting
/// from the logs of the reserved generators and of the mu-witness.
ModelCertificate model_certificates(const SyntheticModel& model, const Cocycle& twist,
                                  const ImageModule& image);

/// The subgroup of GL_n(Z/p^N) generated by the twisted generator images.
GeneratedSubgroup twisted_image_group(const SyntheticModel& model, const Cocycle& twist);

}  // namespace gll
