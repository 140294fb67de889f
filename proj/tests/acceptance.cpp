// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "gll/adjoint.hpp"
#include "gll/galmodel.hpp"
#include "gll/generation.hpp"
#include "gll/spectrum.hpp"
#include "support/oracles.hpp"
#include "support/sample.hpp"

using namespace gll;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<std::uint64_t> odd_primes(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = std::max<std::uint64_t>(lo, 3); p <= hi; ++p) {
    if (oracle::trial_prime(p)) out.push_back(p);
  }
  return out;
}

Outcome profile_formulas() {
  Outcome o;
  auto same = [](const ParamProfile& a, unsigned m, unsigned M, unsigned N, unsigned t) {
    return a.m == m && a.M == M && a.N == N && a.t == t;
  };
  o.pass = same(compute_profile(7, 2), 3, 7, 14, 56) && same(compute_profile(7, 3), 4, 25, 50, 200);
  std::size_t count = 0;
  for (auto p : odd_primes(3, 97)) {
    for (unsigned n = 2; n <= 8; ++n) {
      const ParamProfile pr = compute_profile(p, n);
      o.pass = o.pass && pr.t == 8 * pr.M && pr.N == 2 * pr.M && pr.M == pr.m * (n * n - n) + 1;
      ++count;
    }
  }
  o.detail = std::to_string(count) + " profiles";
  return o;
}

Outcome canonical_admissible() {
  Outcome o;
  std::size_t count = 0;
  for (auto p : odd_primes(7, 97)) {
    for (unsigned n = 2; n <= 8; ++n) {
      const unsigned m = compute_profile(p, n).m;
      for (long k = 3; k <= static_cast<long>((p - 1) / 2); k += 2) {
        if (!check_admissible(canonical_exponents(p, n, k), m)) {
          o.pass = false;
          o.detail = "fails at p=" + std::to_string(p) + " n=" + std::to_string(n) + " k=" + std::to_string(k);
          return o;
        }
        ++count;
      }
    }
  }
  o.detail = std::to_string(count) + " tuples";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  Rng rng(3);
  const auto primes = odd_primes(3, 31);
  std::size_t count = 0, admissible = 0;
  while (count < 1200) {
    const std::uint64_t p = primes[rng.below(primes.size())];
    unsigned max_m = 0;
    for (std::uint64_t s = p; s <= 100000; s *= p) ++max_m;
    const unsigned m = 1 + static_cast<unsigned>(rng.below(std::uint64_t(max_m)));
    const unsigned n = 2 + static_cast<unsigned>(rng.below(std::uint64_t(4)));
    const mpz_class period = character_period(p, m);
    std::vector<mpz_class> ks;
    for (unsigned i = 0; i < n; ++i) {
      // Half the draws reuse an earlier residue or difference to hit the boundary.
      if (i >= 1 && rng.coin()) {
        const mpz_class base = ks[rng.below(std::uint64_t(i))];
        ks.push_back(base + period * mpz_class(static_cast<unsigned long>(1 + rng.below(std::uint64_t(3)))) +
                     (rng.coin() ? mpz_class(0) : mpz_class(static_cast<unsigned long>(rng.below(std::uint64_t(3))))));
      } else {
        ks.push_back(1 + rng.below(mpz_class(period * 4)));
      }
    }
    const ExponentTuple t(p, ks, 3);
    const bool a = check_admissible(t, m);
    if (a != admissibility_oracle(t, m)) {
      o.pass = false;
      o.detail = "disagreement at p=" + std::to_string(p) + " m=" + std::to_string(m);
      return o;
    }
    admissible += a;
    ++count;
  }
  o.detail = std::to_string(count) + " tuples, " + std::to_string(admissible) + " admissible";
  o.pass = admissible > 0 && admissible < count;
  return o;
}

Outcome bernoulli_engine() {
  Outcome o;
  std::size_t count = 0;
  for (auto p : odd_primes(5, 500)) {
    if (bernoulli_mod(p) != oracle::power_sum_bernoulli(p)) {
      o.pass = false;
      o.detail = "mismatch at p=" + std::to_string(p);
      return o;
    }
    ++count;
  }
  const auto b691 = bernoulli_mod(691);
  o.pass = b691 == oracle::power_sum_bernoulli(691) && b691[12] == 0;
  const auto r37 = scan_assumption_k(37);
  o.pass = o.pass && std::find(r37.irregular_indices.begin(), r37.irregular_indices.end(), 32u) !=
                         r37.irregular_indices.end();
  for (std::uint64_t p : {7, 11, 13}) o.pass = o.pass && scan_assumption_k(p).irregular_indices.empty();
  o.detail = std::to_string(count + 1) + " primes";
  return o;
}

Outcome kernel_homomorphisms() {
  Outcome o;
  std::size_t count = 0;
  // (p, n, M, N) = (3, 2, 1, 2): all 81 x 81 pairs.
  const SmallExtension e12(2, 1);
  const Modulus f3(3, 1);
  std::vector<MatZq> all;
  for (unsigned code = 0; code < 81; ++code) {
    std::vector<mpz_class> v;
    for (unsigned c = code, i = 0; i < 4; ++i, c /= 3) v.emplace_back(c % 3);
    all.emplace_back(2, f3, v);
  }
  for (const auto& a : all) {
    for (const auto& b : all) {
      o.pass = o.pass && kernel_embed(a, e12) * kernel_embed(b, e12) == kernel_embed(a + b, e12) &&
               exp_level(a, 1) * exp_level(b, 1) == exp_level(a + b, 1);
      ++count;
    }
    o.pass = o.pass && kernel_log(kernel_embed(a, e12), e12) == a;
  }
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t p = std::vector<std::uint64_t>{3, 5, 7, 11, 13}[rng.below(5)];
    const unsigned n = 2 + static_cast<unsigned>(rng.below(std::uint64_t(3)));
    const unsigned M = 2 + static_cast<unsigned>(rng.below(std::uint64_t(10)));
    const unsigned N = M + 1 + static_cast<unsigned>(rng.below(std::uint64_t(M)));
    const SmallExtension ext(N, M);
    const Modulus q(p, N - M);
    const MatZq a = sample::matrix(rng, n, q), b = sample::matrix(rng, n, q);
    o.pass = o.pass && kernel_embed(a, ext) * kernel_embed(b, ext) == kernel_embed(a + b, ext) &&
             kernel_log(kernel_embed(a, ext), ext) == a;
    const Modulus f(p, 1);
    const MatZq x = sample::matrix(rng, n, f), y = sample::matrix(rng, n, f);
    o.pass = o.pass && exp_level(x, M) * exp_level(y, M) == exp_level(x + y, M);
    ++count;
  }
  for (std::uint64_t p : {3, 5, 7, 11}) {
    const SmallExtension ext(4, 2);
    const Modulus mod(p, 4);
    const mpz_class p2 = prime_power(p, 2), p3 = prime_power(p, 3);
    const MatZq x(2, mod, {1, p2 + p3, -p2, 1});
    const MatZq a = kernel_log(x, ext);
    o.pass = o.pass && a == MatZq(2, Modulus(p, 2), {0, 1 + mpz_class(static_cast<unsigned long>(p)), -1, 0}) &&
             kernel_embed(a, ext) == x && kernel_embed(a + a, ext) == x * x;
  }
  o.detail = std::to_string(count) + " cases plus the worked example";
  return o;
}

Outcome line_certificates() {
  Outcome o;
  Rng rng(6);
  struct Case {
    ExponentTuple ctx;
    unsigned m, M;
  };
  std::vector<Case> cases;
  for (unsigned n : {2u, 3u}) {
    for (std::uint64_t p : {5, 7, 11}) {
      const ParamProfile pr = compute_profile(p, n);
      std::vector<long> anchors;
      if (p == 5) {
        anchors.push_back(1);
      } else {
        for (long k = 3; k <= static_cast<long>((p - 1) / 2); k += 2) anchors.push_back(k);
      }
      for (long k : anchors) {
        const ExponentTuple t = p == 5 ? formula_exponents(p, n, k) : canonical_exponents(p, n, k);
        if (!check_admissible(t, pr.m)) {
          o.pass = false;
          o.detail = "instance tuple not admissible";
          return o;
        }
        cases.push_back({t, pr.m, pr.M});
      }
    }
  }
  std::size_t count = 0;
  unsigned worst = 0;
  for (int i = 0; i < 1200; ++i) {
    const Case& c = cases[rng.below(cases.size())];
    const unsigned n = c.ctx.size();
    const Modulus mod(c.ctx.prime(), c.M);
    MatZq x = sample::matrix(rng, n, mod);
    const auto pairs = offdiagonal_pairs(n);
    const IndexPair target = pairs[rng.below(pairs.size())];
    mpz_class u;
    do {
      u = rng.below(mod.value());
    } while (u % static_cast<unsigned long>(mod.prime()) == 0);
    x.set(target.first, target.second, u);
    const LineCertificate cert = annihilate_to_line(AdjointElement(x, c.ctx), target, c.m);
    const bool pure = cert.result == AdjointElement::unit(mod, c.ctx, target).scaled(cert.scalar.value());
    const bool bounded = cert.scalar_valuation <= c.m * (n * n - n);
    worst = std::max(worst, cert.scalar_valuation);
    o.pass = o.pass && pure && bounded;
    ++count;
  }
  o.detail = std::to_string(count) + " instances, max v_p(c) = " + std::to_string(worst);
  return o;
}

Outcome cocycle_laws() {
  Outcome o;
  Rng rng(7);
  std::vector<SyntheticModel> models;
  for (std::uint64_t p : {3, 5, 7}) {
    for (unsigned n : {2u, 3u}) models.push_back(build_standard_model(formula_exponents(p, n, 1), {1, 2, 4}, 1, p));
  }
  models.push_back(build_standard_model(canonical_exponents(7, 2, 3), full_levels(compute_profile(7, 2)), 1, 7));
  std::size_t count = 0;
  for (const auto& model : models) {
    const unsigned gens = model.generator_count();
    const unsigned M = model.levels().M;
    const SmallExtension ext(model.levels().N, M);
    for (int s = 0; s < 500; ++s) {
      const Cocycle f = random_cocycle(model, rng);
      const MatZq x = sample::matrix(rng, model.n(), model.mod_M());
      const Cocycle g = f + coboundary(x, model);
      const MatZq c = kernel_embed(reduce(x, ext.quotient_level()), ext);
      const Word a = Word::random(rng, gens, 10), b = Word::random(rng, gens, 10);
      const bool mult = eval_rep(model, a * b, &f) == eval_rep(model, a, &f) * eval_rep(model, b, &f);
      const bool cocycle =
          cocycle_value(model, f, a * b) == cocycle_value(model, f, a) + act(model, a, cocycle_value(model, f, b));
      const bool equivalent = eval_rep(model, a, &g) == c * eval_rep(model, a, &f) * inverse(c);
      const bool lifts = reduce(eval_rep(model, a, &f), M) == eval_rep_M(model, a);
      o.pass = o.pass && mult && cocycle && equivalent && lifts;
      ++count;
    }
  }
  o.detail = std::to_string(count) + " samples over " + std::to_string(models.size()) + " models";
  return o;
}

Outcome synthetic_models() {
  Outcome o;
  std::ostringstream detail;
  for (std::uint64_t p : {3, 5, 7}) {
    for (unsigned n : {2u, 3u}) {
      const SyntheticModel model = build_standard_model(formula_exponents(p, n, 1), {1, 2, 4});
      const Cocycle twist = build_standard_twist(model);
      const ImageModule im = image_module(model, twist);
      const PhiSubspace phi = phi_N_of_model(model, im);

      // iota: B -> p^(M-1) B lands in M exactly for B in Phi.
      bool iota = true;
      const mpz_class pm1 = prime_power(p, model.levels().M - 1);
      for (const auto& b : phi.basis()) {
        std::vector<mpz_class> v;
        for (auto a : b) v.push_back(pm1 * static_cast<unsigned long>(a));
        iota = iota && im.module.contains(v);
      }
      for (const auto& r : im.module.p_torsion_generators()) {
        FpMatrix b;
        for (const auto& a : r.v) b.push_back(mpz_class(a / pm1 % static_cast<unsigned long>(p)).get_ui());
        iota = iota && phi.contains(b);
      }

      // Phi from the group itself: attained witnesses, random samples, and full
      // enumeration when the ambient space fits.
      Rng rng(p * 100 + n);
      bool group = verify_phi_witnesses(model, im, phi) && sampled_phi_check(model, twist, im, phi, rng, 200);
      std::string how = "sampled";
      const std::uint64_t q = prime_power(p, 4).get_ui();
      if (n == 2 || q <= 81) {
        GeneratedSubgroup g = twisted_image_group(model, twist);
        g.enumerate();
        group = group && phi_subspace(g, model.levels().N - 1) == phi;
        how = "enumerated " + std::to_string(g.order());
      }
      bool lines = phi.contains(to_fp(mu_matrix(n, Modulus(p, 1))));
      for (auto ij : odd_pairs(n)) lines = lines && phi.contains(fp_unit(n, ij.first, ij.second));
      const bool ok = im.galois_stable && iota && group && lines;
      o.pass = o.pass && ok;
      detail << "p" << p << "n" << n << (ok ? "" : " FAILED") << " (" << how << ") ";
    }
  }
  o.detail = detail.str();
  return o;
}

Outcome generation_criterion() {
  Outcome o;
  std::size_t count = 0;
  unsigned worst = 0;
  for (unsigned n = 2; n <= 8; ++n) {
    for (std::uint64_t p : {5, 7, 11, 13}) {
      std::vector<MuConvention> conventions{MuConvention::alternating};
      if (n == 2) conventions.push_back(MuConvention::first_entry);
      for (auto c : conventions) {
        const GenerationReport r = verify_prop45(n, p, c);
        o.pass = o.pass && r.pass && r.steps_to_sln && *r.steps_to_sln <= 4;
        if (r.steps_to_sln) worst = std::max(worst, *r.steps_to_sln);
        ++count;
      }
    }
  }
  o.detail = std::to_string(count) + " reports, at most " + std::to_string(worst) + " steps";
  return o;
}

Outcome brute_force_subgroups() {
  Outcome o;
  Rng rng(10);
  const Modulus mod(3, 4);
  const unsigned e = 4;
  std::vector<std::vector<MatZq>> instances;
  for (int i = 0; i < 100; ++i) {
    const MatZq a = sample::congruent(rng, 2, mod, 1);
    MatZq b = sample::congruent(rng, 2, mod, 1 + static_cast<unsigned>(rng.below(std::uint64_t(2))));
    if (rng.coin()) b = b * MatZq::diagonal({rng.coin() ? 1 : -1, rng.coin() ? 1 : -1}, mod);
    instances.push_back({a, b});
  }
  // Instances where the Phi hypothesis holds.
  instances.push_back({MatZq(2, mod, {1, 3, 0, 1}), MatZq(2, mod, {1, 0, 3, 1})});
  instances.push_back({MatZq(2, mod, {1, 1, 0, 1}), MatZq(2, mod, {0, 1, -1, 0})});
  instances.push_back({MatZq(2, mod, {1, 9, 0, 1}), MatZq(2, mod, {1, 0, 9, 1})});
  instances.push_back({MatZq(2, mod, {1, 3, 0, 1}), MatZq(2, mod, {4, 0, 0, 7})});

  std::size_t checks = 0, hypothesis = 0, failures = 0;
  for (const auto& gens : instances) {
    GeneratedSubgroup g(gens);
    g.enumerate();
    for (unsigned i = 1; i < e; ++i) {
      for (unsigned j = 1; i + j + 1 <= e; ++j) {
        if (!bracket_containment_check(g, i, j)) ++failures;
        ++checks;
      }
    }
    std::vector<bool> full(e, false);
    for (unsigned i = 1; i < e; ++i) full[i] = phi_subspace(g, i).contains_sl();
    for (unsigned t = 1; t < e; ++t) {
      bool all = true;
      for (unsigned i = t; i < e; ++i) all = all && full[i];
      if (!all) continue;
      ++hypothesis;
      if (!contains_Ut(g, t)) ++failures;
    }
  }
  o.pass = failures == 0 && hypothesis > 0;
  o.detail = std::to_string(instances.size()) + " groups, " + std::to_string(checks) + " bracket checks, " +
             std::to_string(hypothesis) + " U_t cross-checks, " + std::to_string(failures) + " failures";
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome end_to_end() {
  Outcome o;
  const std::string base = std::string(GLL_BINARY) + " verify-all --p 7 --n 2 --mode reduced --out ";
  const std::string a = "acceptance_run_a.json", b = "acceptance_run_b.json";
  const int ra = std::system((base + a + " 2>/dev/null").c_str());
  const int rb = std::system((base + b + " 2>/dev/null").c_str());
  const bool exits = WIFEXITED(ra) && WEXITSTATUS(ra) == 0 && WIFEXITED(rb) && WEXITSTATUS(rb) == 0;
  const std::string sa = slurp(a), sb = slurp(b);
  o.pass = exits && !sa.empty() && sa == sb;
  o.detail = std::string("exit ") + (exits ? "0/0" : "nonzero") + ", " + std::to_string(sa.size()) + " bytes, " +
             (sa == sb ? "identical" : "different");
  std::remove(a.c_str());
  std::remove(b.c_str());
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"parameter formulas", profile_formulas},
      {"canonical exponents are admissible", canonical_admissible},
      {"admissibility matches the pointwise oracle", oracle_equivalence},
      {"Bernoulli engine", bernoulli_engine},
      {"kernel maps are homomorphisms", kernel_homomorphisms},
      {"line certificates", line_certificates},
      {"cocycle laws", cocycle_laws},
      {"synthetic models", synthetic_models},
      {"bracket generation of sl_n", generation_criterion},
      {"brute-force subgroups", brute_force_subgroups},
      {"end-to-end CLI", end_to_end},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail
              << " [" << timing << "]" << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
