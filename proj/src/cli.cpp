#include "gll/cli.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "gll/adjoint.hpp"
#include "gll/galmodel.hpp"
#include "gll/random.hpp"
#include "gll/spectrum.hpp"

namespace gll::cli {

namespace {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t need_p(const RunConfig& c) {
  if (!c.p) throw ConfigError("--p is required");
  if (*c.p < 3 || *c.p > max_supported_prime || !is_prime(*c.p)) {
    throw ConfigError("--p must be an odd prime below " + std::to_string(max_supported_prime));
  }
  return *c.p;
}

unsigned need_n(const RunConfig& c) {
  if (!c.n) throw ConfigError("--n is required");
  if (*c.n < 2 || *c.n > max_matrix_dim) throw ConfigError("--n must lie in [2, 16]");
  return *c.n;
}

ModelLevels levels_for(const RunConfig& c, std::uint64_t p, unsigned n) {
  if (c.mode == Mode::full) {
    if (c.m || c.M) throw ConfigError("--m and --M only apply in reduced mode");
    return full_levels(compute_profile(p, n));
  }
  const unsigned m = c.m.value_or(1);
  const unsigned M = c.M.value_or(std::max(2u, m));
  if (m < 1 || M < m) throw ConfigError("reduced levels need 1 <= m <= M");
  return {m, M, 2 * M};
}

long anchor_for(const RunConfig& c, std::uint64_t p) {
  if (c.k) return *c.k;
  if (p >= 7) {
    const auto k = scan_assumption_k(p).chosen_k();
    if (k) return *k;
    if (c.mode == Mode::full) throw ConfigError("no certified anchor k for p = " + std::to_string(p));
  } else if (c.mode == Mode::full) {
    throw ConfigError("full mode needs p >= 7");
  }
  return 1;
}

ExponentTuple tuple_for(const RunConfig& c, std::uint64_t p, unsigned n) {
  const long k = anchor_for(c, p);
  if (c.mode == Mode::full) return canonical_exponents(p, n, k);
  if (k < 1 || k % 2 == 0) throw ConfigError("--k must be a positive odd integer");
  return formula_exponents(p, n, k);
}

Json levels_json(const ModelLevels& lv) { return Json{{"m", lv.m}, {"M", lv.M}, {"N", lv.N}}; }

MatZq random_matrix(Rng& rng, unsigned n, const Modulus& mod) {
  std::vector<mpz_class> v(std::size_t(n) * n);
  for (auto& a : v) a = rng.below(mod.value());
  return MatZq(n, mod, v);
}

Json stage_profile(const RunConfig& c) {
  const ParamProfile pr = compute_profile(need_p(c), need_n(c));
  Json j = profile_to_json(pr);
  const unsigned n = pr.n;
  j["pass"] = pr.t == 8 * pr.M && pr.N == 2 * pr.M && pr.M == pr.m * (n * n - n) + 1;
  return j;
}

Json stage_scan(const RunConfig& c) {
  const std::uint64_t p = need_p(c);
  if (p < 7) throw ConfigError("scan-k needs p >= 7");
  const IrregularityReport r = scan_assumption_k(p, std::max<std::uint64_t>(bernoulli_default_cap, p));
  Json j = irregularity_to_json(r);
  j.erase("bernoulli_table");
  j["pass"] = r.certified();
  return j;
}

Json stage_bernoulli(const RunConfig& c) {
  const std::uint64_t p = need_p(c);
  const auto table = bernoulli_mod(p, std::max<std::uint64_t>(bernoulli_default_cap, p));
  std::vector<unsigned> irregular;
  for (unsigned a = 2; a < table.size(); a += 2) {
    if (table[a] == 0) irregular.push_back(a);
  }
  return Json{{"p", p}, {"bernoulli_mod_p", table}, {"irregular_indices", irregular}, {"pass", true}};
}

Json stage_admissible(const RunConfig& c) {
  const std::uint64_t p = need_p(c);
  const unsigned n = need_n(c);
  const ModelLevels lv = levels_for(c, p, n);
  const ExponentTuple t = tuple_for(c, p, n);
  const bool adm = check_admissible(t, lv.m);
  Json j{{"exponents", exponents_to_json(t)}, {"m", lv.m}, {"admissible", adm}};
  bool agree = true;
  try {
    const bool oracle = admissibility_oracle(t, lv.m);
    j["oracle"] = oracle;
    agree = oracle == adm;
  } catch (const OracleScaleExceeded&) {
    j["oracle"] = nullptr;
  }
  j["agree"] = agree;
  j["pass"] = agree && (c.mode == Mode::reduced || adm);
  return j;
}

Json stage_matgroup(const RunConfig& c) {
  const std::uint64_t p = need_p(c);
  const unsigned n = need_n(c);
  const ModelLevels lv = levels_for(c, p, n);
  Rng rng = Rng(c.seed).stream("matgroup");
  const SmallExtension ext(lv.N, lv.M);
  const Modulus q(p, ext.quotient_level());
  const Modulus f(p, 1);
  std::size_t failures = 0;
  const std::size_t samples = 200;
  for (std::size_t s = 0; s < samples; ++s) {
    const MatZq a = random_matrix(rng, n, q);
    const MatZq b = random_matrix(rng, n, q);
    if (!(kernel_embed(a + b, ext) == kernel_embed(a, ext) * kernel_embed(b, ext))) ++failures;
    if (!(kernel_log(kernel_embed(a, ext), ext) == a)) ++failures;
    const MatZq x = reduce(a, 1);
    const MatZq y = reduce(b, 1);
    if (!(exp_level(x + y, lv.M) == exp_level(x, lv.M) * exp_level(y, lv.M))) ++failures;
  }
  return Json{{"samples", samples}, {"failures", failures}, {"pass", failures == 0}};
}

Json stage_annihilate(const RunConfig& c) {
  const std::uint64_t p = need_p(c);
  const unsigned n = need_n(c);
  const ModelLevels lv = levels_for(c, p, n);
  const ExponentTuple t = tuple_for(c, p, n);
  const unsigned bound = lv.m * (n * n - n);
  Json j{{"exponents", exponents_to_json(t)}, {"m", lv.m}, {"M", lv.M}, {"bound", bound}};
  if (!check_admissible(t, lv.m)) {
    j["applicable"] = false;
    j["pass"] = c.mode == Mode::reduced;
    return j;
  }
  j["applicable"] = true;
  const Modulus mod(p, lv.M);
  Rng rng = Rng(c.seed).stream("annihilate");
  const auto pairs = offdiagonal_pairs(n);
  const std::size_t samples = 100;
  unsigned max_line = 0, max_torus = 0;
  bool ok = true;
  for (std::size_t s = 0; s < samples; ++s) {
    const IndexPair target = pairs[rng.below(pairs.size())];
    MatZq x = random_matrix(rng, n, mod);
    if (!x.entry(target.first, target.second).is_unit()) x.set(target.first, target.second, 1);
    const AdjointElement ax(x, t);
    const LineCertificate lc = annihilate_to_line(ax, target, lv.m);
    max_line = std::max(max_line, lc.scalar_valuation);
    if (lc.scalar_valuation > bound) ok = false;
    if (s < 5) {
      GroupRingElement h(mod);
      h.add_term(1, 1);
      for (const auto& op : lc.ops) h = h * GroupRingElement::from_op(op, t);
      if (!(h.act_by_conjugation(ax) == lc.result)) ok = false;
    }
    const TorusCertificate tc = annihilate_to_torus(ax, lv.m);
    max_torus = std::max(max_torus, tc.scalar_valuation);
    if (tc.scalar_valuation > bound) ok = false;
    MatZq expect(n, mod);
    for (unsigned i = 0; i < n; ++i) expect.set(i, i, x(i, i) * tc.scalar.value());
    if (!(tc.result.matrix() == expect)) ok = false;
  }
  j["samples"] = samples;
  j["max_line_valuation"] = max_line;
  j["max_torus_valuation"] = max_torus;
  j["pass"] = ok;
  return j;
}

Json stage_generate(const RunConfig& c) {
  const std::uint64_t p = need_p(c);
  const unsigned n = need_n(c);
  Json reports = Json::array();
  bool ok = true;
  const GenerationReport a = verify_prop45(n, p, MuConvention::alternating);
  reports.push_back(generation_report_to_json(a));
  ok = ok && a.pass;
  if (n == 2) {
    const GenerationReport b = verify_prop45(n, p, MuConvention::first_entry);
    reports.push_back(generation_report_to_json(b));
    ok = ok && b.pass;
  }
  return Json{{"reports", reports}, {"pass", ok}};
}

// |im rho_M| for the standard model: the generic generator's image.
mpz_class standard_image_order(const ExponentTuple& t, const ModelLevels& lv) {
  const mpz_class phi = character_period(t.prime(), lv.M);
  mpz_class g = phi;
  for (const auto& k : t.ks()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), k.get_mpz_t());
  return phi / g;
}

Json stage_simulate(const RunConfig& c) {
  const std::uint64_t p = need_p(c);
  const unsigned n = need_n(c);
  const ModelLevels lv = levels_for(c, p, n);
  const ExponentTuple t = tuple_for(c, p, n);
  const SyntheticModel model = build_standard_model(t, lv, 0, c.seed);
  const Cocycle twist = build_standard_twist(model);
  Json j{{"levels", levels_json(lv)}, {"model", model_to_json(model, &twist)}};
  Rng rng = Rng(c.seed).stream("simulate");

  // Cocycle laws.
  bool laws = true;
  const Cocycle f1 = random_cocycle(model, rng);
  const MatZq x = random_matrix(rng, n, model.mod_M());
  const Cocycle f2 = f1 + coboundary(x, model);
  const SmallExtension ext(lv.N, lv.M);
  const MatZq cx = kernel_embed(reduce(x, ext.quotient_level()), ext);
  const MatZq cx_inv = inverse(cx);
  for (int s = 0; s < 100; ++s) {
    const Word a = Word::random(rng, model.generator_count(), 12);
    const Word b = Word::random(rng, model.generator_count(), 12);
    for (const Cocycle* f : {static_cast<const Cocycle*>(nullptr), &twist, &f1}) {
      if (!(eval_rep(model, a * b, f) == eval_rep(model, a, f) * eval_rep(model, b, f))) laws = false;
    }
    if (!(eval_rep(model, a, &f2) == cx * eval_rep(model, a, &f1) * cx_inv)) laws = false;
    if (!(reduce(eval_rep(model, a, &twist), lv.M) == reduce(eval_rep(model, a), lv.M))) laws = false;
  }
  j["cocycle_laws"] = laws;

  bool reserved_ok = true;
  for (auto ij : odd_pairs(n)) {
    const MatZq r = eval_rep(model, Word::generator(reserved_generator(model, ij)), &twist);
    const MatZq want =
        kernel_embed(MatZq::unit(n, model.mod_quotient(), ij.first, ij.second), ext);
    if (!(r == want)) reserved_ok = false;
  }
  j["reserved_generators_ok"] = reserved_ok;

  const ImageModule im = image_module(model, twist);
  const PhiSubspace phi = phi_N_of_model(model, im);
  FpMatrix mu(std::size_t(n) * n, 0);
  for (unsigned i = 1; i <= n; ++i) mu[(i - 1) * n + i - 1] = (i % 2 == 0) ? 1 : 0;
  bool lines = true;
  for (auto ij : odd_pairs(n)) lines = lines && phi.contains(fp_unit(n, ij.first, ij.second));
  const bool witnesses = verify_phi_witnesses(model, im, phi);
  Rng sample_rng = rng.stream("phi-samples");
  const bool sampled = sampled_phi_check(model, twist, im, phi, sample_rng, 100);
  const ModelCertificate cert = model_certificates(model, twist, im);

  j["image_order"] = im.image_order;
  j["schreier_generators"] = im.schreier_count;
  j["module_log_size"] = im.module.log_size();
  j["galois_stable"] = im.galois_stable;
  j["phi_dimension"] = phi.dimension();
  j["phi_level"] = phi.level();
  j["phi_contains_mu"] = phi.contains(mu);
  j["phi_contains_odd_lines"] = lines;
  j["phi_witnesses_ok"] = witnesses;
  j["phi_sampled_ok"] = sampled;
  Json cj{{"applicable", cert.applicable}};
  if (cert.applicable) {
    cj["lines_ok"] = cert.lines_ok;
    cj["torus_ok"] = cert.torus_ok;
    cj["max_line_valuation"] = cert.max_line_valuation;
    cj["torus_valuation"] = cert.torus_valuation;
    cj["bound"] = lv.m * (n * n - n);
  }
  j["model_certificates"] = cj;

  // Brute-force cross-check when the twisted image is enumerable.
  bool brute_ok = true;
  const mpz_class q = prime_power(p, lv.N);
  mpz_class estimate = mpz_class(im.image_order) * prime_power(p, im.module.log_size());
  mpz_class space = 1;
  for (unsigned k = 0; k < n * n; ++k) space *= q;
  if (q < 65536 && space < mpz_class("18446744073709551615") && estimate <= c.cap) {
    GeneratedSubgroup g = twisted_image_group(model, twist);
    g.enumerate(c.cap);
    const PhiSubspace brute = phi_subspace(g, lv.N - 1);
    brute_ok = brute == phi;
    j["brute_force"] = Json{{"group_order", g.order()}, {"phi_equal", brute_ok}};
  } else {
    j["brute_force"] = nullptr;
  }

  const bool cert_ok = !cert.applicable || (cert.lines_ok && cert.torus_ok);
  j["pass"] = laws && reserved_ok && im.galois_stable && phi.contains(mu) && lines && witnesses &&
              sampled && cert_ok && brute_ok;
  return j;
}

Json stage_simulate_guarded(const RunConfig& c) {
  const std::uint64_t p = need_p(c);
  const unsigned n = need_n(c);
  const ModelLevels lv = levels_for(c, p, n);
  const ExponentTuple t = tuple_for(c, p, n);
  const mpz_class order = standard_image_order(t, lv);
  if (c.mode == Mode::full && order > 5000) {
    return Json{{"skipped", "image of rho_M has " + order.get_str() +
                                " elements; run simulate in reduced mode"},
                {"pass", true}};
  }
  return stage_simulate(c);
}

Json stage_verify_all(const RunConfig& c, bool& ok) {
  const std::uint64_t p = need_p(c);
  need_n(c);
  Json stages;
  auto record = [&](const char* name, Json s) {
    ok = ok && s.value("pass", false);
    stages[name] = std::move(s);
  };
  record("profile", stage_profile(c));
  if (p >= 7) {
    record("scan_k", stage_scan(c));
  } else {
    stages["scan_k"] = Json{{"skipped", "p < 7"}, {"pass", true}};
  }
  record("admissible", stage_admissible(c));
  record("matgroup", stage_matgroup(c));
  record("annihilate", stage_annihilate(c));
  record("simulate", stage_simulate_guarded(c));
  record("generate", stage_generate(c));
  return stages;
}

Json config_json(const RunConfig& c) {
  Json j{{"mode", c.mode == Mode::full ? "full" : "reduced"}, {"seed", c.seed}, {"cap", c.cap}};
  if (c.p) j["p"] = *c.p;
  if (c.n) j["n"] = *c.n;
  if (c.k) j["k"] = *c.k;
  if (c.m) j["m"] = *c.m;
  if (c.M) j["M"] = *c.M;
  return j;
}

}  // namespace

RunResult run(const RunConfig& config) {
  RunResult res;
  res.report = Json{{"schema", "1"}, {"command", config.command}, {"config", config_json(config)}};
  try {
    Json body;
    bool ok = true;
    if (config.command == "profile") {
      body = stage_profile(config);
    } else if (config.command == "scan-k") {
      body = stage_scan(config);
    } else if (config.command == "bernoulli") {
      body = stage_bernoulli(config);
    } else if (config.command == "admissible") {
      body = stage_admissible(config);
    } else if (config.command == "annihilate") {
      body = stage_annihilate(config);
    } else if (config.command == "generate") {
      body = stage_generate(config);
    } else if (config.command == "simulate") {
      body = stage_simulate(config);
    } else if (config.command == "verify-all") {
      body["stages"] = stage_verify_all(config, ok);
      body["pass"] = ok;
    } else {
      throw ConfigError("unknown subcommand '" + config.command + "'");
    }
    ok = ok && body.value("pass", false);
    res.report.update(body);
    res.exit_code = ok ? exit_ok : exit_failed;
    if (!ok) res.diagnostics = config.command + ": verification failed";
  } catch (const ConfigError& e) {
    res.exit_code = exit_config;
    res.diagnostics = e.what();
  } catch (const AnchorOutOfRange& e) {
    res.exit_code = exit_config;
    res.diagnostics = e.what();
  } catch (const std::invalid_argument& e) {
    res.exit_code = exit_config;
    res.diagnostics = e.what();
  } catch (const std::exception& e) {
    res.exit_code = exit_failed;
    res.diagnostics = e.what();
  }
  if (res.exit_code != exit_ok) {
    res.report["pass"] = false;
    if (!res.diagnostics.empty()) res.report["error"] = res.diagnostics;
  }
  return res;
}

}  // namespace gll::cli
