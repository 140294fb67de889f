#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "gll/cli.hpp"

int main(int argc, char** argv) {
  using namespace gll::cli;
  CLI::App app{"gll: lifting-construction verifier"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string mode = "full";
  std::uint64_t p = 0;
  unsigned n = 0, m = 0, M = 0;
  long k = 0;

  const std::pair<const char*, const char*> commands[] = {
      {"profile", "levels m, M, N, t for (p, n)"},
      {"scan-k", "Bernoulli irregularity scan and anchor choice"},
      {"bernoulli", "B_0..B_{p-3} mod p"},
      {"admissible", "build the exponent tuple and check admissibility two ways"},
      {"annihilate", "line and torus annihilator certificates"},
      {"generate", "bracket closure of the mu/line hypothesis set"},
      {"simulate", "synthetic model, twisted image module and Phi"},
      {"verify-all", "run every stage; exit 0 iff all pass"}};
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--p", p, "odd prime");
    s->add_option("--n", n, "matrix dimension");
    s->add_option("--k", k, "anchor exponent");
    s->add_option("--mode", mode, "full or reduced")->check(CLI::IsMember({"full", "reduced"}));
    s->add_option("--m", m, "reduced level m'");
    s->add_option("--M", M, "reduced level M'");
    s->add_option("--seed", cfg.seed, "random seed");
    s->add_option("--out", cfg.out, "write the JSON report here");
    s->add_option("--cap", cfg.cap, "enumeration cap");
    subs.push_back(s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_config;
  }

  for (CLI::App* s : subs) {
    if (!s->parsed()) continue;
    cfg.command = s->get_name();
    if (s->count("--p")) cfg.p = p;
    if (s->count("--n")) cfg.n = n;
    if (s->count("--k")) cfg.k = k;
    if (s->count("--m")) cfg.m = m;
    if (s->count("--M")) cfg.M = M;
  }
  cfg.mode = mode == "reduced" ? Mode::reduced : Mode::full;
  if (const char* env = std::getenv("GLL_CAP")) {
    try {
      cfg.cap = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "GLL_CAP must be a positive integer\n";
      return exit_config;
    }
  }

  const RunResult res = run(cfg);
  const std::string text = res.report.dump(2) + "\n";
  if (!res.diagnostics.empty()) std::cerr << res.diagnostics << "\n";
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << cfg.out << "\n";
      return exit_config;
    }
    f << text;
  }
  return res.exit_code;
}
