#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gll/generation.hpp"
#include "gll/json_io.hpp"

namespace gll::cli {

enum class Mode { full, reduced };

struct RunConfig {
  std::string command;
  std::optional<std::uint64_t> p;
  std::optional<unsigned> n;
  std::optional<long> k;
  Mode mode = Mode::full;
  /// Reduced-mode levels m' and M'; N' = 2M'. Defaults 1 and 2.
  std::optional<unsigned> m;
  std::optional<unsigned> M;
  std::uint64_t seed = 0;
  std::string out;
  std::uint64_t cap = enumeration_default_cap;
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_config = 2;

struct RunResult {
  int exit_code = exit_ok;
  Json report;
  std::string diagnostics;
};

/// Executes one subcommand. Never throws; configuration problems give
/// exit_config and failed checks exit_failed.
RunResult run(const RunConfig& config);

}  // namespace gll::cli
