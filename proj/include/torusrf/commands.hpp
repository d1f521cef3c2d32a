#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torusrf/certificate.hpp"
#include "torusrf/dynamics.hpp"
#include "torusrf/io.hpp"
#include "torusrf/wreath.hpp"

namespace torusrf {

/// Everything a command depends on; commands are pure functions of this.
struct RunConfig {
  std::string command;
  std::string endo = "a->ab, b->ba";
  std::string matrices;  // JSON list of integer matrices; empty = example pair
  std::uint64_t p = 5;
  unsigned tau = 1;
  unsigned K = 4;
  std::optional<std::vector<std::int64_t>> modulus;
  std::optional<std::uint64_t> M;
  std::vector<ScheduleEntry> schedule;  // separate; empty = {(p, tau, K)}
  std::string word;
  std::string other;  // normal-form: second word for an equality test
  std::uint64_t cap = kDefaultCycleCap;
  std::uint64_t budget = 1u << 24;
  std::size_t starts = 256;
  std::string strategy = "exhaustive";
  bool nonsingular_only = true;
  unsigned length = 10;
  std::string certificate;  // verify-cert: path, or "-" for stdin
  std::uint64_t seed = 1;
};

struct CommandResult {
  Json output;
  int exit_code = 0;  // 0 success, 1 negative result, 2 usage or input error
};

CommandResult run_command(const RunConfig& cfg);

const std::vector<std::string>& command_names();

}  // namespace torusrf
