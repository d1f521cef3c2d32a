#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "torusrf/commands.hpp"
#include "torusrf/error.hpp"

using namespace torusrf;

namespace {

// "p:tau:K" or "p:tau:K:c0;c1;..." for an explicit modulus.
ScheduleEntry parse_schedule_entry(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() < 3 || parts.size() > 4) {
    raise(ErrorKind::SyntaxError, "schedule entry must be p:tau:K[:c0;c1;...], got " + text);
  }
  ScheduleEntry e;
  try {
    e.p = std::stoull(parts[0]);
    e.tau = static_cast<unsigned>(std::stoul(parts[1]));
    e.max_level = static_cast<unsigned>(std::stoul(parts[2]));
    if (parts.size() == 4) {
      std::vector<std::int64_t> coeffs;
      std::stringstream cs(parts[3]);
      for (std::string c; std::getline(cs, c, ';');) coeffs.push_back(std::stoll(c));
      e.modulus = coeffs;
    }
  } catch (const std::logic_error&) {
    raise(ErrorKind::SyntaxError, "bad number in schedule entry " + text);
  }
  return e;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic points of free-group word maps and separation certificates for mapping tori"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string output;
  std::vector<std::string> schedule;
  std::vector<std::int64_t> modulus;
  std::uint64_t M = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Seed echoed in the output and used for sampling");
    sub->add_option("-o,--output", output, "Also write the JSON result to this file");
  };
  auto endo = [&](CLI::App* sub) { sub->add_option("--endo", cfg.endo, "Endomorphism, e.g. \"a->ab, b->ba\""); };
  auto mats = [&](CLI::App* sub) {
    sub->add_option("--matrices", cfg.matrices, "JSON list of integer matrices [[[a,b],[c,d]],...]");
  };
  auto ring = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "Residue characteristic");
    sub->add_option("--tau", cfg.tau, "Residue degree");
    sub->add_option("--K", cfg.K, "Precision (highest level)");
    sub->add_option("--modulus", modulus, "Lower coefficients of the defining polynomial (tau > 1)");
  };

  auto* periods = app.add_subcommand("periods", "Minimal periods of the point mod p^k, k = 1..K");
  endo(periods), mats(periods), ring(periods), common(periods);
  periods->add_option("--cap", cfg.cap, "Cycle detection cap");

  auto* lift = app.add_subcommand("lift-verify", "Check Phi^(M p^(k-1))(X) = X mod p^k for k = 1..K");
  endo(lift), mats(lift), ring(lift), common(lift);
  lift->add_option("--M", M, "Exponent; computed from the tangent map when omitted");

  auto* sep = app.add_subcommand("separate", "Find a wreath quotient in which the element is nontrivial");
  endo(sep), mats(sep), ring(sep), common(sep);
  sep->add_option("--word", cfg.word, "Element, e.g. \"t a t^-1 b\"")->required();
  sep->add_option("--schedule", schedule, "Entries p:tau:K[:c0;c1], tried in parallel");
  sep->add_option("--cap", cfg.cap, "Cycle detection cap");

  auto* nf = app.add_subcommand("normal-form", "Normal form t^-m u t^n of an element");
  endo(nf), common(nf);
  nf->add_option("--word", cfg.word, "Element")->required();
  nf->add_option("--other", cfg.other, "Second element to compare with");

  auto* inj = app.add_subcommand("injective", "Rank of the image and injectivity");
  endo(inj), common(inj);

  auto* ab = app.add_subcommand("abelianization", "Induced map on Z^k");
  endo(ab), common(ab);

  auto* fr = app.add_subcommand("freeness", "Search for a relation among integer matrices");
  mats(fr), common(fr);
  fr->add_option("--L", cfg.length, "Maximum word length");

  auto* search = app.add_subcommand("search-periodic", "Periodic points of the word map over a finite ring");
  endo(search), ring(search), common(search);
  search->add_option("--strategy", cfg.strategy, "exhaustive or from_seeds")
      ->check(CLI::IsMember({"exhaustive", "from_seeds", "from-seeds"}));
  search->add_option("--budget", cfg.budget, "State-space limit (exhaustive) or per-start cap (from_seeds)");
  search->add_option("--starts", cfg.starts, "Number of random starts");
  search->add_flag("!--all", cfg.nonsingular_only, "Keep singular tuples too");

  auto* verify = app.add_subcommand("verify-cert", "Re-verify a certificate from scratch");
  verify->add_option("certificate", cfg.certificate, "Path to the JSON certificate, - for stdin");
  common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (!modulus.empty()) cfg.modulus = modulus;
  if (lift->count("--M")) cfg.M = M;
  try {
    for (const auto& s : schedule) cfg.schedule.push_back(parse_schedule_entry(s));
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  const CommandResult result = run_command(cfg);
  const std::string text = result.output.dump(2);
  std::cout << text << "\n";
  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "cannot write " << output << "\n";
      return 2;
    }
    out << text << "\n";
  }
  return result.exit_code;
}
