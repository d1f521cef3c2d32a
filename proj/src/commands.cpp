#include "torusrf/commands.hpp"

#include <fstream>
#include <iostream>
#include <iterator>

#include "torusrf/error.hpp"
#include "torusrf/hnn.hpp"
#include "torusrf/lifting.hpp"

namespace torusrf {

namespace {

IntTuple matrices_of(const RunConfig& cfg) {
  if (cfg.matrices.empty()) return example_matrices();
  Json j;
  try {
    j = Json::parse(cfg.matrices);
  } catch (const Json::parse_error& e) {
    raise(ErrorKind::SyntaxError, std::string("matrices: ") + e.what());
  }
  return int_tuple_from_json(j);
}

Ring config_ring(const RunConfig& cfg, unsigned k) { return schedule_ring(cfg.p, cfg.tau, k, cfg.modulus); }

Json base_output(const RunConfig& cfg) { return Json{{"command", cfg.command}, {"seed", cfg.seed}}; }

CommandResult periods(const RunConfig& cfg) {
  const Endo phi = parse_endo(cfg.endo);
  const PeriodTower tower = period_tower(phi, matrices_of(cfg), config_ring(cfg, cfg.K), cfg.cap);
  Json out = base_output(cfg);
  out["endo"] = format_endo(phi);
  out["p"] = tower.p;
  out["tau"] = cfg.tau;
  out["K"] = cfg.K;
  out["periods"] = tower.periods;
  return {out, 0};
}

CommandResult lift_verify(const RunConfig& cfg) {
  const Endo phi = parse_endo(cfg.endo);
  const ModTuple x = reduce(matrices_of(cfg), config_ring(cfg, cfg.K));
  Json out = base_output(cfg);
  out["endo"] = format_endo(phi);
  out["p"] = cfg.p;
  out["K"] = cfg.K;
  std::uint64_t M = 0;
  if (cfg.M) {
    M = *cfg.M;
  } else {
    const StableExponent se = stable_exponent(phi, x);
    M = se.M;
    out["stable"] = {{"l1", se.l1}, {"r", se.r}, {"tangent_dim", se.tangent_dim}, {"generic_rank", se.generic_rank}};
  }
  out["M"] = M;
  bool all = true;
  Json per_k = Json::array();
  for (const auto& lv : verify_recurrence(phi, x, M)) {
    all = all && lv.pass;
    per_k.push_back({{"k", lv.k},
                     {"exponent", lv.exponent},
                     {"pass", lv.pass},
                     {"literal_exponent", lv.literal_exponent},
                     {"literal_pass", lv.literal_pass}});
  }
  out["per_k"] = per_k;
  out["pass"] = all;
  return {out, all ? 0 : 1};
}

CommandResult separate_cmd(const RunConfig& cfg) {
  const Endo phi = parse_endo(cfg.endo);
  if (cfg.word.empty()) raise(ErrorKind::InvalidArgument, "separate needs --word");
  const HnnWord w = parse_hnn_word(cfg.word, phi);
  std::vector<ScheduleEntry> schedule = cfg.schedule;
  if (schedule.empty()) schedule.push_back({cfg.p, cfg.tau, cfg.K, cfg.modulus});
  const auto cert = separate(w, schedule, matrices_of(cfg), cfg.seed, cfg.cap);
  Json out = base_output(cfg);
  out["element"] = format_hnn_word(w);
  if (!cert) {
    out["result"] = "inconclusive";
    return {out, 1};
  }
  out["result"] = "separated";
  out["certificate"] = to_json(*cert);
  return {out, 0};
}

CommandResult normal_form_cmd(const RunConfig& cfg) {
  const Endo phi = parse_endo(cfg.endo);
  const HnnWord w = parse_hnn_word(cfg.word, phi);
  const NormalForm nf = normal_form(w);
  Json out = base_output(cfg);
  out["element"] = format_hnn_word(w);
  out["m"] = nf.m;
  out["u"] = format_word(nf.u, phi.alphabet());
  out["n"] = nf.n;
  out["normal_form"] = format_normal_form(nf, phi);
  out["identity"] = is_identity(nf);
  if (!cfg.other.empty()) {
    const HnnWord v = parse_hnn_word(cfg.other, phi);
    out["other"] = format_hnn_word(v);
    out["equal"] = equal(w, v);
  }
  return {out, 0};
}

CommandResult injective_cmd(const RunConfig& cfg) {
  const Endo phi = parse_endo(cfg.endo);
  const EndoRank r = endo_rank(phi);
  Json out = base_output(cfg);
  out["endo"] = format_endo(phi);
  out["rank"] = r.rank;
  out["injective"] = r.injective;
  return {out, r.injective ? 0 : 1};
}

CommandResult abelianization_cmd(const RunConfig& cfg) {
  const Endo phi = parse_endo(cfg.endo);
  const Abelianization ab = abelianization(phi);
  Json rows = Json::array();
  for (const auto& row : ab.matrix) {
    Json r = Json::array();
    for (long long v : row) r.push_back(std::to_string(v));
    rows.push_back(r);
  }
  Json out = base_output(cfg);
  out["endo"] = format_endo(phi);
  out["matrix"] = rows;
  out["into_derived_subgroup"] = ab.into_derived_subgroup;
  return {out, 0};
}

CommandResult freeness_cmd(const RunConfig& cfg) {
  const IntTuple mats = matrices_of(cfg);
  const FreenessResult r = freeness_check(mats, cfg.length);
  Json out = base_output(cfg);
  out["matrices"] = to_json(mats);
  out["L"] = cfg.length;
  out["free"] = r.free;
  out["words_checked"] = r.words_checked;
  if (r.witness) out["witness"] = format_word(*r.witness, default_alphabet(mats.size()));
  return {out, r.free ? 0 : 1};
}

CommandResult search_cmd(const RunConfig& cfg) {
  const Endo phi = parse_endo(cfg.endo);
  SearchOptions opt;
  if (cfg.strategy == "exhaustive") {
    opt.strategy = SearchStrategy::Exhaustive;
  } else if (cfg.strategy == "from_seeds" || cfg.strategy == "from-seeds") {
    opt.strategy = SearchStrategy::FromSeeds;
  } else {
    raise(ErrorKind::InvalidArgument, "unknown strategy " + cfg.strategy);
  }
  opt.nonsingular_only = cfg.nonsingular_only;
  opt.budget = cfg.budget;
  opt.seed = cfg.seed;
  opt.starts = cfg.starts;
  const Ring ring = config_ring(cfg, cfg.K);
  const SearchResult res = search_periodic(phi, ring, opt);
  Json points = Json::array();
  for (const auto& pt : res.points) points.push_back({{"point", to_json(pt.point)}, {"period", pt.period}});
  Json out = base_output(cfg);
  out["endo"] = format_endo(phi);
  out["ring"] = ring.describe();
  out["strategy"] = cfg.strategy;
  out["nonsingular_only"] = cfg.nonsingular_only;
  out["count"] = res.points.size();
  out["states"] = res.states;
  out["dropped"] = res.dropped;
  out["points"] = points;
  return {out, 0};
}

CommandResult verify_cmd(const RunConfig& cfg) {
  std::string text;
  if (cfg.certificate.empty() || cfg.certificate == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(cfg.certificate);
    if (!in) raise(ErrorKind::InvalidArgument, "cannot open " + cfg.certificate);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    raise(ErrorKind::SchemaMismatch, std::string("not JSON: ") + e.what());
  }
  // Accept the output of `separate` as well as a bare certificate.
  if (j.is_object() && j.contains("certificate")) j = j["certificate"];
  const Certificate cert = certificate_from_json(j);
  Json out = base_output(cfg);
  try {
    verify_certificate(cert);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::VerificationFailed) throw;
    out["valid"] = false;
    out["message"] = e.what();
    return {out, 1};
  }
  out["valid"] = true;
  out["element"] = format_hnn_word(cert.element);
  out["level"] = cert.level;
  return {out, 0};
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"periods",        "lift-verify", "separate",
                                              "normal-form",    "injective",   "abelianization",
                                              "freeness",       "search-periodic", "verify-cert"};
  return names;
}

CommandResult run_command(const RunConfig& cfg) {
  try {
    if (cfg.command == "periods") return periods(cfg);
    if (cfg.command == "lift-verify") return lift_verify(cfg);
    if (cfg.command == "separate") return separate_cmd(cfg);
    if (cfg.command == "normal-form") return normal_form_cmd(cfg);
    if (cfg.command == "injective") return injective_cmd(cfg);
    if (cfg.command == "abelianization") return abelianization_cmd(cfg);
    if (cfg.command == "freeness") return freeness_cmd(cfg);
    if (cfg.command == "search-periodic") return search_cmd(cfg);
    if (cfg.command == "verify-cert") return verify_cmd(cfg);
    raise(ErrorKind::InvalidArgument, "unknown command " + cfg.command);
  } catch (const Error& e) {
    Json out = base_output(cfg);
    out["error"] = to_string(e.kind());
    out["message"] = e.what();
    return {out, 2};
  }
}

}  // namespace torusrf
