#include "torusrf/certificate.hpp"

#include "torusrf/error.hpp"

namespace torusrf {

namespace {

// Non-negative integer; parsed JSON stores small values as signed.
bool is_count(const Json& v) { return v.is_number_integer() && v.get<std::int64_t>() >= 0; }

}  // namespace

Json to_json(const Certificate& cert) {
  Json evidence;
  if (cert.evidence.is_shift) {
    evidence["shift"] = cert.evidence.shift;
  } else {
    evidence["index"] = cert.evidence.index;
    evidence["entry"] = Json::array({cert.evidence.row, cert.evidence.col});
    evidence["value"] = cert.evidence.value;
  }
  Json j{{"element", format_hnn_word(cert.element)},
         {"endo", format_endo(cert.element.endo())},
         {"p", cert.p},
         {"tau", cert.tau},
         {"level", cert.level},
         {"period", cert.period},
         {"evidence", evidence},
         {"g0", to_json(cert.g0)},
         {"seed", cert.seed},
         {"version", kCertificateVersion}};
  if (cert.tau > 1) j["modulus"] = cert.modulus;
  return j;
}

Certificate certificate_from_json(const Json& j) {
  auto mismatch = [](const std::string& what) { raise(ErrorKind::SchemaMismatch, what); };
  if (!j.is_object()) mismatch("certificate must be a JSON object");
  if (!j.contains("version") || !j["version"].is_number_integer() || j["version"].get<int>() != kCertificateVersion) {
    mismatch("unsupported certificate version");
  }
  auto need = [&](const char* key, bool ok) {
    if (!j.contains(key) || !ok) mismatch(std::string("missing or malformed key \"") + key + "\"");
  };
  auto is_uint = [&](const char* key) { return j.contains(key) && is_count(j[key]); };
  need("element", j.contains("element") && j["element"].is_string());
  need("endo", j.contains("endo") && j["endo"].is_string());
  need("p", is_uint("p"));
  need("tau", is_uint("tau"));
  need("level", is_uint("level"));
  need("period", is_uint("period"));
  need("evidence", j.contains("evidence") && j["evidence"].is_object());
  need("g0", j.contains("g0") && j["g0"].is_array());

  Certificate cert;
  try {
    const Endo phi = parse_endo(j["endo"].get<std::string>());
    cert.element = parse_hnn_word(j["element"].get<std::string>(), phi);
    cert.g0 = int_tuple_from_json(j["g0"]);
  } catch (const Error& e) {
    mismatch(std::string("unreadable certificate field: ") + e.what());
  }
  cert.p = j["p"].get<std::uint64_t>();
  cert.tau = j["tau"].get<unsigned>();
  cert.level = j["level"].get<unsigned>();
  cert.period = j["period"].get<std::uint64_t>();
  if (j.contains("seed")) {
    need("seed", is_uint("seed"));
    cert.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("modulus")) {
    need("modulus", j["modulus"].is_array());
    for (const auto& c : j["modulus"]) {
      if (!c.is_number_integer()) mismatch("modulus coefficients must be integers");
      cert.modulus.push_back(c.get<std::int64_t>());
    }
  }

  const Json& ev = j["evidence"];
  if (ev.contains("shift")) {
    if (!is_count(ev["shift"]) || ev.size() != 1) mismatch("malformed shift evidence");
    cert.evidence = {true, ev["shift"].get<std::uint64_t>(), 0, 0, 0, {}};
  } else {
    if (!ev.contains("index") || !is_count(ev["index"]) || !ev.contains("entry") ||
        !ev["entry"].is_array() || ev["entry"].size() != 2 || !ev["entry"][0].is_number_integer() ||
        !ev["entry"][1].is_number_integer() || !ev.contains("value") || !ev["value"].is_string()) {
      mismatch("malformed entry evidence");
    }
    cert.evidence = {false, 0, ev["index"].get<std::uint64_t>(), ev["entry"][0].get<int>(), ev["entry"][1].get<int>(),
                     ev["value"].get<std::string>()};
  }
  return cert;
}

void verify_certificate(const Certificate& cert) {
  auto fail = [](const std::string& what) { raise(ErrorKind::VerificationFailed, what); };
  if (cert.level == 0) fail("level must be positive");
  NuHom nu;
  try {
    std::optional<std::vector<std::int64_t>> modulus;
    if (!cert.modulus.empty()) modulus = cert.modulus;
    const Ring ring = schedule_ring(cert.p, cert.tau, cert.level, modulus);
    nu = build_nu(cert.element.endo(), reduce(cert.g0, ring));
  } catch (const Error& e) {
    fail(std::string("cannot rebuild the homomorphism: ") + e.what());
  }
  if (nu.period != cert.period) {
    fail("period " + std::to_string(nu.period) + " != stated " + std::to_string(cert.period));
  }

  const WreathElem image = nu_eval_normal_form(nu, normal_form(cert.element));
  const Evidence& ev = cert.evidence;
  if (ev.is_shift) {
    if (ev.shift == 0 || image.shift != ev.shift) fail("shift evidence does not match");
    return;
  }
  if (ev.index >= image.base.size() || ev.row < 0 || ev.row > 1 || ev.col < 0 || ev.col > 1) {
    fail("evidence coordinate out of range");
  }
  const RingElem& v = image.base[ev.index](ev.row, ev.col);
  const bool differs = ev.row == ev.col ? !v.is_one() : !v.is_zero();
  if (!differs || v.to_string() != ev.value) fail("entry evidence does not match");
}

}  // namespace torusrf
