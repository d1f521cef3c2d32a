#pragma once

#include "torusrf/io.hpp"
#include "torusrf/wreath.hpp"

namespace torusrf {

inline constexpr int kCertificateVersion = 1;

/// {"element", "endo", "p", "tau", "level", "period", "evidence", "g0",
///  "version", "modulus", "seed"}; modulus only when tau > 1.
Json to_json(const Certificate& cert);
/// Throws SchemaMismatch on a wrong version, missing key or wrong type.
Certificate certificate_from_json(const Json& j);

/**
 * Rebuilds nu at the stated level from g0 and evaluates the element through
 * its normal form, not through the letter images used by separate(). Throws
 * VerificationFailed unless the period and the evidence are reproduced.
 */
void verify_certificate(const Certificate& cert);

}  // namespace torusrf
