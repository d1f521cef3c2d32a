#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "torusrf/dynamics.hpp"
#include "torusrf/hnn.hpp"
#include "torusrf/matgroup.hpp"

namespace torusrf {

/// (f, s) in G wr C_l with f in G^l, s mod l.
struct WreathElem {
  std::vector<ModMat> base;
  std::uint64_t shift = 0;

  std::uint64_t length() const { return base.size(); }
  friend bool operator==(const WreathElem&, const WreathElem&) = default;
};

WreathElem wreath_neutral(const Ring& ring, std::uint64_t l);
/// (f, s)(f', s') = (j -> f(j) f'(j + s), s + s'). Throws WreathMismatch.
WreathElem wreath_mul(const WreathElem& a, const WreathElem& b);
/// (f, s)^-1 = (j -> f(j - s)^-1, -s).
WreathElem wreath_inverse(const WreathElem& a);
WreathElem wreath_pow(const WreathElem& a, std::uint64_t n);
bool is_neutral(const WreathElem& a);
/// Entrywise reduction to a lower precision.
WreathElem reduce_precision(const WreathElem& a, unsigned k_new);

/// t -> ((I..I), 1), x_i -> (j -> i-th matrix of phi_G^j(g), 0).
struct NuHom {
  Endo phi;
  Ring ring;
  std::uint64_t period = 0;
  std::vector<ModTuple> orbit;  // g^(0..l-1)
  WreathElem t_image;
  std::vector<WreathElem> x_images;
  std::vector<WreathElem> x_inverses;

  unsigned level() const { return ring.k(); }
};

/**
 * Builds nu from a periodic tuple g. Throws NonInjective, NotPeriodic (g has
 * a tail), NonUnitDeterminant (g not in GL_2), and RelationCheckFailed if
 * some nu(t) nu(x_i) nu(t)^-1 != nu(phi(x_i)).
 */
NuHom build_nu(const Endo& phi, const ModTuple& g, std::uint64_t cap = kDefaultCycleCap);

/// Letter-by-letter product of images. Throws EndoMismatch.
WreathElem nu_eval(const NuHom& nu, const HnnWord& w);
WreathElem nu_eval(const NuHom& nu, const Word& w);
/// nu(t^-m u t^n) = (j -> u(g^(j-m)), n - m); evaluates u with eval_word
/// directly, independent of the letter images.
WreathElem nu_eval_normal_form(const NuHom& nu, const NormalForm& nf);

struct ScheduleEntry {
  std::uint64_t p = 5;
  unsigned tau = 1;
  unsigned max_level = 4;
  std::optional<std::vector<std::int64_t>> modulus;  // default modulus when empty
};

/// Non-neutrality witness: a nonzero shift, or a base coordinate differing
/// from the identity.
struct Evidence {
  bool is_shift = true;
  std::uint64_t shift = 0;
  std::uint64_t index = 0;
  int row = 0, col = 0;
  std::string value;

  friend bool operator==(const Evidence&, const Evidence&) = default;
};

/// First witness of non-neutrality in e, nullopt if e is neutral.
std::optional<Evidence> find_evidence(const WreathElem& e);

struct Certificate {
  HnnWord element;
  std::uint64_t p = 0;
  unsigned tau = 1;
  unsigned level = 0;
  std::uint64_t period = 0;
  std::vector<std::int64_t> modulus;  // empty for tau = 1
  Evidence evidence;
  IntTuple g0;
  std::uint64_t seed = 0;
};

/**
 * Tries levels 1..K of every schedule entry (entries in parallel) and returns
 * the certificate with the lowest level, ties going to the earlier entry;
 * nullopt is inconclusive. Throws IdentityElement for a trivial w. An entry
 * whose point is not periodic mod p fails, and its error (e.g. NotPeriodic)
 * is rethrown only if no other entry certifies. An entry whose point stops
 * being periodic at a higher level is abandoned there.
 */
std::optional<Certificate> separate(const HnnWord& w, const std::vector<ScheduleEntry>& schedule,
                                    const IntTuple& g0, std::uint64_t seed = 0,
                                    std::uint64_t cap = kDefaultCycleCap);

/// The ring a schedule entry uses at the given level.
Ring schedule_ring(std::uint64_t p, unsigned tau, unsigned level,
                   const std::optional<std::vector<std::int64_t>>& modulus);

}  // namespace torusrf
