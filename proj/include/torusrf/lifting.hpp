#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "torusrf/dynamics.hpp"
#include "torusrf/freegroup.hpp"
#include "torusrf/matgroup.hpp"

namespace torusrf {

/// Square matrix over a local ring, row-major.
struct RingMatrix {
  std::size_t n = 0;
  std::vector<RingElem> e;

  static RingMatrix identity(const Ring& ring, std::size_t n);
  static RingMatrix zero(const Ring& ring, std::size_t n);

  RingElem& operator()(std::size_t r, std::size_t c) { return e[r * n + c]; }
  const RingElem& operator()(std::size_t r, std::size_t c) const { return e[r * n + c]; }
  const Ring& ring() const { return e.front().ring(); }

  friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b);
  friend bool operator==(const RingMatrix& a, const RingMatrix& b) { return a.e == b.e; }
  std::vector<RingElem> apply(std::span<const RingElem> v) const;

  bool is_identity() const;
  RingMatrix reduced(unsigned k_new) const;
};

/// Rank over the residue field (entries reduced mod p first).
std::size_t rank_mod_p(const RingMatrix& m);

/// Jacobian of Phi^iterate at a base point: entry (i, j) is the derivative of
/// coordinate i of the image with respect to coordinate j (see coordinates()).
struct JacobianMat {
  RingMatrix m;
  ModTuple base;
  Endo phi;
  std::uint64_t iterate = 0;
};

/// Forward-mode evaluation with dual numbers. Throws NonUnitDeterminant where
/// an inverted letter meets a singular matrix.
JacobianMat jacobian(const Endo& phi, std::uint64_t iterate, const ModTuple& x);

inline constexpr std::uint64_t kDefaultOrderCap = 10'000;

/// Least r <= cap with J^r = I mod p, nullopt if there is none. Throws
/// SingularJacobian if J is singular mod p.
std::optional<std::uint64_t> jacobian_order(const RingMatrix& J, std::uint64_t cap = kDefaultOrderCap);

struct EventualOrder {
  std::size_t dim = 0;                 // rank of J^n
  std::optional<std::uint64_t> order;  // least r with J^r = I on im J^n
};

/// Order of J mod p restricted to its eventual image im J^n, where J acts
/// invertibly.
EventualOrder eventual_order(const RingMatrix& J, std::uint64_t cap = kDefaultOrderCap);

/// Largest Jacobian rank of Phi^(4k) mod p over seeded random points; an
/// estimate (from below) of the dimension of the eventual image of Phi.
std::size_t generic_rank(const Endo& phi, const Ring& field, std::uint64_t seed = 1,
                         std::size_t samples = 32);

struct StableExponent {
  std::uint64_t l1 = 0;
  std::size_t tangent_dim = 0;
  std::size_t generic_rank = 0;
  std::uint64_t r = 0;
  std::uint64_t M = 0;  // l1 * r
};

/**
 * M = l1 * r with Phi^M fixing x mod p and acting trivially on its tangent
 * space there.
 *
 * A nonsingular Jacobian gives r = jacobian_order. Otherwise the tangent
 * space is taken to be the eventual image of J, and the point is rejected as
 * ramified (SingularJacobian) when that is smaller than the generic rank.
 * Throws NotPeriodic if x mod p has a tail, OrderCapExceeded if r > cap.
 */
StableExponent stable_exponent(const Endo& phi, const ModTuple& x, std::uint64_t cap = kDefaultOrderCap);
StableExponent stable_exponent(const Endo& phi, const IntTuple& x, std::uint64_t p,
                               std::uint64_t cap = kDefaultOrderCap);

struct DividedDiff {
  unsigned i = 0;
  std::vector<RingElem> alpha;  // over the residue field
};

/// alpha^(i) = (Phi^(M p^(i-1))(X) - X) / p^i mod p, for X over a ring of
/// precision K >= i + 1. Throws CongruenceFailed if the difference is not
/// divisible by p^i.
DividedDiff divided_difference(const Endo& phi, const ModTuple& x, std::uint64_t M, unsigned i);

struct RecurrenceLevel {
  unsigned k = 0;
  std::uint64_t exponent = 0;  // M p^(k-1)
  bool pass = false;
  std::uint64_t literal_exponent = 0;  // M p^k
  bool literal_pass = false;
};

/// Checks Phi^(M p^(k-1))(X) = X mod p^k for k = 1..K (K = precision of x),
/// and the literal exponent M p^k alongside.
std::vector<RecurrenceLevel> verify_recurrence(const Endo& phi, const ModTuple& x, std::uint64_t M);

/// Phi(A + p^l Y) = Phi(A) + p^l J(A) Y mod p^(l+1), coordinatewise. Needs
/// precision >= l + 1 (InvalidArgument otherwise).
bool gradient_congruence_check(const Endo& phi, const ModTuple& a, const ModTuple& y, unsigned l);

}  // namespace torusrf
