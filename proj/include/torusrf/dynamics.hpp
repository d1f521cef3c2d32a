#pragma once

#include <cstdint>
#include <vector>

#include "torusrf/freegroup.hpp"
#include "torusrf/matgroup.hpp"

namespace torusrf {

inline constexpr std::uint64_t kDefaultCycleCap = 10'000'000;

struct OrbitRecord {
  std::uint64_t tail = 0;
  std::uint64_t period = 0;
  ModTuple cycle_entry;  // phi^tail(x0)
};

/**
 * Brent cycle detection on the forward orbit of x0 under phi_G.
 *
 * Throws CapExceeded when tail + period > cap. Evaluation errors (a
 * non-unit determinant under an inverted letter) propagate.
 */
OrbitRecord detect_cycle(const Endo& phi, const ModTuple& x0, std::uint64_t cap = kDefaultCycleCap);

struct PeriodTower {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> periods;  // periods[k-1] = minimal period mod p^k
};

/// Periods of X reduced into top.with_precision(k) for k = 1..top.k().
/// Throws NotPeriodic if some reduction has a nonzero tail.
PeriodTower period_tower(const Endo& phi, const IntTuple& x, const Ring& top,
                         std::uint64_t cap = kDefaultCycleCap);
PeriodTower period_tower(const Endo& phi, const IntTuple& x, std::uint64_t p, unsigned K,
                         std::uint64_t cap = kDefaultCycleCap);
/// Same, for a tuple already over Z/p^K (or GR(p^K, tau)).
PeriodTower period_tower(const Endo& phi, const ModTuple& x, std::uint64_t cap = kDefaultCycleCap);

enum class SearchStrategy { Exhaustive, FromSeeds };

struct SearchOptions {
  SearchStrategy strategy = SearchStrategy::Exhaustive;
  bool nonsingular_only = true;
  /// Exhaustive: maximum state-space size. From seeds: iteration cap per start.
  std::uint64_t budget = 1u << 24;
  std::uint64_t seed = 1;
  std::size_t starts = 256;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct PeriodicPoint {
  ModTuple point;
  std::uint64_t period = 0;
};

struct SearchResult {
  /// Sorted by encoding. Exhaustive search lists every periodic point; seeded
  /// search lists one representative (least encoding) per cycle found.
  std::vector<PeriodicPoint> points;
  std::uint64_t states = 0;  // tuples enumerated or starts tried
  std::uint64_t dropped = 0; // starts that hit the cap or left the domain
};

/// Throws BudgetExceeded for exhaustive search over more than budget tuples.
SearchResult search_periodic(const Endo& phi, const Ring& ring, const SearchOptions& options);

/// Deterministic 64-bit mixer used for seeded sampling.
std::uint64_t splitmix64(std::uint64_t& state);

/// Uniformly random tuple of the given rank over ring.
ModTuple random_tuple(const Ring& ring, std::size_t rank, std::uint64_t& state);

}  // namespace torusrf
