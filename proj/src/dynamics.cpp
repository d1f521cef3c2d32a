#include "torusrf/dynamics.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <map>
#include <thread>

#include "torusrf/error.hpp"

namespace torusrf {

OrbitRecord detect_cycle(const Endo& phi, const ModTuple& x0, std::uint64_t cap) {
  if (cap == 0) raise(ErrorKind::InvalidArgument, "cap must be positive");
  auto step = [&](const ModTuple& x) { return phi_map<RingElem>(phi, x); };
  auto exceeded = [&] {
    raise(ErrorKind::CapExceeded, "orbit did not close within " + std::to_string(cap) + " steps");
  };

  // Phase 1 (Brent): find the period. With tail + period <= cap the hare
  // needs fewer than 4 * cap + 4 steps, so anything beyond that is a miss.
  std::uint64_t power = 1, lambda = 1, evaluations = 1;
  const std::uint64_t limit = cap > (std::numeric_limits<std::uint64_t>::max() - 4) / 4 ? cap : 4 * cap + 4;
  ModTuple tortoise = x0;
  ModTuple hare = step(x0);
  while (!(tortoise == hare)) {
    if (power == lambda) {
      tortoise = hare;
      power *= 2;
      lambda = 0;
    }
    hare = step(hare);
    ++lambda;
    if (++evaluations > limit) exceeded();
  }
  if (lambda > cap) exceeded();

  // Phase 2: the tail is where x and phi^lambda(x) first meet.
  tortoise = x0;
  hare = x0;
  for (std::uint64_t i = 0; i < lambda; ++i) hare = step(hare);
  std::uint64_t mu = 0;
  while (!(tortoise == hare)) {
    tortoise = step(tortoise);
    hare = step(hare);
    ++mu;
    if (mu + lambda > cap) exceeded();
  }
  if (mu + lambda > cap) exceeded();
  return {mu, lambda, std::move(tortoise)};
}

PeriodTower period_tower(const Endo& phi, const IntTuple& x, const Ring& top, std::uint64_t cap) {
  PeriodTower tower{top.p(), {}};
  for (unsigned k = 1; k <= top.k(); ++k) {
    const ModTuple xk = reduce(x, top.with_precision(k));
    const OrbitRecord rec = detect_cycle(phi, xk, cap);
    if (rec.tail != 0) {
      raise(ErrorKind::NotPeriodic, "point is not periodic mod p^" + std::to_string(k) + " (tail " +
                                        std::to_string(rec.tail) + ")");
    }
    tower.periods.push_back(rec.period);
  }
  return tower;
}

PeriodTower period_tower(const Endo& phi, const IntTuple& x, std::uint64_t p, unsigned K,
                         std::uint64_t cap) {
  return period_tower(phi, x, make_ring(p, K), cap);
}

PeriodTower period_tower(const Endo& phi, const ModTuple& x, std::uint64_t cap) {
  const Ring& top = ring_of(x);
  PeriodTower tower{top.p(), {}};
  for (unsigned k = 1; k <= top.k(); ++k) {
    const OrbitRecord rec = detect_cycle(phi, reduce_precision(x, k), cap);
    if (rec.tail != 0) {
      raise(ErrorKind::NotPeriodic, "point is not periodic mod p^" + std::to_string(k) + " (tail " +
                                        std::to_string(rec.tail) + ")");
    }
    tower.periods.push_back(rec.period);
  }
  return tower;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ModTuple random_tuple(const Ring& ring, std::size_t rank, std::uint64_t& state) {
  const auto size = ring.size();
  if (!size) raise(ErrorKind::InvalidArgument, "ring too large to sample");
  std::vector<RingElem> coords;
  coords.reserve(4 * rank);
  for (std::size_t i = 0; i < 4 * rank; ++i) coords.push_back(ring.from_index(splitmix64(state) % *size));
  return from_coordinates(coords);
}

namespace {

unsigned worker_count(unsigned requested, std::uint64_t jobs) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(n, std::max<std::uint64_t>(jobs, 1)));
}

bool encoding_less(const PeriodicPoint& a, const PeriodicPoint& b) {
  return encode(a.point) < encode(b.point);
}

// Tuples of the given rank are numbered in base |R| with coordinate 0 most
// significant, so index order agrees with encoding order.
struct TupleIndexer {
  Ring ring;
  std::size_t coords;
  std::uint64_t base;

  ModTuple decode(std::uint64_t index) const {
    std::vector<RingElem> c(coords);
    for (std::size_t i = coords; i-- > 0;) {
      c[i] = ring.from_index(index % base);
      index /= base;
    }
    return from_coordinates(c);
  }

  std::uint64_t encode_index(const ModTuple& x) const {
    std::uint64_t index = 0;
    for (const auto& m : x) {
      for (const auto& v : m.e) index = index * base + v.index();
    }
    return index;
  }
};

SearchResult exhaustive(const Endo& phi, const Ring& ring, const SearchOptions& opt) {
  const auto size = ring.size();
  const std::size_t coords = 4 * phi.rank();
  // |R|^(4k) <= budget, checked without overflow.
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < coords; ++i) {
    if (!size || total > opt.budget / *size) {
      raise(ErrorKind::BudgetExceeded, "exhaustive search over " + ring.describe() + " exceeds budget " +
                                           std::to_string(opt.budget));
    }
    total *= *size;
  }

  const TupleIndexer idx{ring, coords, *size};
  constexpr std::uint64_t kDead = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> next(total);

  const unsigned workers = worker_count(opt.threads, total);
  std::vector<std::future<void>> jobs;
  const std::uint64_t chunk = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = w * chunk, hi = std::min(total, lo + chunk);
    jobs.push_back(std::async(std::launch::async, [&, lo, hi] {
      for (std::uint64_t i = lo; i < hi; ++i) {
        try {
          next[i] = idx.encode_index(phi_map<RingElem>(phi, idx.decode(i)));
        } catch (const Error&) {
          next[i] = kDead;  // outside the domain of phi_G
        }
      }
    }));
  }
  for (auto& j : jobs) j.get();

  // Functional-graph walk: 0 unseen, 1 on the current path, 2 finished.
  std::vector<std::uint8_t> state(total, 0);
  std::vector<std::uint64_t> path;
  SearchResult result;
  result.states = total;
  for (std::uint64_t s = 0; s < total; ++s) {
    if (state[s]) continue;
    path.clear();
    std::uint64_t v = s;
    while (v != kDead && state[v] == 0) {
      state[v] = 1;
      path.push_back(v);
      v = next[v];
    }
    if (v != kDead && state[v] == 1) {
      const auto start = std::find(path.begin(), path.end(), v);
      const std::uint64_t period = static_cast<std::uint64_t>(path.end() - start);
      for (auto it = start; it != path.end(); ++it) {
        ModTuple x = idx.decode(*it);
        if (opt.nonsingular_only && !nonsingular(x)) continue;
        result.points.push_back({std::move(x), period});
      }
    }
    for (std::uint64_t u : path) state[u] = 2;
  }
  std::sort(result.points.begin(), result.points.end(), encoding_less);
  return result;
}

SearchResult from_seeds(const Endo& phi, const Ring& ring, const SearchOptions& opt) {
  struct Found {
    std::vector<PeriodicPoint> points;
    std::uint64_t dropped = 0;
  };
  const std::size_t starts = opt.starts;
  const unsigned workers = worker_count(opt.threads, starts);

  auto run = [&](unsigned w) {
    Found found;
    for (std::size_t s = w; s < starts; s += workers) {
      // Each start has its own stream, so results do not depend on threading.
      std::uint64_t rng = opt.seed ^ (0xd1b54a32d192ed03ULL * (s + 1));
      ModTuple x = random_tuple(ring, phi.rank(), rng);
      for (int tries = 0; opt.nonsingular_only && !nonsingular(x) && tries < 64; ++tries) {
        x = random_tuple(ring, phi.rank(), rng);
      }
      try {
        OrbitRecord rec = detect_cycle(phi, x, opt.budget);
        if (opt.nonsingular_only && !nonsingular(rec.cycle_entry)) {
          ++found.dropped;
          continue;
        }
        // Least encoding on the cycle as the canonical representative.
        ModTuple best = rec.cycle_entry, y = rec.cycle_entry;
        auto best_code = encode(best);
        for (std::uint64_t i = 1; i < rec.period; ++i) {
          y = phi_map<RingElem>(phi, y);
          auto code = encode(y);
          if (code < best_code) {
            best_code = std::move(code);
            best = y;
          }
        }
        found.points.push_back({std::move(best), rec.period});
      } catch (const Error&) {
        ++found.dropped;
      }
    }
    return found;
  };

  std::vector<std::future<Found>> jobs;
  for (unsigned w = 0; w < workers; ++w) jobs.push_back(std::async(std::launch::async, run, w));

  SearchResult result;
  result.states = starts;
  std::map<std::vector<std::uint64_t>, PeriodicPoint> unique;
  for (auto& j : jobs) {
    Found f = j.get();
    result.dropped += f.dropped;
    for (auto& pt : f.points) {
      auto code = encode(pt.point);
      unique.emplace(std::move(code), std::move(pt));
    }
  }
  for (auto& [code, pt] : unique) result.points.push_back(std::move(pt));
  return result;
}

}  // namespace

SearchResult search_periodic(const Endo& phi, const Ring& ring, const SearchOptions& options) {
  if (phi.rank() == 0) raise(ErrorKind::InvalidArgument, "search needs an endomorphism");
  return options.strategy == SearchStrategy::Exhaustive ? exhaustive(phi, ring, options)
                                                        : from_seeds(phi, ring, options);
}

}  // namespace torusrf
