// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "support.hpp"
#include "torusrf/certificate.hpp"
#include "torusrf/commands.hpp"
#include "torusrf/error.hpp"
#include "torusrf/hnn.hpp"
#include "torusrf/lifting.hpp"
#include "torusrf/wreath.hpp"

using namespace torusrf;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < budget_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %2d %-28s %7.3f s (limit %g s)  %s%s\n", pass ? "PASS" : "FAIL", id, name, secs, budget_s,
              o.detail.c_str(), in_time ? "" : " [over time limit]");
  std::fflush(stdout);
}

void info(const std::string& text) { std::printf("[INFO]    %s\n", text.c_str()); }

std::string join(const Json& arr) { return arr.dump(); }

Word random_word(std::mt19937_64& rng, std::size_t rank, std::size_t max_len, bool positive) {
  std::vector<Letter> l(rng() % (max_len + 1));
  for (auto& x : l) x = static_cast<Letter>(rng() % rank + 1) * (positive || rng() % 2 ? 1 : -1);
  return Word(l, rank);
}

Endo random_endo(std::mt19937_64& rng, std::size_t max_len, bool positive) {
  std::vector<Word> images;
  while (images.size() < 2) {
    Word w = random_word(rng, 2, max_len, positive);
    if (!w.empty()) images.push_back(w);
  }
  return Endo(images);
}

ModTuple random_unit_tuple(const Ring& r, std::uint64_t& state) {
  for (;;) {
    ModTuple x = random_tuple(r, 2, state);
    if (nonsingular(x)) return x;
  }
}

HnnWord random_hnn(std::mt19937_64& rng, const Endo& phi, std::size_t min_len, std::size_t max_len) {
  std::vector<HnnLetter> l(min_len + rng() % (max_len - min_len + 1));
  for (auto& x : l) x = {static_cast<int>(rng() % (phi.rank() + 1)), rng() % 2 ? 1 : -1};
  return HnnWord(phi, l);
}

std::vector<HnnLetter> hnn_letters(const Word& w) {
  std::vector<HnnLetter> out;
  for (Letter l : w.letters()) out.push_back({std::abs(l), l > 0 ? 1 : -1});
  return out;
}

// Insert a relator t x t^-1 phi(x)^-1 (or its inverse), or replace one
// occurrence of t x^e t^-1 by phi(x)^e.
HnnWord rewrite_once(std::mt19937_64& rng, const HnnWord& w) {
  const Endo& phi = w.endo();
  std::vector<HnnLetter> l = w.letters();
  for (std::size_t i = 0; i + 2 < l.size(); ++i) {
    if (rng() % 2 == 0) continue;
    if (l[i] == HnnLetter::stable(1) && !l[i + 1].is_stable() && l[i + 2] == HnnLetter::stable(-1)) {
      Word img = phi.image(static_cast<std::size_t>(l[i + 1].gen));
      if (l[i + 1].sign < 0) img = img.inverse();
      const auto repl = hnn_letters(img);
      l.erase(l.begin() + static_cast<long>(i), l.begin() + static_cast<long>(i) + 3);
      l.insert(l.begin() + static_cast<long>(i), repl.begin(), repl.end());
      return HnnWord(phi, l);
    }
  }
  const std::size_t gen = rng() % phi.rank() + 1;
  std::vector<HnnLetter> rel{HnnLetter::stable(1), {static_cast<int>(gen), 1}, HnnLetter::stable(-1)};
  for (const auto& x : hnn_letters(phi.image(gen).inverse())) rel.push_back(x);
  if (rng() % 2) {
    std::reverse(rel.begin(), rel.end());
    for (auto& x : rel) x = x.inverse();
  }
  const std::size_t pos = rng() % (l.size() + 1);
  l.insert(l.begin() + static_cast<long>(pos), rel.begin(), rel.end());
  return HnnWord(phi, l);
}

std::vector<std::vector<std::int64_t>> residues(const RingMatrix& m) {
  std::vector<std::vector<std::int64_t>> r(m.n, std::vector<std::int64_t>(m.n));
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) r[i][j] = static_cast<std::int64_t>(m(i, j).coeff(0));
  return r;
}

const Endo& example_endo() {
  static const Endo phi = support::thue_morse();
  return phi;
}

}  // namespace

int main() {
  const IntTuple g0 = example_matrices();

  criterion(1, "period table", 1.0, [] {
    RunConfig cfg;
    cfg.command = "periods";
    cfg.p = 5;
    cfg.K = 4;
    const CommandResult r = run_command(cfg);
    const Json expected = Json::array({6, 30, 150, 750});
    return Outcome{r.exit_code == 0 && r.output["periods"] == expected,
                   "got " + join(r.output.value("periods", Json())) + ", expected " + join(expected)};
  });

  criterion(2, "recurrence M=6 K=5", 2.0, [] {
    RunConfig cfg;
    cfg.command = "lift-verify";
    cfg.M = 6;
    cfg.p = 5;
    cfg.K = 5;
    const CommandResult r = run_command(cfg);
    std::string detail = "pass per k:";
    for (const auto& lv : r.output["per_k"]) detail += " " + std::string(lv["pass"].get<bool>() ? "y" : "n");
    return Outcome{r.exit_code == 0 && r.output["pass"] == true, detail};
  });

  criterion(3, "nu relations, levels 1-3", 5.0, [&] {
    const Endo& phi = example_endo();
    int checked = 0, bad = 0;
    for (unsigned k = 1; k <= 3; ++k) {
      const NuHom nu = build_nu(phi, reduce(g0, make_ring(5, k)));
      const WreathElem t_inv = wreath_inverse(nu.t_image);
      for (std::size_t i = 1; i <= phi.rank(); ++i) {
        ++checked;
        if (!(wreath_mul(wreath_mul(nu.t_image, nu.x_images[i - 1]), t_inv) == nu_eval(nu, phi.image(i)))) ++bad;
      }
    }
    return Outcome{bad == 0, std::to_string(checked) + " relations, " + std::to_string(bad) + " broken"};
  });

  criterion(4, "separation regression", 60.0, [&] {
    const Endo& phi = example_endo();
    std::vector<HnnWord> elems;
    for (const char* text : {"a", "b", "t", "t^6", "a b a^-1 b^-1", "t^-1 a t"}) {
      elems.push_back(parse_hnn_word(text, phi));
    }
    const std::uint64_t word_seed = 20261014;
    std::mt19937_64 rng(word_seed);
    while (elems.size() < 25) {
      HnnWord w = random_hnn(rng, phi, 1, 12);
      if (!is_identity(normal_form(w))) elems.push_back(std::move(w));
    }
    const std::vector<ScheduleEntry> schedule{{5, 1, 4, std::nullopt}};
    int certified = 0;
    std::string bad;
    bool t6_ok = false;
    for (const auto& w : elems) {
      const auto cert = separate(w, schedule, g0);
      if (!cert) {
        bad += " [" + format_hnn_word(w) + ": none]";
        continue;
      }
      const Certificate back = certificate_from_json(Json::parse(to_json(*cert).dump()));
      try {
        verify_certificate(back);
      } catch (const Error& e) {
        bad += " [" + format_hnn_word(w) + ": " + e.what() + "]";
        continue;
      }
      if (cert->level > 4) {
        bad += " [" + format_hnn_word(w) + ": level " + std::to_string(cert->level) + "]";
        continue;
      }
      ++certified;
      if (format_hnn_word(w) == "t t t t t t") t6_ok = cert->level == 2;
    }
    // t^6 must be trivial at level 1: no level-1 certificate exists
    const bool t6_not_level1 = !separate(parse_hnn_word("t^6", phi), {{5, 1, 1, std::nullopt}}, g0);
    return Outcome{certified == 25 && t6_ok && t6_not_level1,
                   std::to_string(certified) + "/25 certified, word seed " + std::to_string(word_seed) +
                       ", t^6 at level 2: " + (t6_ok ? "yes" : "no") +
                       ", not at level 1: " + (t6_not_level1 ? "yes" : "no") + bad};
  });

  criterion(5, "gradient congruence fuzz", 30.0, [] {
    std::mt19937_64 rng(5);
    const std::uint64_t primes[] = {3, 5, 7, 11};
    int fails = 0;
    for (int t = 0; t < 1000; ++t) {
      const std::uint64_t p = primes[t % 4];
      const unsigned l = 1 + static_cast<unsigned>(rng() % 2);
      const Endo phi = random_endo(rng, 4, false);
      const Ring r = make_ring(p, l + 1);
      std::uint64_t state = rng();
      const ModTuple a = random_unit_tuple(r, state), y = random_tuple(r, 2, state);
      if (!gradient_congruence_check(phi, a, y, l)) ++fails;
    }
    return Outcome{fails == 0, "1000 trials, " + std::to_string(fails) + " failures"};
  });

  criterion(6, "jacobian fd and chain rule", 30.0, [] {
    std::mt19937_64 rng(6);
    const std::uint64_t primes[] = {3, 5, 7};
    int fd_fails = 0, chain_fails = 0;
    for (int t = 0; t < 500; ++t) {
      const std::uint64_t p = primes[t % 3];
      const Endo phi = random_endo(rng, 4, false);
      const std::uint64_t iter = 1 + rng() % 3;
      std::uint64_t state = rng();
      const ModTuple x = random_unit_tuple(make_ring(p, 1), state);
      const auto fd = oracle::fd_jacobian(support::letters_of(phi), iter, support::ntuple_of(x),
                                          static_cast<oracle::i64>(p));
      if (residues(jacobian(phi, iter, x).m) != fd) ++fd_fails;
    }
    for (int t = 0; t < 500; ++t) {
      const std::uint64_t p = primes[t % 3];
      const Endo phi = random_endo(rng, 4, t % 2 == 0);
      std::uint64_t state = rng();
      const ModTuple x = random_unit_tuple(make_ring(p, 2), state);
      const std::uint64_t m = 1 + rng() % 4, n = 1 + rng() % 4;
      const auto lhs = jacobian(phi, m + n, x).m;
      const auto rhs = jacobian(phi, m, phi_iterate<RingElem>(phi, x, n)).m * jacobian(phi, n, x).m;
      if (!(lhs == rhs)) ++chain_fails;
    }
    return Outcome{fd_fails == 0 && chain_fails == 0, "finite differences " + std::to_string(fd_fails) +
                                                          "/500 failed, chain rule " + std::to_string(chain_fails) +
                                                          "/500 failed"};
  });

  criterion(7, "orbit congruences M=6", 5.0, [&] {
    const Endo& phi = example_endo();
    const std::uint64_t p = 5, M = 6;
    const Ring z25 = make_ring(p, 2);
    const ModTuple x = reduce(g0, z25);
    const DividedDiff alpha = divided_difference(phi, x, M, 1);
    const OrbitRecord orb = detect_cycle(phi, x);
    const ModTuple x1 = reduce_precision(x, 1);
    const RingElem pe = z25.from_int(static_cast<std::int64_t>(p));
    int points = 0, first_bad = 0, second_bad = 0;
    ModTuple y = x;
    for (std::uint64_t i = 0; i < orb.period; ++i, y = phi_map<RingElem>(phi, y)) {
      if (!(reduce_precision(y, 1) == x1)) continue;
      ++points;
      // X' + p alpha, with alpha lifted to Z/p^2 by its residues
      std::vector<RingElem> coords = coordinates(y);
      for (std::size_t c = 0; c < coords.size(); ++c) {
        coords[c] = coords[c] + pe * z25.from_int(static_cast<std::int64_t>(alpha.alpha[c].coeff(0)));
      }
      if (!(phi_iterate<RingElem>(phi, y, M) == from_coordinates(coords))) ++first_bad;
      if (!(phi_iterate<RingElem>(phi, y, p * M) == y)) ++second_bad;
    }
    return Outcome{points > 0 && first_bad == 0 && second_bad == 0,
                   std::to_string(points) + " fibre points; Phi^M congruence broken at " + std::to_string(first_bad) +
                       ", Phi^(pM) congruence broken at " + std::to_string(second_bad)};
  });

  criterion(8, "normal form under rewrites", 10.0, [] {
    std::mt19937_64 rng(8);
    const Endo& phi = example_endo();
    int changed = 0, nontrivial = 0;
    for (int t = 0; t < 500; ++t) {
      const HnnWord w = random_hnn(rng, phi, 0, 12);
      const NormalForm nf = normal_form(w);
      if (!(normal_form(rewrite_once(rng, w)) == nf)) ++changed;
      if (!is_identity(normal_form(w * w.inverse()))) ++nontrivial;
    }
    return Outcome{changed == 0 && nontrivial == 0, "500 words; " + std::to_string(changed) +
                                                        " normal forms changed, " + std::to_string(nontrivial) +
                                                        " w w^-1 nontrivial"};
  });

  criterion(9, "membership vs brute force", 30.0, [] {
    std::mt19937_64 rng(9);
    std::vector<std::vector<Word>> subgroups{{support::w("ab"), support::w("ba")}};
    while (subgroups.size() < 11) {
      const Word g1 = random_word(rng, 2, 4, false), g2 = random_word(rng, 2, 4, false);
      if (!g1.empty() && !g2.empty()) subgroups.push_back({g1, g2});
    }
    const auto words = oracle::all_reduced_words(2, 6);
    std::size_t disagree = 0, total = 0;
    for (const auto& gens : subgroups) {
      std::vector<oracle::Letters> glist;
      for (const auto& g : gens) glist.emplace_back(g.letters().begin(), g.letters().end());
      const auto ball = oracle::subgroup_ball(glist, 6, 12);
      for (const auto& letters : words) {
        ++total;
        const Word x(letters, 2);
        const auto e = membership(gens, x);
        if (e.has_value() != (ball.count(letters) > 0) || (e && !(expand(*e, gens) == x))) ++disagree;
      }
    }
    return Outcome{disagree == 0, std::to_string(total) + " queries over 11 subgroups, " +
                                      std::to_string(disagree) + " disagreements"};
  });

  criterion(10, "freeness of A, B to L=10", 60.0, [&] {
    const FreenessResult r = freeness_check(g0, 10);
    return Outcome{r.free, std::to_string(r.words_checked) + " words checked" +
                               (r.witness ? ", relation " + format_word(*r.witness, "ab") : std::string())};
  });

  criterion(11, "tower divisibility", 120.0, [] {
    std::mt19937_64 rng(11);
    int violations = 0;
    for (int t = 0; t < 100; ++t) {
      const Endo phi = random_endo(rng, 4, true);
      const std::uint64_t p = t % 2 ? 3 : 5;
      IntTuple exact;
      for (int i = 0; i < 2; ++i) {
        auto e = [&] { return static_cast<std::int64_t>(rng() % 41) - 20; };
        exact.push_back(make_int_mat(e(), e(), e(), e()));
      }
      const ModTuple x = detect_cycle(phi, reduce(exact, make_ring(p, 3))).cycle_entry;
      const PeriodTower tower = period_tower(phi, x);
      for (std::size_t k = 0; k + 1 < tower.periods.size(); ++k) {
        if (tower.periods[k + 1] % tower.periods[k] != 0) ++violations;
      }
    }
    return Outcome{violations == 0, "100 endomorphisms, " + std::to_string(violations) + " violations"};
  });

  // Context for the failing criteria: the measured tower and the exponent
  // that does satisfy the recurrence.
  try {
    RunConfig cfg;
    cfg.command = "periods";
    cfg.K = 5;
    info("measured period tower mod 5^k, k=1..5: " + join(run_command(cfg).output["periods"]));
    cfg.command = "lift-verify";
    const CommandResult lv = run_command(cfg);
    info("stable exponent M=" + lv.output["M"].dump() + ", recurrence at K=5: " +
         (lv.output["pass"] == true ? "passes" : "fails"));
  } catch (const std::exception& e) {
    info(std::string("context unavailable: ") + e.what());
  }

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
