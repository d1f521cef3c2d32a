#include <doctest.h>

#include <random>

#include "support.hpp"
#include "torusrf/error.hpp"
#include "torusrf/freegroup.hpp"
#include "torusrf/io.hpp"

using namespace torusrf;
using support::w;

namespace {

Word random_word(std::mt19937_64& rng, std::size_t rank, std::size_t max_len) {
  std::vector<Letter> l(rng() % (max_len + 1));
  for (auto& x : l) x = static_cast<Letter>(rng() % rank + 1) * (rng() % 2 ? 1 : -1);
  return Word(l, rank);
}

Endo random_endo(std::mt19937_64& rng, std::size_t rank, std::size_t max_len) {
  std::vector<Word> images;
  for (std::size_t i = 0; i < rank; ++i) images.push_back(random_word(rng, rank, max_len));
  return Endo(images);
}

}  // namespace

TEST_CASE("reduce") {
  CHECK(w("abBa") == w("aa"));
  CHECK(w("aA").empty());
  CHECK(w("abA").size() == 3);
  const std::vector<Letter> raw{1, 2, -2, -1, 1};
  CHECK(reduce(raw, 2) == w("a"));
  const std::vector<Letter> bad{3};
  CHECK_THROWS_AS(reduce(bad, 2), Error);
  const std::vector<Letter> zero{0};
  CHECK_THROWS_AS(reduce(zero, 2), Error);
}

TEST_CASE("reduce is idempotent and compatible with products") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    std::vector<Letter> u(rng() % 12), v(rng() % 12);
    for (auto& x : u) x = static_cast<Letter>(rng() % 3 + 1) * (rng() % 2 ? 1 : -1);
    for (auto& x : v) x = static_cast<Letter>(rng() % 3 + 1) * (rng() % 2 ? 1 : -1);
    const Word ru = reduce(u, 3), rv = reduce(v, 3);
    CHECK(reduce(ru.letters(), 3) == ru);
    CHECK(ru.size() <= u.size());
    std::vector<Letter> uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    CHECK(reduce(uv, 3) == ru * rv);
  }
}

TEST_CASE("apply_endo") {
  const Endo phi = support::thue_morse();
  CHECK(apply_endo(phi, w("ab")) == w("abba"));
  CHECK(apply_endo(phi, w("aB")) == w("abAB"));
  CHECK(apply_endo(phi, Word(2)).empty());
  CHECK_THROWS_AS(apply_endo(phi, w("a", 3)), Error);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const Endo psi = random_endo(rng, 3, 5);
    const Word u = random_word(rng, 3, 8), v = random_word(rng, 3, 8);
    CHECK(apply_endo(psi, u.inverse()) == apply_endo(psi, u).inverse());
    CHECK(apply_endo(psi, u * v) == apply_endo(psi, u) * apply_endo(psi, v));
  }
}

TEST_CASE("power_endo") {
  const Endo phi = support::thue_morse();
  const Endo phi2 = power_endo(phi, 2);
  CHECK(phi2.image(1) == w("abba"));
  CHECK(phi2.image(2) == w("baab"));
  CHECK(power_endo(phi, 0) == Endo::identity(2));

  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const Endo psi = random_endo(rng, 2, 3);
    const std::size_t m = rng() % 4, n = rng() % 4;
    CHECK(power_endo(psi, m + n) == compose(power_endo(psi, m), power_endo(psi, n)));
  }
}

TEST_CASE("abelianization") {
  const auto ab = abelianization(support::thue_morse());
  CHECK(ab.matrix == std::vector<std::vector<long long>>{{1, 1}, {1, 1}});
  CHECK_FALSE(ab.into_derived_subgroup);

  const auto comm = abelianization(parse_endo("a->aba^-1b^-1, b->bab^-1a^-1"));
  CHECK(comm.matrix == std::vector<std::vector<long long>>{{0, 0}, {0, 0}});
  CHECK(comm.into_derived_subgroup);

  CHECK(abelianization(Endo::identity(3)).matrix ==
        std::vector<std::vector<long long>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

TEST_CASE("abelianization is anti-multiplicative") {
  std::mt19937_64 rng(13);
  auto matmul = [](const auto& x, const auto& y) {
    std::vector<std::vector<long long>> r(x.size(), std::vector<long long>(y[0].size()));
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y[0].size(); ++j)
        for (std::size_t l = 0; l < y.size(); ++l) r[i][j] += x[i][l] * y[l][j];
    return r;
  };
  for (int t = 0; t < 200; ++t) {
    const Endo phi = random_endo(rng, 3, 5), psi = random_endo(rng, 3, 5);
    CHECK(abelianization(compose(phi, psi)).matrix ==
          matmul(abelianization(psi).matrix, abelianization(phi).matrix));
  }
}

TEST_CASE("membership examples") {
  const std::vector<Word> gens{w("ab"), w("ba")};
  const auto e = membership(gens, w("abba"));
  REQUIRE(e);
  CHECK(*e == w("ab"));  // g1 g2
  CHECK_FALSE(membership(gens, w("a")));
  const auto id = membership(gens, Word(2));
  REQUIRE(id);
  CHECK(id->empty());
}

TEST_CASE("membership agrees with the brute-force oracle") {
  std::mt19937_64 rng(17);
  std::vector<std::vector<Word>> subgroups{{w("ab"), w("ba")}};
  while (subgroups.size() < 11) {
    const Word g1 = random_word(rng, 2, 4), g2 = random_word(rng, 2, 4);
    if (g1.empty() || g2.empty()) continue;
    subgroups.push_back({g1, g2});
  }
  const auto words = oracle::all_reduced_words(2, 6);
  for (const auto& gens : subgroups) {
    std::vector<oracle::Letters> glist;
    for (const auto& g : gens) glist.emplace_back(g.letters().begin(), g.letters().end());
    const auto ball = oracle::subgroup_ball(glist, 6, 12);
    const SubgroupGraph graph(gens, 2);
    for (const auto& letters : words) {
      const Word x(letters, 2);
      const auto e = graph.express(x);
      CHECK(e.has_value() == ball.count(letters));
      if (e) CHECK(expand(*e, gens) == x);
    }
  }
}

TEST_CASE("subgroup graph is folded") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 200; ++t) {
    std::vector<Word> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(random_word(rng, 2, 6));
    const SubgroupGraph g(gens, 2);
    std::set<std::tuple<std::size_t, int, int>> seen;
    for (const auto& e : g.edges()) {
      CHECK(seen.insert({e.from, e.label, 1}).second);
      CHECK(seen.insert({e.to, e.label, -1}).second);
      CHECK(e.from < g.vertex_count());
      CHECK(e.to < g.vertex_count());
    }
    CHECK(g.subgroup_rank() <= gens.size());
  }
}

TEST_CASE("endo_rank") {
  const auto tm = endo_rank(support::thue_morse());
  CHECK(tm.rank == 2);
  CHECK(tm.injective);

  const auto collapse = endo_rank(parse_endo("a->a, b->a"));
  CHECK(collapse.rank == 1);
  CHECK_FALSE(collapse.injective);

  const auto square = endo_rank(parse_endo("a->aa"));
  CHECK(square.rank == 1);
  CHECK(square.injective);

  CHECK_FALSE(endo_rank(parse_endo("a->1, b->b")).injective);
  CHECK(endo_rank(parse_endo("a->ab, b->b")).injective);
  // b a b^-1 a^-1 is the inverse of a b a^-1 b^-1
  const auto comm = endo_rank(parse_endo("a->aba^-1b^-1, b->bab^-1a^-1"));
  CHECK(comm.rank == 1);
  CHECK_FALSE(comm.injective);
}

TEST_CASE("formatting") {
  CHECK(format_word(w("aB"), "ab") == "ab^-1");
  CHECK(format_word(Word(2), "ab") == "1");
  CHECK(default_alphabet(3) == "abc");
  CHECK(default_alphabet(20).find('t') == std::string::npos);
}
