#include "torusrf/freegroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <tuple>

#include "torusrf/error.hpp"

namespace torusrf {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

void check_letters(std::span<const Letter> letters, std::size_t rank) {
  for (Letter l : letters) {
    if (l == 0 || static_cast<std::size_t>(std::abs(l)) > rank) {
      raise(ErrorKind::IndexOutOfRange,
            "letter index " + std::to_string(l) + " outside rank " + std::to_string(rank));
    }
  }
}

std::vector<Letter> reduce_raw(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

}  // namespace

// ---- Word -----------------------------------------------------------------

Word::Word(std::span<const Letter> letters, std::size_t rank) : rank_(rank) {
  check_letters(letters, rank);
  letters_ = reduce_raw(letters);
}

Word Word::generator(std::size_t i, std::size_t rank, int sign) {
  const Letter l = static_cast<Letter>(i) * (sign < 0 ? -1 : 1);
  return Word({l}, rank);
}

Word Word::inverse() const {
  Word w(rank_);
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(-*it);
  return w;
}

Word operator*(const Word& u, const Word& v) {
  if (u.rank_ != v.rank_) raise(ErrorKind::RankMismatch, "word ranks differ");
  // Cancel at the seam only; both factors are already reduced.
  std::size_t cancel = 0;
  while (cancel < u.letters_.size() && cancel < v.letters_.size() &&
         u.letters_[u.letters_.size() - 1 - cancel] == -v.letters_[cancel]) {
    ++cancel;
  }
  Word w(u.rank_);
  w.letters_.reserve(u.size() + v.size() - 2 * cancel);
  w.letters_.insert(w.letters_.end(), u.letters_.begin(), u.letters_.end() - cancel);
  w.letters_.insert(w.letters_.end(), v.letters_.begin() + cancel, v.letters_.end());
  return w;
}

Word reduce(std::span<const Letter> letters, std::size_t rank) { return Word(letters, rank); }

std::string default_alphabet(std::size_t rank) {
  std::string names;
  for (char c = 'a'; c <= 'z' && names.size() < rank; ++c) {
    if (c != 't') names.push_back(c);
  }
  if (names.size() < rank) raise(ErrorKind::InvalidArgument, "rank exceeds 25 generators");
  return names;
}

std::string format_word(const Word& w, const std::string& alphabet) {
  if (w.empty()) return "1";
  std::string s;
  for (Letter l : w.letters()) {
    s.push_back(alphabet.at(static_cast<std::size_t>(std::abs(l)) - 1));
    if (l < 0) s += "^-1";
  }
  return s;
}

// ---- SubgroupGraph --------------------------------------------------------

namespace {

struct WorkEdge {
  std::size_t from;
  std::size_t to;
  int label;
  Word prov;
  bool alive = true;
};

class UnionFind {
 public:
  std::size_t add() {
    parent_.push_back(parent_.size());
    return parent_.size() - 1;
  }
  std::size_t find(std::size_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  void merge_into(std::size_t victim, std::size_t keep) { parent_[find(victim)] = find(keep); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

SubgroupGraph::SubgroupGraph(std::span<const Word> generators, std::size_t rank)
    : rank_(rank), gen_count_(generators.size()) {
  UnionFind uf;
  const std::size_t base = uf.add();
  std::vector<WorkEdge> edges;

  // Wedge of petals, one per generator. Reading petal j from the base yields
  // the provenance y_j.
  for (std::size_t j = 0; j < generators.size(); ++j) {
    const Word& g = generators[j];
    if (g.rank() != rank) raise(ErrorKind::RankMismatch, "generator rank differs");
    if (g.empty()) continue;
    std::size_t cur = base;
    for (std::size_t pos = 0; pos < g.size(); ++pos) {
      const std::size_t next = pos + 1 == g.size() ? base : uf.add();
      const Letter l = g[pos];
      Word prov(generators.size());
      if (pos == 0) prov = Word::generator(j + 1, generators.size(), l > 0 ? 1 : -1);
      if (l > 0) {
        edges.push_back({cur, next, l, prov});
      } else {
        edges.push_back({next, cur, -l, prov});
      }
      cur = next;
    }
  }

  // Fold until no vertex has two equally labelled edges in the same direction.
  for (;;) {
    std::map<std::tuple<std::size_t, int, int>, std::size_t> seen;
    std::size_t keep = npos, victim = npos;
    int dir = 0;
    for (std::size_t e = 0; e < edges.size() && victim == npos; ++e) {
      if (!edges[e].alive) continue;
      const auto out_key = std::make_tuple(uf.find(edges[e].from), edges[e].label, 0);
      const auto in_key = std::make_tuple(uf.find(edges[e].to), edges[e].label, 1);
      if (auto it = seen.find(out_key); it != seen.end()) {
        keep = it->second, victim = e, dir = 0;
      } else if (auto it2 = seen.find(in_key); it2 != seen.end()) {
        keep = it2->second, victim = e, dir = 1;
      } else {
        seen.emplace(out_key, e);
        seen.emplace(in_key, e);
      }
    }
    if (victim == npos) break;

    auto other_end = [&](std::size_t e) {
      return uf.find(dir == 0 ? edges[e].to : edges[e].from);
    };
    std::size_t v1 = other_end(keep);
    std::size_t v2 = other_end(victim);
    if (v1 == v2) {
      edges[victim].alive = false;
      continue;
    }
    if (v2 == uf.find(base)) {
      std::swap(keep, victim);
      std::swap(v1, v2);
    }
    const Word& l1 = edges[keep].prov;
    const Word& l2 = edges[victim].prov;
    // Gauge change at v2 that makes the two edges carry the same provenance;
    // closed paths through v2 pick up delta^-1 delta and are unchanged.
    const Word delta = dir == 0 ? l1.inverse() * l2 : l1 * l2.inverse();
    const Word delta_inv = delta.inverse();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!edges[e].alive || e == victim) continue;
      const bool from_v2 = uf.find(edges[e].from) == v2;
      const bool to_v2 = uf.find(edges[e].to) == v2;
      if (from_v2) edges[e].prov = delta * edges[e].prov;
      if (to_v2) edges[e].prov = edges[e].prov * delta_inv;
    }
    edges[victim].alive = false;
    uf.merge_into(v2, v1);
  }

  // Prune hanging trees so every remaining vertex lies on a reduced loop.
  for (bool pruned = true; pruned;) {
    pruned = false;
    std::map<std::size_t, std::size_t> degree;
    for (const auto& e : edges) {
      if (!e.alive) continue;
      ++degree[uf.find(e.from)];
      ++degree[uf.find(e.to)];
    }
    for (auto& e : edges) {
      if (!e.alive) continue;
      const std::size_t a = uf.find(e.from), b = uf.find(e.to);
      if ((a != uf.find(base) && degree[a] == 1) || (b != uf.find(base) && degree[b] == 1)) {
        e.alive = false;
        pruned = true;
        break;
      }
    }
  }

  // Compact vertex numbering with the base at 0.
  std::map<std::size_t, std::size_t> index;
  index[uf.find(base)] = 0;
  for (const auto& e : edges) {
    if (!e.alive) continue;
    for (std::size_t v : {uf.find(e.from), uf.find(e.to)}) {
      if (!index.count(v)) {
        const std::size_t id = index.size();
        index[v] = id;
      }
    }
  }
  vertex_count_ = index.size();
  out_.assign(vertex_count_, std::vector<std::size_t>(rank_, npos));
  in_.assign(vertex_count_, std::vector<std::size_t>(rank_, npos));
  for (const auto& e : edges) {
    if (!e.alive) continue;
    Edge edge{index[uf.find(e.from)], index[uf.find(e.to)], e.label, e.prov};
    out_[edge.from][edge.label - 1] = edges_.size();
    in_[edge.to][edge.label - 1] = edges_.size();
    edges_.push_back(std::move(edge));
  }
}

std::size_t SubgroupGraph::subgroup_rank() const {
  return edges_.size() + 1 - vertex_count_;
}

std::optional<Word> SubgroupGraph::express(const Word& w) const {
  if (w.rank() != rank_) raise(ErrorKind::RankMismatch, "word rank differs from subgroup");
  std::size_t cur = base();
  std::vector<Letter> expr;
  for (Letter l : w.letters()) {
    const std::size_t label = static_cast<std::size_t>(std::abs(l));
    if (l > 0) {
      const std::size_t e = out_[cur][label - 1];
      if (e == npos) return std::nullopt;
      const auto& p = edges_[e].provenance.letters();
      expr.insert(expr.end(), p.begin(), p.end());
      cur = edges_[e].to;
    } else {
      const std::size_t e = in_[cur][label - 1];
      if (e == npos) return std::nullopt;
      const auto inv = edges_[e].provenance.inverse();
      expr.insert(expr.end(), inv.letters().begin(), inv.letters().end());
      cur = edges_[e].from;
    }
  }
  if (cur != base()) return std::nullopt;
  return Word(expr, gen_count_);
}

std::optional<Word> membership(std::span<const Word> gens, const Word& w) {
  if (gens.empty()) {
    if (!w.empty()) return std::nullopt;
    return Word(0);
  }
  return SubgroupGraph(gens, gens.front().rank()).express(w);
}

Word expand(const Word& expression, std::span<const Word> gens) {
  if (expression.rank() != gens.size()) {
    raise(ErrorKind::RankMismatch, "expression rank differs from generator count");
  }
  const std::size_t rank = gens.empty() ? 0 : gens.front().rank();
  std::vector<Letter> raw;
  for (Letter l : expression.letters()) {
    const Word& g = gens[static_cast<std::size_t>(std::abs(l)) - 1];
    if (l > 0) {
      raw.insert(raw.end(), g.letters().begin(), g.letters().end());
    } else {
      const Word inv = g.inverse();
      raw.insert(raw.end(), inv.letters().begin(), inv.letters().end());
    }
  }
  return Word(raw, rank);
}

// ---- Endo -----------------------------------------------------------------

struct Endo::Data {
  std::size_t rank = 0;
  std::vector<Word> images;
  std::string alphabet;
  SubgroupGraph graph;
  bool has_inverses = false;
};

Endo::Endo(std::vector<Word> images, std::string alphabet) {
  auto d = std::make_shared<Data>();
  d->rank = images.size();
  if (d->rank == 0) raise(ErrorKind::InvalidArgument, "endomorphism needs rank >= 1");
  for (const auto& w : images) {
    if (w.rank() != d->rank) {
      raise(ErrorKind::RankMismatch, "image rank differs from number of generators");
    }
    for (Letter l : w.letters()) d->has_inverses |= l < 0;
  }
  d->alphabet = alphabet.empty() ? default_alphabet(d->rank) : std::move(alphabet);
  if (d->alphabet.size() != d->rank) {
    raise(ErrorKind::InvalidArgument, "alphabet size differs from rank");
  }
  d->images = std::move(images);
  d->graph = SubgroupGraph(d->images, d->rank);
  data_ = std::move(d);
}

Endo Endo::identity(std::size_t rank, std::string alphabet) {
  std::vector<Word> images;
  for (std::size_t i = 1; i <= rank; ++i) images.push_back(Word::generator(i, rank));
  return Endo(std::move(images), std::move(alphabet));
}

std::size_t Endo::rank() const { return data_ ? data_->rank : 0; }

const std::vector<Word>& Endo::images() const {
  static const std::vector<Word> empty;
  return data_ ? data_->images : empty;
}

const std::string& Endo::alphabet() const {
  static const std::string empty;
  return data_ ? data_->alphabet : empty;
}

std::size_t Endo::image_rank() const { return data_->graph.subgroup_rank(); }

bool Endo::injective() const { return image_rank() == rank(); }

const SubgroupGraph& Endo::image_graph() const { return data_->graph; }

bool Endo::has_inverses() const { return data_->has_inverses; }

Word apply_endo(const Endo& phi, const Word& w) {
  if (phi.rank() != w.rank()) raise(ErrorKind::RankMismatch, "endomorphism and word ranks differ");
  std::vector<Letter> raw;
  for (Letter l : w.letters()) {
    const Word& img = phi.image(static_cast<std::size_t>(std::abs(l)));
    if (l > 0) {
      raw.insert(raw.end(), img.letters().begin(), img.letters().end());
    } else {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) raw.push_back(-*it);
    }
  }
  return Word(raw, w.rank());
}

Endo compose(const Endo& phi, const Endo& psi) {
  if (phi.rank() != psi.rank()) raise(ErrorKind::RankMismatch, "endomorphism ranks differ");
  std::vector<Word> images;
  for (const auto& w : psi.images()) images.push_back(apply_endo(phi, w));
  return Endo(std::move(images), phi.alphabet());
}

Endo power_endo(const Endo& phi, std::size_t n) {
  Endo result = Endo::identity(phi.rank(), phi.alphabet());
  for (std::size_t i = 0; i < n; ++i) result = compose(phi, result);
  return result;
}

Abelianization abelianization(const Endo& phi) {
  const std::size_t k = phi.rank();
  Abelianization ab;
  ab.matrix.assign(k, std::vector<long long>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (Letter l : phi.images()[i].letters()) {
      ab.matrix[i][static_cast<std::size_t>(std::abs(l)) - 1] += l > 0 ? 1 : -1;
    }
  }
  ab.into_derived_subgroup = std::all_of(ab.matrix.begin(), ab.matrix.end(), [](const auto& row) {
    return std::all_of(row.begin(), row.end(), [](long long v) { return v == 0; });
  });
  return ab;
}

EndoRank endo_rank(const Endo& phi) { return {phi.image_rank(), phi.injective()}; }

}  // namespace torusrf
