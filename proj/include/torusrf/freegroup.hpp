#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace torusrf {

/// A letter x_i^{+1} is stored as +i, x_i^{-1} as -i (i is 1-based).
using Letter = int;

/**
 * Freely reduced word in F_k.
 *
 * Words are reduced on construction; there is no way to hold an unreduced
 * word in this type.
 */
class Word {
 public:
  Word() = default;
  explicit Word(std::size_t rank) : rank_(rank) {}
  /// Validates indices against rank (IndexOutOfRange) and reduces.
  Word(std::span<const Letter> letters, std::size_t rank);
  Word(std::initializer_list<Letter> letters, std::size_t rank)
      : Word(std::span<const Letter>(letters.begin(), letters.size()), rank) {}

  static Word generator(std::size_t i, std::size_t rank, int sign = 1);

  std::size_t rank() const { return rank_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  /// Product, freely reduced. Throws RankMismatch.
  friend Word operator*(const Word& u, const Word& v);
  Word& operator*=(const Word& v) { return *this = *this * v; }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
    if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
    return a.letters_ <=> b.letters_;
  }

 private:
  std::size_t rank_ = 0;
  std::vector<Letter> letters_;
};

/// Reduce a raw letter sequence; the free-group normal form.
Word reduce(std::span<const Letter> letters, std::size_t rank);

/// Generator names used for I/O; default "abc...".
std::string default_alphabet(std::size_t rank);

/// Concatenated tokens, e.g. "ab^-1"; the empty word prints as "1".
std::string format_word(const Word& w, const std::string& alphabet);

class SubgroupGraph;

/**
 * Endomorphism of F_k given by the images of the generators.
 *
 * The rank of the image subgroup (and hence injectivity) is computed once at
 * construction from the folded Stallings graph of the images and shared by
 * all copies.
 */
class Endo {
 public:
  Endo() = default;
  explicit Endo(std::vector<Word> images, std::string alphabet = {});

  static Endo identity(std::size_t rank, std::string alphabet = {});

  std::size_t rank() const;
  const std::vector<Word>& images() const;
  const Word& image(std::size_t i) const { return images()[i - 1]; }
  const std::string& alphabet() const;

  /// Rank of phi(F_k).
  std::size_t image_rank() const;
  /// phi is injective iff its image has rank k (free groups are Hopfian).
  bool injective() const;
  /// Folded graph of <w_1, ..., w_k>, used to pull words back along phi.
  const SubgroupGraph& image_graph() const;
  /// True if some image uses an inverse letter.
  bool has_inverses() const;

  friend bool operator==(const Endo& a, const Endo& b) {
    return a.rank() == b.rank() && a.images() == b.images();
  }

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

/// Throws RankMismatch.
Word apply_endo(const Endo& phi, const Word& w);
/// (phi o psi)(x) = phi(psi(x)).
Endo compose(const Endo& phi, const Endo& psi);
Endo power_endo(const Endo& phi, std::size_t n);

struct Abelianization {
  /// entry (i, j) = exponent sum of x_{j+1} in w_{i+1}
  std::vector<std::vector<long long>> matrix;
  /// all-zero: phi maps F_k into [F_k, F_k]
  bool into_derived_subgroup = false;
};

Abelianization abelianization(const Endo& phi);

/**
 * Folded Stallings graph of a finitely generated subgroup <g_1, ..., g_m>.
 *
 * Every edge carries a provenance word in the free group F_m on the given
 * generators, maintained through folding so that the product of provenances
 * along any closed path at the base expands to the word read on that path.
 * That lets membership return an expression in the generators.
 */
class SubgroupGraph {
 public:
  struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
    int label = 0;    // generator index of F_k, 1..k
    Word provenance;  // word in F_m
  };

  SubgroupGraph() = default;
  SubgroupGraph(std::span<const Word> generators, std::size_t rank);

  std::size_t ambient_rank() const { return rank_; }
  std::size_t generator_count() const { return gen_count_; }
  std::size_t base() const { return 0; }
  std::size_t vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Rank of the subgroup: E - V + 1 of the core graph.
  std::size_t subgroup_rank() const;

  /// Expression in the generators (a word in F_m) if w lies in the subgroup.
  std::optional<Word> express(const Word& w) const;

 private:
  std::size_t rank_ = 0;
  std::size_t gen_count_ = 0;
  std::size_t vertex_count_ = 1;
  std::vector<Edge> edges_;
  // out_[v][label-1], in_[v][label-1]: edge index or npos
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

/// Expression (signed generator indices) whose expansion reduces to w, or
/// nullopt if w is not in <gens>.
std::optional<Word> membership(std::span<const Word> gens, const Word& w);

/// Expand an expression over gens into the ambient free group.
Word expand(const Word& expression, std::span<const Word> gens);

struct EndoRank {
  std::size_t rank = 0;
  bool injective = false;
};

EndoRank endo_rank(const Endo& phi);

}  // namespace torusrf
