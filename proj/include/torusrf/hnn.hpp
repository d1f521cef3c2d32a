#pragma once

#include <string>
#include <vector>

#include "torusrf/freegroup.hpp"

namespace torusrf {

/// A letter of HNN_phi(F_k): generator x_i^{+-1} (gen = i >= 1) or the stable
/// letter t^{+-1} (gen = 0).
struct HnnLetter {
  int gen = 0;
  int sign = 1;

  static HnnLetter stable(int sign = 1) { return {0, sign}; }
  bool is_stable() const { return gen == 0; }
  HnnLetter inverse() const { return {gen, -sign}; }
  friend bool operator==(const HnnLetter&, const HnnLetter&) = default;
};

/// Word in the mapping torus <x_1..x_k, t | t x_i t^-1 = phi(x_i)>.
class HnnWord {
 public:
  HnnWord() = default;
  /// Throws NonInjective if phi is not injective, IndexOutOfRange on bad letters.
  HnnWord(Endo phi, std::vector<HnnLetter> letters);

  static HnnWord from_word(Endo phi, const Word& w);

  const Endo& endo() const { return phi_; }
  const std::vector<HnnLetter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }

  HnnWord inverse() const;
  /// Concatenation; throws EndoMismatch.
  friend HnnWord operator*(const HnnWord& u, const HnnWord& v);

 private:
  Endo phi_;
  std::vector<HnnLetter> letters_;
};

/// t^(-m) u t^(n); canonical when not (m > 0 and n > 0 and u in phi(F_k)).
struct NormalForm {
  std::size_t m = 0;
  Word u;
  std::size_t n = 0;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

NormalForm normal_form(const HnnWord& w);
bool is_identity(const NormalForm& nf);
/// Word problem; throws EndoMismatch.
bool equal(const HnnWord& u, const HnnWord& v);

/// The word t^(-m) u t^(n).
HnnWord expand(const NormalForm& nf, const Endo& phi);

/// Tokens separated by spaces, e.g. "t a t^-1 b"; identity prints as "1".
std::string format_hnn_word(const HnnWord& w);
std::string format_normal_form(const NormalForm& nf, const Endo& phi);

}  // namespace torusrf
