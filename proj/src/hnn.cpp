#include "torusrf/hnn.hpp"

#include <cstdlib>

#include "torusrf/error.hpp"

namespace torusrf {

HnnWord::HnnWord(Endo phi, std::vector<HnnLetter> letters)
    : phi_(std::move(phi)), letters_(std::move(letters)) {
  if (phi_.rank() == 0) raise(ErrorKind::InvalidArgument, "HNN word needs an endomorphism");
  if (!phi_.injective()) raise(ErrorKind::NonInjective, "mapping torus needs an injective endomorphism");
  for (const auto& l : letters_) {
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) > phi_.rank() || (l.sign != 1 && l.sign != -1)) {
      raise(ErrorKind::IndexOutOfRange, "bad HNN letter");
    }
  }
}

HnnWord HnnWord::from_word(Endo phi, const Word& w) {
  std::vector<HnnLetter> letters;
  for (Letter l : w.letters()) letters.push_back({std::abs(l), l > 0 ? 1 : -1});
  return HnnWord(std::move(phi), std::move(letters));
}

HnnWord HnnWord::inverse() const {
  HnnWord w;
  w.phi_ = phi_;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
  return w;
}

HnnWord operator*(const HnnWord& u, const HnnWord& v) {
  if (!(u.phi_ == v.phi_)) raise(ErrorKind::EndoMismatch, "words over different endomorphisms");
  HnnWord w;
  w.phi_ = u.phi_;
  w.letters_ = u.letters_;
  w.letters_.insert(w.letters_.end(), v.letters_.begin(), v.letters_.end());
  return w;
}

NormalForm normal_form(const HnnWord& w) {
  const Endo& phi = w.endo();
  const std::size_t k = phi.rank();
  NormalForm nf{0, Word(k), 0};

  // phi^n(x_i) for the current n, memoised per generator.
  std::vector<std::vector<Word>> powers(k);
  auto image_power = [&](int gen, std::size_t n) -> const Word& {
    auto& cache = powers[static_cast<std::size_t>(gen) - 1];
    if (cache.empty()) cache.push_back(Word::generator(static_cast<std::size_t>(gen), k));
    while (cache.size() <= n) cache.push_back(apply_endo(phi, cache.back()));
    return cache[n];
  };

  for (const auto& l : w.letters()) {
    if (!l.is_stable()) {
      // t^n x = phi^n(x) t^n
      const Word& img = image_power(l.gen, nf.n);
      nf.u = nf.u * (l.sign > 0 ? img : img.inverse());
    } else if (l.sign > 0) {
      ++nf.n;
    } else if (nf.n > 0) {
      --nf.n;
    } else {
      // u t^-1 = t^-1 phi(u)
      ++nf.m;
      nf.u = apply_endo(phi, nf.u);
    }
  }

  // t^-m phi(v) t^n = t^-(m-1) v t^(n-1); m + n drops each round.
  while (nf.m > 0 && nf.n > 0) {
    auto pre = phi.image_graph().express(nf.u);
    if (!pre) break;
    nf.u = *pre;
    --nf.m;
    --nf.n;
  }
  return nf;
}

bool is_identity(const NormalForm& nf) { return nf.m == 0 && nf.n == 0 && nf.u.empty(); }

bool equal(const HnnWord& u, const HnnWord& v) {
  if (!(u.endo() == v.endo())) raise(ErrorKind::EndoMismatch, "words over different endomorphisms");
  return normal_form(u) == normal_form(v);
}

HnnWord expand(const NormalForm& nf, const Endo& phi) {
  std::vector<HnnLetter> letters(nf.m, HnnLetter::stable(-1));
  for (Letter l : nf.u.letters()) letters.push_back({std::abs(l), l > 0 ? 1 : -1});
  letters.insert(letters.end(), nf.n, HnnLetter::stable(1));
  return HnnWord(phi, std::move(letters));
}

std::string format_hnn_word(const HnnWord& w) {
  if (w.letters().empty()) return "1";
  std::string s;
  for (const auto& l : w.letters()) {
    if (!s.empty()) s.push_back(' ');
    s.push_back(l.is_stable() ? 't' : w.endo().alphabet().at(static_cast<std::size_t>(l.gen) - 1));
    if (l.sign < 0) s += "^-1";
  }
  return s;
}

std::string format_normal_form(const NormalForm& nf, const Endo& phi) {
  return format_hnn_word(expand(nf, phi));
}

}  // namespace torusrf
