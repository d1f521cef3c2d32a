#pragma once

#include <vector>

#include "oracles.hpp"
#include "torusrf/freegroup.hpp"
#include "torusrf/io.hpp"
#include "torusrf/matgroup.hpp"

namespace support {

inline std::vector<oracle::Letters> letters_of(const torusrf::Endo& phi) {
  std::vector<oracle::Letters> out;
  for (const auto& w : phi.images()) out.emplace_back(w.letters().begin(), w.letters().end());
  return out;
}

inline oracle::NTuple ntuple_of(const torusrf::IntTuple& x) {
  oracle::NTuple out;
  for (const auto& m : x) {
    out.push_back({static_cast<oracle::i64>(m.a()), static_cast<oracle::i64>(m.b()),
                   static_cast<oracle::i64>(m.c()), static_cast<oracle::i64>(m.d())});
  }
  return out;
}

inline oracle::NTuple ntuple_of(const torusrf::ModTuple& x) { return ntuple_of(torusrf::lift(x)); }

inline int letter(char c) { return c >= 'a' && c <= 'z' ? c - 'a' + 1 : -(c - 'A' + 1); }

// "abA" = a b a^-1; upper case for inverses.
inline torusrf::Word w(const char* s, std::size_t rank = 2) {
  std::vector<torusrf::Letter> l;
  for (; *s; ++s) l.push_back(letter(*s));
  return torusrf::Word(l, rank);
}

inline torusrf::Endo thue_morse() { return torusrf::parse_endo("a->ab, b->ba"); }

}  // namespace support
