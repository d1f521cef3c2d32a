#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "torusrf/error.hpp"
#include "torusrf/freegroup.hpp"
#include "torusrf/localring.hpp"

namespace torusrf {

/// Scalar glue needed by the generic matrix code.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<RingElem> {
  static RingElem zero_like(const RingElem& x) { return x.ring().zero(); }
  static RingElem one_like(const RingElem& x) { return x.ring().one(); }
  static bool is_unit(const RingElem& x) { return x.is_unit(); }
  static RingElem inverse(const RingElem& x) {
    if (!x.is_unit()) raise(ErrorKind::NonUnitDeterminant, "determinant " + x.to_string() + " is not a unit");
    return unit_inverse(x);
  }
};

template <>
struct ScalarTraits<BigInt> {
  static BigInt zero_like(const BigInt&) { return 0; }
  static BigInt one_like(const BigInt&) { return 1; }
  static bool is_unit(const BigInt& x) { return x == 1 || x == -1; }
  static BigInt inverse(const BigInt& x) {
    if (!is_unit(x)) raise(ErrorKind::DetNotUnit, "exact determinant " + x.str() + " is not +-1");
    return x;
  }
};

/// 2x2 matrix [[a, b], [c, d]] stored row-major.
template <class S>
struct Mat2 {
  std::array<S, 4> e;

  const S& a() const { return e[0]; }
  const S& b() const { return e[1]; }
  const S& c() const { return e[2]; }
  const S& d() const { return e[3]; }
  const S& operator()(int row, int col) const { return e[2 * row + col]; }

  static Mat2 identity_like(const S& sample) {
    using T = ScalarTraits<S>;
    S z = T::zero_like(sample), o = T::one_like(sample);
    return {{o, z, z, o}};
  }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {{x.e[0] * y.e[0] + x.e[1] * y.e[2], x.e[0] * y.e[1] + x.e[1] * y.e[3],
             x.e[2] * y.e[0] + x.e[3] * y.e[2], x.e[2] * y.e[1] + x.e[3] * y.e[3]}};
  }
  friend Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {{x.e[0] + y.e[0], x.e[1] + y.e[1], x.e[2] + y.e[2], x.e[3] + y.e[3]}};
  }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {{x.e[0] - y.e[0], x.e[1] - y.e[1], x.e[2] - y.e[2], x.e[3] - y.e[3]}};
  }
  friend Mat2 operator*(const S& s, const Mat2& x) {
    return {{s * x.e[0], s * x.e[1], s * x.e[2], s * x.e[3]}};
  }
  friend bool operator==(const Mat2& x, const Mat2& y) { return x.e == y.e; }

  S det() const { return e[0] * e[3] - e[1] * e[2]; }
  S trace() const { return e[0] + e[3]; }
  /// adj([[a,b],[c,d]]) = [[d,-b],[-c,a]]; adj(A) A = det(A) I.
  Mat2 adj() const { return {{e[3], -e[1], -e[2], e[0]}}; }
  bool is_identity() const { return *this == identity_like(e[0]); }
  /// adj(A) * det(A)^-1; throws NonUnitDeterminant (modular) or DetNotUnit (exact).
  Mat2 inverse() const { return ScalarTraits<S>::inverse(det()) * adj(); }
};

using ModMat = Mat2<RingElem>;
using IntMat = Mat2<BigInt>;
template <class S>
using MatTuple = std::vector<Mat2<S>>;
using ModTuple = MatTuple<RingElem>;
using IntTuple = MatTuple<BigInt>;

/**
 * Evaluate w at the assignment x_i -> m[i-1].
 *
 * Inverse letters are evaluated as adj(x) det(x)^-1, computed at most once
 * per generator and only for generators that actually occur inverted.
 */
template <class S>
Mat2<S> eval_word(const Word& w, std::span<const Mat2<S>> m) {
  if (w.rank() != m.size()) raise(ErrorKind::RankMismatch, "assignment size differs from word rank");
  if (m.empty()) raise(ErrorKind::InvalidArgument, "empty assignment");
  std::vector<std::optional<Mat2<S>>> inverses(m.size());
  std::optional<Mat2<S>> acc;
  for (Letter l : w.letters()) {
    const std::size_t i = static_cast<std::size_t>(l > 0 ? l : -l) - 1;
    const Mat2<S>* factor = &m[i];
    if (l < 0) {
      if (!inverses[i]) inverses[i] = m[i].inverse();
      factor = &*inverses[i];
    }
    acc = acc ? *acc * *factor : *factor;
  }
  return acc ? *acc : Mat2<S>::identity_like(m[0].e[0]);
}

/// The word map phi_G on tuples: (g_1..g_k) -> (w_1(g), ..., w_k(g)).
template <class S>
MatTuple<S> phi_map(const Endo& phi, std::span<const Mat2<S>> x) {
  if (phi.rank() != x.size()) raise(ErrorKind::RankMismatch, "tuple size differs from endo rank");
  std::vector<std::optional<Mat2<S>>> inverses(x.size());
  MatTuple<S> out;
  out.reserve(x.size());
  for (const Word& w : phi.images()) {
    std::optional<Mat2<S>> acc;
    for (Letter l : w.letters()) {
      const std::size_t i = static_cast<std::size_t>(l > 0 ? l : -l) - 1;
      const Mat2<S>* factor = &x[i];
      if (l < 0) {
        if (!inverses[i]) inverses[i] = x[i].inverse();
        factor = &*inverses[i];
      }
      acc = acc ? *acc * *factor : *factor;
    }
    out.push_back(acc ? *acc : Mat2<S>::identity_like(x[0].e[0]));
  }
  return out;
}

template <class S>
MatTuple<S> phi_map(const Endo& phi, const MatTuple<S>& x) {
  return phi_map<S>(phi, std::span<const Mat2<S>>(x));
}

/// phi_G applied n times.
template <class S>
MatTuple<S> phi_iterate(const Endo& phi, MatTuple<S> x, std::uint64_t n) {
  for (std::uint64_t i = 0; i < n; ++i) x = phi_map<S>(phi, std::span<const Mat2<S>>(x));
  return x;
}

ModMat make_mat(const Ring& ring, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
IntMat make_int_mat(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

/// Ring mismatch between two modular matrices (RingMismatch).
void check_same_ring(const ModMat& x, const ModMat& y);
const Ring& ring_of(const ModTuple& x);

ModMat reduce(const IntMat& m, const Ring& ring);
ModTuple reduce(const IntTuple& m, const Ring& ring);
ModMat reduce_precision(const ModMat& m, unsigned k_new);
ModTuple reduce_precision(const ModTuple& m, unsigned k_new);
/// Canonical integer representatives in [0, p^k) (tau = 1 only).
IntTuple lift(const ModTuple& m);

/// All determinants are units.
bool nonsingular(const ModTuple& x);

/// Entries flattened to 4k coordinates: coordinate 4i + 2r + c is entry
/// (r, c) of matrix i.
std::vector<RingElem> coordinates(const ModTuple& x);
ModTuple from_coordinates(std::span<const RingElem> coords);

/// Canonical encoding for ordering and hashing (coefficients in order).
std::vector<std::uint64_t> encode(const ModTuple& x);

struct FreenessResult {
  bool free = true;
  /// Shortest nonempty reduced word evaluating to the identity.
  std::optional<Word> witness;
  std::size_t words_checked = 0;
};

/**
 * Exhaustive check that no nonempty reduced word of length <= max_length in
 * the given exact matrices is the identity. Requires det = +-1 (DetNotUnit).
 * Words are tried by increasing length, so the witness is a shortest one
 * (and the lexicographically first at that length).
 */
FreenessResult freeness_check(std::span<const IntMat> mats, std::size_t max_length);

std::string to_string(const ModMat& m);
std::string to_string(const IntMat& m);

}  // namespace torusrf
