#pragma once

#include <vector>

#include "torusrf/localring.hpp"
#include "torusrf/matgroup.hpp"

namespace torusrf {

/// value + sum_j grad[j] eps_j with eps_i eps_j = 0.
struct DualElem {
  RingElem value;
  std::vector<RingElem> grad;

  static DualElem constant(const RingElem& v, std::size_t n) {
    return {v, std::vector<RingElem>(n, v.ring().zero())};
  }
  static DualElem variable(const RingElem& v, std::size_t n, std::size_t j) {
    DualElem d = constant(v, n);
    d.grad[j] = v.ring().one();
    return d;
  }

  DualElem operator-() const {
    DualElem r{-value, grad};
    for (auto& g : r.grad) g = -g;
    return r;
  }
  friend DualElem operator+(const DualElem& a, const DualElem& b) {
    DualElem r{a.value + b.value, a.grad};
    for (std::size_t j = 0; j < r.grad.size(); ++j) r.grad[j] += b.grad[j];
    return r;
  }
  friend DualElem operator-(const DualElem& a, const DualElem& b) {
    DualElem r{a.value - b.value, a.grad};
    for (std::size_t j = 0; j < r.grad.size(); ++j) r.grad[j] -= b.grad[j];
    return r;
  }
  friend DualElem operator*(const DualElem& a, const DualElem& b) {
    DualElem r{a.value * b.value, std::vector<RingElem>(a.grad.size())};
    for (std::size_t j = 0; j < r.grad.size(); ++j) r.grad[j] = a.value * b.grad[j] + a.grad[j] * b.value;
    return r;
  }
  friend bool operator==(const DualElem& a, const DualElem& b) {
    return a.value == b.value && a.grad == b.grad;
  }
};

template <>
struct ScalarTraits<DualElem> {
  static DualElem zero_like(const DualElem& x) { return DualElem::constant(x.value.ring().zero(), x.grad.size()); }
  static DualElem one_like(const DualElem& x) { return DualElem::constant(x.value.ring().one(), x.grad.size()); }
  static bool is_unit(const DualElem& x) { return x.value.is_unit(); }
  /// (u + g eps)^-1 = u^-1 - u^-2 g eps.
  static DualElem inverse(const DualElem& x) {
    const RingElem u = ScalarTraits<RingElem>::inverse(x.value);
    const RingElem s = -(u * u);
    DualElem r{u, x.grad};
    for (auto& g : r.grad) g = s * g;
    return r;
  }
};

using DualMat = Mat2<DualElem>;

}  // namespace torusrf
