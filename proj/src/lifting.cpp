#include "torusrf/lifting.hpp"

#include "torusrf/dual.hpp"
#include "torusrf/error.hpp"

namespace torusrf {

RingMatrix RingMatrix::identity(const Ring& ring, std::size_t n) {
  RingMatrix m = zero(ring, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
  return m;
}

RingMatrix RingMatrix::zero(const Ring& ring, std::size_t n) { return {n, std::vector<RingElem>(n * n, ring.zero())}; }

RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
  if (a.n != b.n) raise(ErrorKind::InvalidArgument, "matrix size mismatch");
  RingMatrix r = RingMatrix::zero(a.ring(), a.n);
  for (std::size_t i = 0; i < a.n; ++i) {
    for (std::size_t l = 0; l < a.n; ++l) {
      const RingElem& x = a(i, l);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < a.n; ++j) r(i, j) += x * b(l, j);
    }
  }
  return r;
}

std::vector<RingElem> RingMatrix::apply(std::span<const RingElem> v) const {
  if (v.size() != n) raise(ErrorKind::InvalidArgument, "vector size mismatch");
  std::vector<RingElem> out(n, ring().zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] += (*this)(i, j) * v[j];
  }
  return out;
}

bool RingMatrix::is_identity() const {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const RingElem& x = (*this)(i, j);
      if (i == j ? !x.is_one() : !x.is_zero()) return false;
    }
  }
  return true;
}

RingMatrix RingMatrix::reduced(unsigned k_new) const {
  RingMatrix r{n, {}};
  r.e.reserve(e.size());
  for (const auto& x : e) r.e.push_back(reduce_precision(x, k_new));
  return r;
}

std::size_t rank_mod_p(const RingMatrix& m) {
  RingMatrix a = m.reduced(1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.n && rank < a.n; ++col) {
    std::size_t pivot = rank;
    while (pivot < a.n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == a.n) continue;
    for (std::size_t j = 0; j < a.n; ++j) std::swap(a(rank, j), a(pivot, j));
    const RingElem inv = unit_inverse(a(rank, col));
    for (std::size_t i = 0; i < a.n; ++i) {
      if (i == rank || a(i, col).is_zero()) continue;
      const RingElem f = a(i, col) * inv;
      for (std::size_t j = 0; j < a.n; ++j) a(i, j) -= f * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

JacobianMat jacobian(const Endo& phi, std::uint64_t iterate, const ModTuple& x) {
  const std::vector<RingElem> c = coordinates(x);
  const std::size_t n = c.size();
  MatTuple<DualElem> d;
  for (std::size_t i = 0; i < n; i += 4) {
    d.push_back({{DualElem::variable(c[i], n, i), DualElem::variable(c[i + 1], n, i + 1),
                  DualElem::variable(c[i + 2], n, i + 2), DualElem::variable(c[i + 3], n, i + 3)}});
  }
  d = phi_iterate<DualElem>(phi, std::move(d), iterate);

  JacobianMat J{RingMatrix::zero(ring_of(x), n), x, phi, iterate};
  for (std::size_t m = 0; m < d.size(); ++m) {
    for (std::size_t e = 0; e < 4; ++e) {
      const auto& grad = d[m].e[e].grad;
      for (std::size_t j = 0; j < n; ++j) J.m(4 * m + e, j) = grad[j];
    }
  }
  return J;
}

std::optional<std::uint64_t> jacobian_order(const RingMatrix& J, std::uint64_t cap) {
  const RingMatrix Jp = J.reduced(1);
  if (rank_mod_p(Jp) < Jp.n) raise(ErrorKind::SingularJacobian, "Jacobian is singular mod p");
  RingMatrix P = Jp;
  for (std::uint64_t r = 1; r <= cap; ++r) {
    if (P.is_identity()) return r;
    P = P * Jp;
  }
  return std::nullopt;
}

EventualOrder eventual_order(const RingMatrix& J, std::uint64_t cap) {
  const RingMatrix Jp = J.reduced(1);
  // The image chain of an n x n matrix is stationary from J^n on.
  RingMatrix P = Jp;
  for (std::size_t i = 1; i < Jp.n; ++i) P = P * Jp;
  EventualOrder out;
  out.dim = rank_mod_p(P);
  RingMatrix Q = Jp * P;
  for (std::uint64_t r = 1; r <= cap; ++r) {
    if (Q == P) {
      out.order = r;
      break;
    }
    Q = Jp * Q;
  }
  return out;
}

std::size_t generic_rank(const Endo& phi, const Ring& field, std::uint64_t seed, std::size_t samples) {
  const Ring f = field.residue_field();
  std::size_t best = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::uint64_t state = seed + 0x632be59bd9b4e019ULL * (s + 1);
    const ModTuple x = random_tuple(f, phi.rank(), state);
    try {
      best = std::max(best, rank_mod_p(jacobian(phi, 4 * phi.rank(), x).m));
    } catch (const Error&) {
      // not in the domain of Phi^(4k)
    }
  }
  return best;
}

StableExponent stable_exponent(const Endo& phi, const ModTuple& x, std::uint64_t cap) {
  const ModTuple x1 = reduce_precision(x, 1);
  const OrbitRecord rec = detect_cycle(phi, x1);
  if (rec.tail != 0) raise(ErrorKind::NotPeriodic, "point is not periodic mod p");

  StableExponent out;
  out.l1 = rec.period;
  const JacobianMat J = jacobian(phi, rec.period, x1);
  const std::size_t n = J.m.n;
  std::optional<std::uint64_t> r;
  if (rank_mod_p(J.m) == n) {
    out.tangent_dim = out.generic_rank = n;
    r = jacobian_order(J.m, cap);
  } else {
    const EventualOrder eo = eventual_order(J.m, cap);
    out.tangent_dim = eo.dim;
    out.generic_rank = generic_rank(phi, ring_of(x1));
    if (eo.dim < out.generic_rank) {
      raise(ErrorKind::SingularJacobian, "tangent map of Phi^" + std::to_string(rec.period) + " has stable rank " +
                                             std::to_string(eo.dim) + " < generic rank " +
                                             std::to_string(out.generic_rank));
    }
    r = eo.order;
  }
  if (!r) raise(ErrorKind::OrderCapExceeded, "Jacobian order exceeds " + std::to_string(cap));
  out.r = *r;
  out.M = out.l1 * out.r;
  return out;
}

StableExponent stable_exponent(const Endo& phi, const IntTuple& x, std::uint64_t p, std::uint64_t cap) {
  return stable_exponent(phi, reduce(x, make_ring(p, 1)), cap);
}

DividedDiff divided_difference(const Endo& phi, const ModTuple& x, std::uint64_t M, unsigned i) {
  const Ring& ring = ring_of(x);
  if (i == 0 || ring.k() < i + 1) {
    raise(ErrorKind::InvalidArgument, "divided difference of order " + std::to_string(i) + " needs precision >= " +
                                          std::to_string(i + 1));
  }
  const std::uint64_t e = M * checked_pow(ring.p(), i - 1);
  const auto before = coordinates(x);
  const auto after = coordinates(phi_iterate<RingElem>(phi, x, e));
  DividedDiff out{i, {}};
  for (std::size_t j = 0; j < before.size(); ++j) {
    out.alpha.push_back(reduce_precision(divide_by_p_power(after[j] - before[j], i), 1));
  }
  return out;
}

std::vector<RecurrenceLevel> verify_recurrence(const Endo& phi, const ModTuple& x, std::uint64_t M) {
  const Ring& ring = ring_of(x);
  std::vector<RecurrenceLevel> out;
  for (unsigned k = 1; k <= ring.k(); ++k) {
    const ModTuple xk = reduce_precision(x, k);
    RecurrenceLevel lv;
    lv.k = k;
    lv.exponent = M * checked_pow(ring.p(), k - 1);
    lv.literal_exponent = M * checked_pow(ring.p(), k);
    const ModTuple y = phi_iterate<RingElem>(phi, xk, lv.exponent);
    lv.pass = y == xk;
    // Phi^(M p^k) = (Phi^(M p^(k-1)))^p
    ModTuple z = y;
    for (std::uint64_t j = 1; j < ring.p(); ++j) z = phi_iterate<RingElem>(phi, z, lv.exponent);
    lv.literal_pass = z == xk;
    out.push_back(lv);
  }
  return out;
}

bool gradient_congruence_check(const Endo& phi, const ModTuple& a, const ModTuple& y, unsigned l) {
  const Ring& ring = ring_of(a);
  if (ring.k() < l + 1) raise(ErrorKind::InvalidArgument, "precision must be at least l + 1");
  const RingElem pl = ring.from_int(BigInt(checked_pow(ring.p(), l)));

  const auto ca = coordinates(a);
  const auto cy = coordinates(y);
  std::vector<RingElem> cz;
  for (std::size_t j = 0; j < ca.size(); ++j) cz.push_back(ca[j] + pl * cy[j]);

  const auto lhs = coordinates(phi_map<RingElem>(phi, from_coordinates(cz)));
  const auto base = coordinates(phi_map<RingElem>(phi, a));
  const auto dy = jacobian(phi, 1, a).m.apply(cy);
  for (std::size_t j = 0; j < lhs.size(); ++j) {
    if (!(reduce_precision(lhs[j], l + 1) == reduce_precision(base[j] + pl * dy[j], l + 1))) return false;
  }
  return true;
}

}  // namespace torusrf
