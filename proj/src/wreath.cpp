#include "torusrf/wreath.hpp"

#include <cstdlib>
#include <future>

#include "torusrf/error.hpp"

namespace torusrf {

WreathElem wreath_neutral(const Ring& ring, std::uint64_t l) {
  if (l == 0) raise(ErrorKind::InvalidArgument, "wreath length must be positive");
  ModMat id = ModMat::identity_like(ring.one());
  return {std::vector<ModMat>(l, id), 0};
}

WreathElem wreath_mul(const WreathElem& a, const WreathElem& b) {
  const std::uint64_t l = a.length();
  if (l == 0 || l != b.length()) raise(ErrorKind::WreathMismatch, "wreath lengths differ");
  check_same_ring(a.base[0], b.base[0]);
  WreathElem r;
  r.base.reserve(l);
  for (std::uint64_t j = 0; j < l; ++j) r.base.push_back(a.base[j] * b.base[(j + a.shift) % l]);
  r.shift = (a.shift + b.shift) % l;
  return r;
}

WreathElem wreath_inverse(const WreathElem& a) {
  const std::uint64_t l = a.length();
  WreathElem r;
  r.base.reserve(l);
  for (std::uint64_t j = 0; j < l; ++j) r.base.push_back(a.base[(j + l - a.shift) % l].inverse());
  r.shift = (l - a.shift) % l;
  return r;
}

WreathElem wreath_pow(const WreathElem& a, std::uint64_t n) {
  WreathElem acc = wreath_neutral(a.base.at(0).e[0].ring(), a.length());
  WreathElem sq = a;
  while (n) {
    if (n & 1) acc = wreath_mul(acc, sq);
    n >>= 1;
    if (n) sq = wreath_mul(sq, sq);
  }
  return acc;
}

bool is_neutral(const WreathElem& a) {
  if (a.shift != 0) return false;
  for (const auto& m : a.base) {
    if (!m.is_identity()) return false;
  }
  return true;
}

WreathElem reduce_precision(const WreathElem& a, unsigned k_new) {
  WreathElem r{{}, a.shift};
  for (const auto& m : a.base) r.base.push_back(reduce_precision(m, k_new));
  return r;
}

NuHom build_nu(const Endo& phi, const ModTuple& g, std::uint64_t cap) {
  if (!phi.injective()) raise(ErrorKind::NonInjective, "mapping torus needs an injective endomorphism");
  if (!nonsingular(g)) raise(ErrorKind::NonUnitDeterminant, "g has a non-unit determinant");
  const OrbitRecord rec = detect_cycle(phi, g, cap);
  if (rec.tail != 0) raise(ErrorKind::NotPeriodic, "g has tail " + std::to_string(rec.tail));

  NuHom nu;
  nu.phi = phi;
  nu.ring = ring_of(g);
  nu.period = rec.period;
  nu.orbit.reserve(nu.period);
  nu.orbit.push_back(g);
  for (std::uint64_t j = 1; j < nu.period; ++j) nu.orbit.push_back(phi_map<RingElem>(phi, nu.orbit.back()));

  nu.t_image = wreath_neutral(nu.ring, nu.period);
  nu.t_image.shift = 1 % nu.period;
  for (std::size_t i = 0; i < phi.rank(); ++i) {
    WreathElem x{{}, 0};
    for (const auto& gj : nu.orbit) x.base.push_back(gj[i]);
    nu.x_inverses.push_back(wreath_inverse(x));
    nu.x_images.push_back(std::move(x));
  }

  const WreathElem t_inv = wreath_inverse(nu.t_image);
  for (std::size_t i = 0; i < phi.rank(); ++i) {
    const WreathElem lhs = wreath_mul(wreath_mul(nu.t_image, nu.x_images[i]), t_inv);
    if (!(lhs == nu_eval(nu, phi.images()[i]))) {
      raise(ErrorKind::RelationCheckFailed, "relation for generator " + std::to_string(i + 1) + " fails");
    }
  }
  return nu;
}

WreathElem nu_eval(const NuHom& nu, const Word& w) {
  WreathElem acc = wreath_neutral(nu.ring, nu.period);
  for (Letter l : w.letters()) {
    const std::size_t i = static_cast<std::size_t>(std::abs(l)) - 1;
    acc = wreath_mul(acc, l > 0 ? nu.x_images[i] : nu.x_inverses[i]);
  }
  return acc;
}

WreathElem nu_eval(const NuHom& nu, const HnnWord& w) {
  if (!(w.endo() == nu.phi)) raise(ErrorKind::EndoMismatch, "word and homomorphism use different endomorphisms");
  WreathElem acc = wreath_neutral(nu.ring, nu.period);
  const WreathElem t_inv = wreath_inverse(nu.t_image);
  for (const auto& l : w.letters()) {
    if (l.is_stable()) {
      acc = wreath_mul(acc, l.sign > 0 ? nu.t_image : t_inv);
    } else {
      const std::size_t i = static_cast<std::size_t>(l.gen) - 1;
      acc = wreath_mul(acc, l.sign > 0 ? nu.x_images[i] : nu.x_inverses[i]);
    }
  }
  return acc;
}

WreathElem nu_eval_normal_form(const NuHom& nu, const NormalForm& nf) {
  const std::uint64_t l = nu.period;
  const std::uint64_t m = nf.m % l;
  WreathElem r{{}, (nf.n % l + l - m) % l};
  r.base.reserve(l);
  for (std::uint64_t j = 0; j < l; ++j) {
    const ModTuple& gj = nu.orbit[(j + l - m) % l];
    r.base.push_back(eval_word<RingElem>(nf.u, gj));
  }
  return r;
}

std::optional<Evidence> find_evidence(const WreathElem& e) {
  if (e.shift != 0) return Evidence{true, e.shift, 0, 0, 0, {}};
  for (std::uint64_t j = 0; j < e.base.size(); ++j) {
    const ModMat& m = e.base[j];
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        const RingElem& v = m(r, c);
        if (r == c ? !v.is_one() : !v.is_zero()) return Evidence{false, 0, j, r, c, v.to_string()};
      }
    }
  }
  return std::nullopt;
}

Ring schedule_ring(std::uint64_t p, unsigned tau, unsigned level,
                   const std::optional<std::vector<std::int64_t>>& modulus) {
  if (tau > 1 && !modulus) return make_default_ring(p, level, tau);
  return make_ring(p, level, tau, modulus);
}

std::optional<Certificate> separate(const HnnWord& w, const std::vector<ScheduleEntry>& schedule,
                                    const IntTuple& g0, std::uint64_t seed, std::uint64_t cap) {
  const NormalForm nf = normal_form(w);
  if (is_identity(nf)) raise(ErrorKind::IdentityElement, "the identity cannot be separated");

  auto attempt = [&](const ScheduleEntry& entry) -> std::optional<Certificate> {
    for (unsigned k = 1; k <= entry.max_level; ++k) {
      const Ring ring = schedule_ring(entry.p, entry.tau, k, entry.modulus);
      NuHom nu;
      try {
        nu = build_nu(w.endo(), reduce(g0, ring), cap);
      } catch (const Error& e) {
        if (k == 1 || e.kind() != ErrorKind::NotPeriodic) throw;
        return std::nullopt;
      }
      if (auto ev = find_evidence(nu_eval(nu, w))) {
        Certificate cert{w, entry.p, entry.tau, k, nu.period, {}, *ev, g0, seed};
        for (auto c : ring.modulus_coefficients()) cert.modulus.push_back(static_cast<std::int64_t>(c));
        return cert;
      }
    }
    return std::nullopt;
  };

  std::vector<std::future<std::optional<Certificate>>> jobs;
  for (const auto& entry : schedule) jobs.push_back(std::async(std::launch::async, attempt, std::cref(entry)));

  std::optional<Certificate> best;
  std::exception_ptr failure;
  for (auto& j : jobs) {
    try {
      auto c = j.get();
      if (c && (!best || c->level < best->level)) best = std::move(c);
    } catch (...) {
      if (!failure) failure = std::current_exception();
    }
  }
  // A failing entry only matters when no other entry produced a certificate.
  if (!best && failure) std::rethrow_exception(failure);
  return best;
}

}  // namespace torusrf
