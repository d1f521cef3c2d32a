#include "torusrf/localring.hpp"

#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

#include "torusrf/error.hpp"

namespace torusrf {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t s = a + b;
  return s >= m ? s - m : s;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}

std::uint64_t reduce_signed(std::int64_t v, std::uint64_t m) {
  if (v >= 0) return static_cast<std::uint64_t>(v) % m;
  const std::uint64_t r = (static_cast<std::uint64_t>(-(v + 1)) + 1) % m;
  return r == 0 ? 0 : m - r;
}

std::uint64_t reduce_big(const BigInt& v, std::uint64_t m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

// ---- polynomials over F_p (dense, lowest degree first) -------------------

using Poly = std::vector<std::uint64_t>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo the monic polynomial g over F_p.
Poly poly_rem(Poly f, const Poly& g, std::uint64_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    std::uint64_t lead = f.back();
    std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      f[shift + i] = submod(f[shift + i], mulmod(lead, g[i], p), p);
    }
    trim(f);
  }
  return f;
}

// Exhaustive search for a monic factor of degree 1..deg/2.
bool irreducible_mod_p(const Poly& f, std::uint64_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    // Enumerate all monic polynomials of degree d.
    std::uint64_t count = checked_pow(p, static_cast<unsigned>(d));
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly g(d + 1, 0);
      std::uint64_t rest = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = rest % p;
        rest /= p;
      }
      g[d] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

struct RingKey {
  std::uint64_t p;
  unsigned k;
  unsigned tau;
  Coeffs poly;
  bool operator<(const RingKey& o) const {
    return std::tie(p, k, tau, poly) < std::tie(o.p, o.k, o.tau, o.poly);
  }
};

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<RingKey, std::unique_ptr<RingSpec>>& registry() {
  static std::map<RingKey, std::unique_ptr<RingSpec>> r;
  return r;
}

}  // namespace

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > (std::uint64_t{1} << 62) / base) {
      raise(ErrorKind::InvalidArgument, "integer power overflows 62 bits");
    }
    r *= base;
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Ring intern_ring(const RingSpec& spec) {
  RingKey key{spec.p, spec.k, spec.tau, spec.poly};
  std::lock_guard lock(registry_mutex());
  auto& slot = registry()[key];
  if (!slot) slot = std::make_unique<RingSpec>(spec);
  return Ring(slot.get());
}

Ring make_ring(std::uint64_t p, unsigned k, unsigned tau,
               const std::optional<std::vector<std::int64_t>>& modulus) {
  if (k < 1 || tau < 1) {
    raise(ErrorKind::InvalidArgument, "ring needs k >= 1, tau >= 1");
  }
  if (!is_prime(p)) raise(ErrorKind::CompositeP, std::to_string(p) + " is not prime");
  if (tau > kMaxDegree) {
    raise(ErrorKind::UnsupportedDegree,
          "residue degree " + std::to_string(tau) + " exceeds " + std::to_string(kMaxDegree));
  }
  RingSpec spec;
  spec.p = p;
  spec.k = k;
  spec.tau = tau;
  spec.modulus = checked_pow(p, k);
  if (spec.modulus > (std::uint64_t{1} << 62)) {
    raise(ErrorKind::InvalidArgument, "p^k must stay below 2^62");
  }
  if (tau > 1) {
    if (!modulus) raise(ErrorKind::MissingModulus, "tau > 1 requires a modulus polynomial");
    if (modulus->size() != tau) {
      raise(ErrorKind::InvalidArgument, "modulus must list exactly tau lower coefficients");
    }
    Poly f(tau + 1, 0);
    for (unsigned i = 0; i < tau; ++i) {
      spec.poly[i] = reduce_signed((*modulus)[i], spec.modulus);
      f[i] = spec.poly[i] % p;
    }
    f[tau] = 1;
    if (!irreducible_mod_p(f, p)) {
      raise(ErrorKind::ReducibleModulus, "modulus is reducible mod " + std::to_string(p));
    }
  }
  return intern_ring(spec);
}

std::optional<std::vector<std::int64_t>> default_modulus(std::uint64_t p, unsigned tau) {
  if (tau == 1) return std::vector<std::int64_t>{};
  if (tau != 2) return std::nullopt;
  switch (p) {
    case 2: return std::vector<std::int64_t>{1, 1};  // x^2 + x + 1
    case 3: return std::vector<std::int64_t>{1, 0};  // x^2 + 1
    case 5: return std::vector<std::int64_t>{2, 0};  // x^2 + 2
    case 7: return std::vector<std::int64_t>{1, 0};  // x^2 + 1
    default: return std::nullopt;
  }
}

Ring make_default_ring(std::uint64_t p, unsigned k, unsigned tau) {
  if (tau == 1) return make_ring(p, k);
  auto m = default_modulus(p, tau);
  if (!m) {
    raise(ErrorKind::MissingModulus, "no built-in modulus for p=" + std::to_string(p) +
                                         ", tau=" + std::to_string(tau));
  }
  return make_ring(p, k, tau, m);
}

// ---- Ring -----------------------------------------------------------------

std::vector<std::uint64_t> Ring::modulus_coefficients() const {
  if (tau() == 1) return {};
  return {poly().begin(), poly().begin() + tau()};
}

std::optional<std::uint64_t> Ring::size() const {
  u128 n = 1;
  for (unsigned i = 0; i < tau(); ++i) {
    n *= modulus();
    if (n > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(n);
}

RingElem Ring::zero() const { return RingElem(*this, Coeffs{}); }

RingElem Ring::one() const {
  Coeffs c{};
  c[0] = 1 % modulus();
  return RingElem(*this, c);
}

RingElem Ring::from_int(std::int64_t v) const {
  Coeffs c{};
  c[0] = reduce_signed(v, modulus());
  return RingElem(*this, c);
}

RingElem Ring::from_int(const BigInt& v) const {
  Coeffs c{};
  c[0] = reduce_big(v, modulus());
  return RingElem(*this, c);
}

RingElem Ring::from_coeffs(const std::vector<BigInt>& coeffs) const {
  if (coeffs.size() > tau()) {
    raise(ErrorKind::InvalidArgument, "too many coefficients for residue degree");
  }
  Coeffs c{};
  for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = reduce_big(coeffs[i], modulus());
  return RingElem(*this, c);
}

RingElem Ring::from_index(std::uint64_t index) const {
  Coeffs c{};
  for (unsigned i = 0; i < tau(); ++i) {
    c[i] = index % modulus();
    index /= modulus();
  }
  return RingElem(*this, c);
}

Ring Ring::with_precision(unsigned k_new) const {
  if (k_new > k()) raise(ErrorKind::PrecisionIncrease, "cannot raise precision");
  if (k_new < 1) raise(ErrorKind::InvalidArgument, "precision must be >= 1");
  if (k_new == k()) return *this;
  RingSpec spec = *spec_;
  spec.k = k_new;
  spec.modulus = checked_pow(p(), k_new);
  for (unsigned i = 0; i < tau(); ++i) spec.poly[i] %= spec.modulus;
  return intern_ring(spec);
}

std::string Ring::describe() const {
  std::ostringstream os;
  if (tau() == 1) {
    os << "Z/" << modulus();
  } else {
    os << "GR(" << p() << "^" << k() << ", " << tau() << ")";
  }
  return os.str();
}

// ---- RingElem -------------------------------------------------------------

namespace {

void require_same(const RingElem& a, const RingElem& b) {
  if (!(a.ring() == b.ring()) || !a.ring().valid()) {
    raise(ErrorKind::RingMismatch, "operands live in different rings");
  }
}

}  // namespace

bool RingElem::is_zero() const {
  for (unsigned i = 0; i < ring_.tau(); ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

bool RingElem::is_one() const { return *this == ring_.one(); }

bool RingElem::is_unit() const {
  for (unsigned i = 0; i < ring_.tau(); ++i) {
    if (c_[i] % ring_.p() != 0) return true;
  }
  return false;
}

std::uint64_t RingElem::index() const {
  std::uint64_t idx = 0;
  for (unsigned i = ring_.tau(); i-- > 0;) idx = idx * ring_.modulus() + c_[i];
  return idx;
}

RingElem RingElem::operator-() const {
  Coeffs c{};
  const auto m = ring_.modulus();
  for (unsigned i = 0; i < ring_.tau(); ++i) c[i] = c_[i] == 0 ? 0 : m - c_[i];
  return RingElem(ring_, c);
}

RingElem operator+(const RingElem& a, const RingElem& b) {
  require_same(a, b);
  Coeffs c{};
  const auto m = a.ring_.modulus();
  for (unsigned i = 0; i < a.ring_.tau(); ++i) c[i] = addmod(a.c_[i], b.c_[i], m);
  return RingElem(a.ring_, c);
}

RingElem operator-(const RingElem& a, const RingElem& b) {
  require_same(a, b);
  Coeffs c{};
  const auto m = a.ring_.modulus();
  for (unsigned i = 0; i < a.ring_.tau(); ++i) c[i] = submod(a.c_[i], b.c_[i], m);
  return RingElem(a.ring_, c);
}

RingElem operator*(const RingElem& a, const RingElem& b) {
  require_same(a, b);
  const Ring& r = a.ring_;
  const auto m = r.modulus();
  const unsigned tau = r.tau();
  if (tau == 1) {
    Coeffs c{};
    c[0] = mulmod(a.c_[0], b.c_[0], m);
    return RingElem(r, c);
  }
  std::array<std::uint64_t, 2 * kMaxDegree - 1> prod{};
  for (unsigned i = 0; i < tau; ++i) {
    if (a.c_[i] == 0) continue;
    for (unsigned j = 0; j < tau; ++j) {
      prod[i + j] = addmod(prod[i + j], mulmod(a.c_[i], b.c_[j], m), m);
    }
  }
  // x^tau = -(poly[tau-1] x^(tau-1) + ... + poly[0])
  for (unsigned d = 2 * tau - 2; d >= tau; --d) {
    const std::uint64_t lead = prod[d];
    if (lead == 0) continue;
    prod[d] = 0;
    for (unsigned j = 0; j < tau; ++j) {
      prod[d - tau + j] = submod(prod[d - tau + j], mulmod(lead, r.poly()[j], m), m);
    }
  }
  Coeffs c{};
  for (unsigned i = 0; i < tau; ++i) c[i] = prod[i];
  return RingElem(r, c);
}

RingElem RingElem::scaled(std::uint64_t s) const {
  Coeffs c{};
  const auto m = ring_.modulus();
  for (unsigned i = 0; i < ring_.tau(); ++i) c[i] = mulmod(c_[i], s % m, m);
  return RingElem(ring_, c);
}

std::vector<std::string> RingElem::coeff_strings() const {
  std::vector<std::string> out;
  for (unsigned i = 0; i < ring_.tau(); ++i) out.push_back(std::to_string(c_[i]));
  return out;
}

std::string RingElem::to_string() const {
  auto parts = coeff_strings();
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ',';
    s += parts[i];
  }
  return s;
}

RingElem arith(const RingElem& a, const RingElem& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
  }
  raise(ErrorKind::InvalidArgument, "unknown operation");
}

RingElem unit_inverse(const RingElem& a) {
  if (!a.ring().valid() || !a.is_unit()) {
    raise(ErrorKind::NotAUnit, a.to_string() + " is not a unit");
  }
  const Ring ring = a.ring();
  const Ring field = ring.residue_field();
  const RingElem a0 = reduce_precision(a, 1);

  // In F_q the multiplicative group has order q - 1.
  const std::uint64_t q = checked_pow(ring.p(), ring.tau());
  RingElem inv0 = field.one();
  {
    RingElem base = a0;
    std::uint64_t e = q - 2;
    while (e) {
      if (e & 1) inv0 = inv0 * base;
      base = base * base;
      e >>= 1;
    }
  }

  RingElem b(ring, inv0.coeffs());
  const RingElem two = ring.from_int(2);
  for (unsigned prec = 1; prec < ring.k(); prec *= 2) {
    b = b * (two - a * b);
  }
  return b;
}

RingElem reduce_precision(const RingElem& a, unsigned k_new) {
  const Ring target = a.ring().with_precision(k_new);
  Coeffs c{};
  for (unsigned i = 0; i < target.tau(); ++i) c[i] = a.coeffs()[i] % target.modulus();
  return RingElem(target, c);
}

RingElem divide_by_p_power(const RingElem& a, unsigned i) {
  const Ring& ring = a.ring();
  if (i >= ring.k()) {
    raise(ErrorKind::InvalidArgument, "division by p^i needs i < k");
  }
  const std::uint64_t pi = checked_pow(ring.p(), i);
  const Ring target = ring.with_precision(ring.k() - i);
  Coeffs c{};
  for (unsigned j = 0; j < ring.tau(); ++j) {
    if (a.coeffs()[j] % pi != 0) {
      raise(ErrorKind::CongruenceFailed,
            "coefficient " + std::to_string(a.coeffs()[j]) + " not divisible by p^" +
                std::to_string(i));
    }
    c[j] = (a.coeffs()[j] / pi) % target.modulus();
  }
  return RingElem(target, c);
}

}  // namespace torusrf
