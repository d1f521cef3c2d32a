#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace torusrf {

using BigInt = boost::multiprecision::cpp_int;

/// Largest residue degree supported; irreducibility is decided by exhaustive
/// factor search, which is only practical for small degrees.
inline constexpr unsigned kMaxDegree = 4;

using Coeffs = std::array<std::uint64_t, kMaxDegree>;

/**
 * Parameters of a truncated unramified local ring
 *
 *     GR(p^k, tau) = (Z/p^k)[x] / (f),   f monic of degree tau,
 *
 * with f irreducible mod p. For tau = 1 this is just Z/p^k.
 *
 * Specs are interned: make_ring returns the same instance for equal
 * parameters, so ring identity is pointer identity.
 */
struct RingSpec {
  std::uint64_t p = 0;
  unsigned k = 0;
  unsigned tau = 0;
  std::uint64_t modulus = 0;  // p^k
  Coeffs poly{};              // f = x^tau + poly[tau-1] x^(tau-1) + ... + poly[0]
};

class RingElem;

/// Lightweight handle to an interned RingSpec.
class Ring {
 public:
  Ring() = default;

  std::uint64_t p() const { return spec_->p; }
  unsigned k() const { return spec_->k; }
  unsigned tau() const { return spec_->tau; }
  std::uint64_t modulus() const { return spec_->modulus; }
  const Coeffs& poly() const { return spec_->poly; }
  /// Lower coefficients of the defining polynomial (empty when tau = 1).
  std::vector<std::uint64_t> modulus_coefficients() const;

  /// Number of elements, p^(k*tau); nullopt if it overflows 64 bits.
  std::optional<std::uint64_t> size() const;

  RingElem zero() const;
  RingElem one() const;
  RingElem from_int(std::int64_t v) const;
  RingElem from_int(const BigInt& v) const;
  /// Coefficients lowest degree first; length must not exceed tau.
  RingElem from_coeffs(const std::vector<BigInt>& coeffs) const;
  /// The i-th element in the canonical enumeration (coefficients as base-p^k
  /// digits, lowest degree first). Inverse of RingElem::index.
  RingElem from_index(std::uint64_t index) const;

  /// Same p, tau and (reduced) modulus at precision k' <= k.
  Ring with_precision(unsigned k_new) const;
  /// The residue field F_q of this ring.
  Ring residue_field() const { return with_precision(1); }

  bool valid() const { return spec_ != nullptr; }
  const RingSpec* spec() const { return spec_; }

  friend bool operator==(const Ring& a, const Ring& b) { return a.spec_ == b.spec_; }

  std::string describe() const;

 private:
  explicit Ring(const RingSpec* spec) : spec_(spec) {}
  friend Ring make_ring(std::uint64_t, unsigned, unsigned,
                        const std::optional<std::vector<std::int64_t>>&);
  friend Ring intern_ring(const RingSpec&);

  const RingSpec* spec_ = nullptr;
};

/**
 * Validates and interns a ring.
 *
 * Throws CompositeP if p is not prime, MissingModulus if tau > 1 and no
 * modulus is given, ReducibleModulus if the modulus is reducible mod p,
 * UnsupportedDegree if tau > kMaxDegree. The modulus is given as the tau
 * lower coefficients (c_0, ..., c_{tau-1}) of the monic polynomial.
 */
Ring make_ring(std::uint64_t p, unsigned k, unsigned tau = 1,
               const std::optional<std::vector<std::int64_t>>& modulus = std::nullopt);

/// Built-in irreducible moduli for p <= 7, tau <= 2 (nullopt otherwise).
std::optional<std::vector<std::int64_t>> default_modulus(std::uint64_t p, unsigned tau);

/// make_ring with the built-in modulus when tau > 1.
Ring make_default_ring(std::uint64_t p, unsigned k, unsigned tau = 1);

bool is_prime(std::uint64_t n);

/// Element of a Ring; value type, trivially copyable.
class RingElem {
 public:
  RingElem() = default;

  const Ring& ring() const { return ring_; }
  const Coeffs& coeffs() const { return c_; }
  std::uint64_t coeff(unsigned i) const { return c_[i]; }

  bool is_zero() const;
  bool is_one() const;
  /// a is a unit iff its reduction to the residue field is nonzero.
  bool is_unit() const;

  /// Position in the canonical enumeration of the ring.
  std::uint64_t index() const;

  RingElem operator-() const;
  friend RingElem operator+(const RingElem& a, const RingElem& b);
  friend RingElem operator-(const RingElem& a, const RingElem& b);
  friend RingElem operator*(const RingElem& a, const RingElem& b);
  RingElem& operator+=(const RingElem& b) { return *this = *this + b; }
  RingElem& operator-=(const RingElem& b) { return *this = *this - b; }
  RingElem& operator*=(const RingElem& b) { return *this = *this * b; }

  /// Multiplication by an integer scalar.
  RingElem scaled(std::uint64_t s) const;

  friend bool operator==(const RingElem& a, const RingElem& b) {
    return a.ring_ == b.ring_ && a.c_ == b.c_;
  }
  friend auto operator<=>(const RingElem& a, const RingElem& b) { return a.c_ <=> b.c_; }

  /// Decimal for tau = 1, otherwise comma-separated coefficients.
  std::string to_string() const;
  std::vector<std::string> coeff_strings() const;

 private:
  RingElem(Ring ring, const Coeffs& c) : ring_(ring), c_(c) {}
  friend class Ring;
  friend RingElem unit_inverse(const RingElem&);
  friend RingElem reduce_precision(const RingElem&, unsigned);
  friend RingElem divide_by_p_power(const RingElem&, unsigned);

  Ring ring_;
  Coeffs c_{};
};

enum class ArithOp { Add, Sub, Mul };

RingElem arith(const RingElem& a, const RingElem& b, ArithOp op);

/// Inverse of a unit: inverted in the residue field, then Newton-lifted
/// (b <- b(2 - ab)) doubling the precision each round. Throws NotAUnit.
RingElem unit_inverse(const RingElem& a);

/// Coefficientwise reduction mod p^k'; a ring homomorphism.
/// Throws PrecisionIncrease if k' > k.
RingElem reduce_precision(const RingElem& a, unsigned k_new);

/// For a divisible by p^i: (a / p^i) as an element of precision k - i.
/// Throws CongruenceFailed if some coefficient is not divisible.
RingElem divide_by_p_power(const RingElem& a, unsigned i);

/// Power of a small integer, throws InvalidArgument on 64-bit overflow.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

}  // namespace torusrf
