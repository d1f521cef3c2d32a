#include <doctest.h>

#include <random>

#include "torusrf/error.hpp"
#include "torusrf/localring.hpp"

using namespace torusrf;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

// Extended Euclid, independent of the Newton lift.
std::int64_t euclid_inverse(std::int64_t a, std::int64_t n) {
  std::int64_t r0 = n, r1 = a % n, s0 = 0, s1 = 1;
  while (r1) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  REQUIRE(r0 == 1);
  return ((s0 % n) + n) % n;
}

RingElem random_elem(const Ring& r, std::mt19937_64& rng) { return r.from_index(rng() % *r.size()); }

}  // namespace

TEST_CASE("make_ring validates its parameters") {
  const Ring z25 = make_ring(5, 2);
  CHECK(z25.modulus() == 25);
  CHECK(z25.tau() == 1);
  CHECK(*z25.size() == 25);

  const Ring f4 = make_ring(2, 1, 2, std::vector<std::int64_t>{1, 1});
  CHECK(*f4.size() == 4);
  CHECK(f4 == make_ring(2, 1, 2, std::vector<std::int64_t>{1, 1}));

  CHECK(kind_of([] { make_ring(4, 1); }) == ErrorKind::CompositeP);
  CHECK(kind_of([] { make_ring(1, 1); }) == ErrorKind::CompositeP);
  CHECK(kind_of([] { make_ring(5, 2, 2); }) == ErrorKind::MissingModulus);
  // x^2 + 1 = (x - 2)(x + 2) mod 5
  CHECK(kind_of([] { make_ring(5, 1, 2, std::vector<std::int64_t>{1, 0}); }) == ErrorKind::ReducibleModulus);
  // x^2 + x = x (x + 1)
  CHECK(kind_of([] { make_ring(2, 1, 2, std::vector<std::int64_t>{0, 1}); }) == ErrorKind::ReducibleModulus);
  CHECK(kind_of([] { make_ring(2, 1, 5, std::vector<std::int64_t>{1, 0, 1, 0, 0}); }) ==
        ErrorKind::UnsupportedDegree);
}

TEST_CASE("irreducibility in degrees 3 and 4") {
  // x^3 + x + 1 and x^4 + x + 1 are irreducible over F_2
  CHECK_NOTHROW(make_ring(2, 1, 3, std::vector<std::int64_t>{1, 1, 0}));
  CHECK_NOTHROW(make_ring(2, 1, 4, std::vector<std::int64_t>{1, 1, 0, 0}));
  // x^4 + x^2 + 1 = (x^2 + x + 1)^2 has no roots but is reducible
  CHECK(kind_of([] { make_ring(2, 1, 4, std::vector<std::int64_t>{1, 0, 1, 0}); }) ==
        ErrorKind::ReducibleModulus);
}

TEST_CASE("built-in moduli are irreducible") {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    auto m = default_modulus(p, 2);
    REQUIRE(m);
    CHECK_NOTHROW(make_ring(p, 3, 2, m));
  }
  CHECK_FALSE(default_modulus(11, 2));
}

TEST_CASE("arith examples") {
  const Ring z25 = make_ring(5, 2);
  CHECK((z25.from_int(18) + z25.from_int(9)).to_string() == "2");
  CHECK(arith(z25.from_int(18), z25.from_int(9), ArithOp::Add) == z25.from_int(2));
  CHECK(arith(z25.from_int(3), z25.from_int(9), ArithOp::Sub) == z25.from_int(-6));
  CHECK(z25.from_int(-1).to_string() == "24");

  const Ring f4 = make_ring(2, 1, 2, std::vector<std::int64_t>{1, 1});
  const RingElem x = f4.from_coeffs({0, 1});
  const RingElem x1 = f4.from_coeffs({1, 1});
  CHECK((x * x1).is_one());
  CHECK((x * f4.zero()).is_zero());
  CHECK(x1.to_string() == "1,1");

  const Ring z5 = make_ring(5, 1);
  CHECK(kind_of([&] { (void)(z25.one() + z5.one()); }) == ErrorKind::RingMismatch);
}

TEST_CASE("unit_inverse") {
  const Ring z25 = make_ring(5, 2);
  CHECK(unit_inverse(z25.from_int(7)) == z25.from_int(18));
  CHECK(unit_inverse(z25.one()).is_one());
  CHECK(kind_of([&] { unit_inverse(z25.from_int(5)); }) == ErrorKind::NotAUnit);
  CHECK(kind_of([&] { unit_inverse(z25.zero()); }) == ErrorKind::NotAUnit);

  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (unsigned k = 1; k <= 4; ++k) {
      const Ring r = make_ring(p, k);
      for (std::uint64_t a = 0; a < r.modulus(); ++a) {
        if (a % p == 0) continue;
        const auto inv = unit_inverse(r.from_int(static_cast<std::int64_t>(a)));
        CHECK(inv.coeff(0) == static_cast<std::uint64_t>(euclid_inverse(static_cast<std::int64_t>(a),
                                                                       static_cast<std::int64_t>(r.modulus()))));
      }
    }
  }
}

TEST_CASE("unit_inverse in Galois rings") {
  std::mt19937_64 rng(7);
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (unsigned k = 1; k <= 4; ++k) {
      const Ring r = make_default_ring(p, k, 2);
      for (int t = 0; t < 200; ++t) {
        const RingElem a = random_elem(r, rng);
        if (!a.is_unit()) {
          CHECK(kind_of([&] { unit_inverse(a); }) == ErrorKind::NotAUnit);
          continue;
        }
        CHECK((a * unit_inverse(a)).is_one());
      }
    }
  }
}

TEST_CASE("reduce_precision") {
  const Ring z25 = make_ring(5, 2);
  const RingElem a = z25.from_int(18);
  CHECK(reduce_precision(a, 1).to_string() == "3");
  CHECK(reduce_precision(a, 1).ring() == make_ring(5, 1));
  CHECK(reduce_precision(a, 2) == a);
  CHECK(kind_of([&] { reduce_precision(a, 3); }) == ErrorKind::PrecisionIncrease);

  const Ring f4 = make_ring(2, 1, 2, std::vector<std::int64_t>{1, 1});
  const RingElem x = f4.from_coeffs({0, 1});
  CHECK(reduce_precision(x, 1) == x);
}

TEST_CASE("divide_by_p_power") {
  const Ring z125 = make_ring(5, 3);
  const RingElem a = z125.from_int(50);
  CHECK(divide_by_p_power(a, 1) == make_ring(5, 2).from_int(10));
  CHECK(divide_by_p_power(a, 2) == make_ring(5, 1).from_int(2));
  CHECK(kind_of([&] { divide_by_p_power(z125.from_int(7), 1); }) == ErrorKind::CongruenceFailed);
}

TEST_CASE("ring axioms and reduction homomorphism") {
  std::mt19937_64 rng(11);
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (unsigned k = 1; k <= 4; ++k) {
      for (unsigned tau = 1; tau <= 2; ++tau) {
        const Ring r = make_default_ring(p, k, tau);
        for (int t = 0; t < 100; ++t) {
          const RingElem a = random_elem(r, rng), b = random_elem(r, rng), c = random_elem(r, rng);
          CHECK((a * b) * c == a * (b * c));
          CHECK((a + b) + c == a + (b + c));
          CHECK(a * (b + c) == a * b + a * c);
          CHECK(a * b == b * a);
          CHECK(a + b == b + a);
          CHECK(a - a == r.zero());
          CHECK(a * r.one() == a);
          CHECK(r.from_index(a.index()) == a);
          for (unsigned k1 = 1; k1 <= k; ++k1) {
            CHECK(reduce_precision(a * b, k1) == reduce_precision(a, k1) * reduce_precision(b, k1));
            CHECK(reduce_precision(a + b, k1) == reduce_precision(a, k1) + reduce_precision(b, k1));
            for (unsigned k2 = 1; k2 <= k1; ++k2) {
              CHECK(reduce_precision(reduce_precision(a, k1), k2) == reduce_precision(a, k2));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("primality") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(is_prime(1'000'000'007));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
}
