#include <doctest.h>

#include <random>

#include "shiftvar/prime_field.hpp"

using namespace shiftvar;

TEST_CASE("field construction accepts odd primes only") {
  CHECK(PrimeField(7).p() == 7);
  CHECK_THROWS_WITH_AS(PrimeField(9), doctest::Contains("NotPrime"), Error);
  CHECK_THROWS_WITH_AS(PrimeField(2), doctest::Contains("EvenOrTooSmall"),
                       Error);
  CHECK_THROWS_AS(PrimeField(0), Error);
  CHECK_THROWS_AS(PrimeField(1), Error);
}

TEST_CASE("primality test is exact on known hard composites") {
  // Carmichael numbers and strong pseudoprimes to small bases
  CHECK_FALSE(is_prime_u64(561));
  CHECK_FALSE(is_prime_u64(1105));
  CHECK_FALSE(is_prime_u64(3215031751ull));      // spsp to 2,3,5,7
  CHECK_FALSE(is_prime_u64(3825123056546413051ull));
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64((u64{1} << 61) - 1));       // Mersenne
  CHECK(is_prime_u64(1009));
  CHECK_FALSE(is_prime_u64(1));
  CHECK(next_prime_above(16) == 17);
  CHECK(next_prime_above(0) == 3);
  CHECK(next_prime_above(2) == 3);
}

TEST_CASE("basic operations in F_7") {
  const PrimeField f(7);
  CHECK((f.element(3) * f.element(5)).v == 1);
  CHECK(inv(f.element(3)).v == 5);
  CHECK_THROWS_WITH_AS(inv(f.zero()), doctest::Contains("DivisionByZero"),
                       Error);
  CHECK((f.element(3) + f.element(5)).v == 1);
  CHECK((f.element(3) - f.element(5)).v == 5);
  CHECK((-f.element(3)).v == 4);
  CHECK(pow(f.element(3), 0).v == 1);
  CHECK(pow(f.element(3), 6).v == 1);
}

TEST_CASE("mixing fields is rejected") {
  const PrimeField f7(7), f11(11);
  CHECK_THROWS_WITH_AS(f7.element(1) + f11.element(1),
                       doctest::Contains("FieldMismatch"), Error);
}

TEST_CASE("balanced representatives") {
  const PrimeField f(7);
  CHECK(balanced(f.element(6)) == -1);
  CHECK(balanced(f.element(3)) == 3);
  CHECK(balanced(f.element(0)) == 0);
  // round trip: canonical(balanced(a)) == a
  for (u64 v = 0; v < 7; ++v)
    CHECK(f.element(balanced(f.from_canonical(v))).v == v);
}

TEST_CASE("inverse property over random elements") {
  const PrimeField f(1009);
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    const FieldElement a = f.from_canonical(1 + rng() % 1008);
    CHECK((a * inv(a)).v == 1);
  }
}

TEST_CASE("kernel of a single-row matrix") {
  MatrixFp m(1, 3, 7);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(0, 2) = 3;
  const auto basis = kernel_basis(m);
  REQUIRE(basis.size() == 2);
  CHECK(basis[0] == std::vector<u64>{5, 1, 0});
  CHECK(basis[1] == std::vector<u64>{4, 0, 1});
}

TEST_CASE("kernel of identity and zero matrices") {
  const auto id_basis = kernel_basis(identity_matrix(3, 5));
  CHECK(id_basis.empty());

  MatrixFp z(2, 2, 5);
  const auto z_basis = kernel_basis(z);
  REQUIRE(z_basis.size() == 2);
  CHECK(z_basis[0] == std::vector<u64>{1, 0});
  CHECK(z_basis[1] == std::vector<u64>{0, 1});
}

TEST_CASE("kernel basis is sound, complete, and deterministic") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const u64 p = trial % 2 == 0 ? 3 : 5;
    const std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 4;
    MatrixFp m(rows, cols, p);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rng() % p;

    const auto basis = kernel_basis(m);
    // soundness: M v = 0 for every basis vector
    for (const auto& v : basis) {
      const auto mv = mat_vec(m, v);
      for (u64 x : mv) CHECK(x == 0);
    }
    CHECK(kernel_basis(m) == basis);  // bit-identical rerun

    // completeness against the exhaustive scan of F_p^cols
    u64 total = 1;
    for (std::size_t i = 0; i < cols; ++i) total *= p;
    u64 null_count = 0;
    std::vector<u64> v(cols);
    for (u64 code = 0; code < total; ++code) {
      u64 rem = code;
      for (std::size_t i = cols; i-- > 0;) {
        v[i] = rem % p;
        rem /= p;
      }
      bool in_null = true;
      for (u64 x : mat_vec(m, v)) in_null = in_null && x == 0;
      if (in_null) ++null_count;
    }
    u64 span_size = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) span_size *= p;
    CHECK(null_count == span_size);
    CHECK(basis.size() == cols - rank(m));
  }
}
