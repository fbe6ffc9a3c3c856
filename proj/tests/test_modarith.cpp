#include "doctest.h"

#include <random>

#include "modcurve/errors.hpp"
#include "modcurve/modarith.hpp"
#include "oracles.hpp"

using namespace modcurve;

namespace {

oracle::M as_oracle(const Mat2& m) {
  return {static_cast<std::int64_t>(m.a()), static_cast<std::int64_t>(m.b()),
          static_cast<std::int64_t>(m.c()), static_cast<std::int64_t>(m.d())};
}

}  // namespace

TEST_CASE("integer helpers") {
  CHECK(gcd(12, 18) == 6);
  CHECK(lcm(4, 6) == 12);
  CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
  CHECK(euler_phi(36) == 12);
  CHECK(valuation(48, 2) == 4);
  CHECK(prime_support(360) == std::vector<std::uint64_t>{2, 3, 5});
  CHECK_THROWS_AS(ipow(10, 30), InvalidArgument);
  for (std::uint64_t n = 0; n < 2000; ++n) CHECK(is_prime(n) == oracle::is_prime(n));
  CHECK(is_prime(1000000007ULL));
  CHECK_FALSE(is_prime(1000000007ULL * 3));
}

TEST_CASE("Modulus factorization invariants") {
  for (std::uint64_t n = 1; n <= 500; ++n) {
    Modulus m(n);
    std::uint64_t prod = 1;
    std::uint64_t last = 0;
    for (const auto& pp : m.factorization()) {
      CHECK(pp.prime > last);
      last = pp.prime;
      prod *= ipow(pp.prime, pp.exponent);
    }
    CHECK(prod == n);
  }
  CHECK_THROWS_AS(Modulus(0), InvalidArgument);
  CHECK_THROWS_AS(Modulus(12).inverse(4), NotInvertible);
  CHECK(Modulus(12).inverse(5) == 5);
}

TEST_CASE("mat_mul examples") {
  CHECK(Mat2::identity(9) * Mat2::identity(9) == Mat2::identity(9));
  const Mat2 t(5, 1, 1, 0, 1);
  const Mat2 u(5, 1, 0, 1, 1);
  CHECK(t * u == Mat2(5, 2, 1, 1, 1));
  CHECK(as_oracle(t * u) == oracle::mul(as_oracle(t), as_oracle(u), 5));
  CHECK_THROWS_AS(Mat2(5, 1, 0, 0, 1) * Mat2(7, 1, 0, 0, 1), ModulusMismatch);
}

TEST_CASE("entries are reduced into [0, n)") {
  const Mat2 m(7, -1, 15, -8, 7);
  CHECK(m == Mat2(7, 6, 1, 6, 0));
  const Vec2 v(10, -3, 23);
  CHECK(v.x() == 7);
  CHECK(v.y() == 3);
}

TEST_CASE("product agrees with the scalar-loop oracle mod 7 and mod 1000003") {
  std::mt19937_64 rng(7);
  for (std::uint64_t n : {7ULL, 1000003ULL, 4294967311ULL}) {
    std::uniform_int_distribution<std::int64_t> dist(0, static_cast<std::int64_t>(n) - 1);
    for (int i = 0; i < 200; ++i) {
      Mat2 a(n, dist(rng), dist(rng), dist(rng), dist(rng));
      Mat2 b(n, dist(rng), dist(rng), dist(rng), dist(rng));
      CHECK(as_oracle(a * b) == oracle::mul(as_oracle(a), as_oracle(b), n));
    }
  }
}

TEST_CASE("inverse and determinant") {
  CHECK(det(Mat2(7, 2, 0, 0, 3)) == 6);
  CHECK(inverse(Mat2(11, 0, 1, 1, 0)) == Mat2(11, 0, 1, 1, 0));
  CHECK_THROWS_AS(inverse(Mat2(4, 2, 0, 0, 1)), NotInvertible);
  for (std::int64_t a = 0; a < 7; ++a)
    for (std::int64_t b = 0; b < 7; ++b)
      for (std::int64_t c = 0; c < 7; ++c)
        for (std::int64_t d = 0; d < 7; ++d) {
          Mat2 m(7, a, b, c, d);
          if (!is_invertible(m)) continue;
          CHECK(m * inverse(m) == Mat2::identity(7));
          CHECK(inverse(m) * m == Mat2::identity(7));
        }
}

TEST_CASE("det is multiplicative (randomized, n <= 997)") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::uint64_t> nd(1, 997);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t n = nd(rng);
    std::uniform_int_distribution<std::int64_t> e(0, static_cast<std::int64_t>(n) - 1);
    Mat2 a(n, e(rng), e(rng), e(rng), e(rng));
    Mat2 b(n, e(rng), e(rng), e(rng), e(rng));
    CHECK(det(a * b) == mulmod(det(a), det(b), n));
  }
}

TEST_CASE("power by squaring matches repeated products") {
  const Mat2 g(13, 2, 5, 7, 1);
  Mat2 acc = Mat2::identity(13);
  for (std::uint64_t e = 0; e < 40; ++e) {
    CHECK(power(g, e) == acc);
    acc = acc * g;
  }
}

TEST_CASE("reduce and CRT") {
  CHECK(reduce(Mat2(12, 6, 1, 0, 7), 4) == Mat2(4, 2, 1, 0, 3));
  CHECK_THROWS_AS(reduce(Mat2(12, 1, 0, 0, 1), 5), InvalidArgument);

  const std::vector<std::uint64_t> f35{5, 7};
  const auto parts = crt_split(Mat2::identity(35), f35);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == Mat2::identity(5));
  CHECK(parts[1] == Mat2::identity(7));

  const std::vector<Mat2> comps{Mat2(5, 1, 0, 0, 1), Mat2(7, 2, 0, 0, 1)};
  const Mat2 joined = crt_join(comps);
  CHECK(joined.modulus() == 35);
  CHECK(reduce(joined, 5) == comps[0]);
  CHECK(reduce(joined, 7) == comps[1]);

  const std::vector<std::uint64_t> bad{2, 6};
  CHECK_THROWS_AS(crt_split(Mat2::identity(12), bad), NonCoprimeModuli);
  const std::vector<std::uint64_t> wrong_product{2, 3};
  CHECK_THROWS(crt_split(Mat2::identity(12), wrong_product));
}

TEST_CASE("crt_join(crt_split(A)) = A for every matrix mod 30") {
  const std::vector<std::uint64_t> f{2, 3, 5};
  for (std::int64_t a = 0; a < 30; ++a)
    for (std::int64_t b = 0; b < 30; ++b)
      for (std::int64_t c = 0; c < 30; ++c)
        for (std::int64_t d = 0; d < 30; ++d) {
          const Mat2 m(30, a, b, c, d);
          const auto parts = crt_split(m, f);
          if (crt_join(parts) != m) {
            FAIL("round trip failed for " << m);
          }
        }
}

TEST_CASE("vectors") {
  const Vec2 v(12, 4, 6);
  CHECK(order(v) == 6);
  CHECK(order(Vec2(12, 0, 0)) == 1);
  CHECK(Mat2(12, 0, 1, 1, 0) * v == Vec2(12, 6, 4));
  CHECK(reduce(Vec2(12, 5, 7), 4) == Vec2(4, 1, 3));
  CHECK(-Vec2(12, 5, 0) == Vec2(12, 7, 0));
  CHECK(scale(3, Vec2(12, 5, 1)) == Vec2(12, 3, 3));
}

TEST_CASE("gl2_order and sl2_order") {
  CHECK(gl2_order(1) == 1);
  CHECK(gl2_order(2) == 6);
  CHECK(gl2_order(37) == 1822176);
  CHECK(gl2_order(37) == 32ULL * 81 * 19 * 37);
  CHECK(gl2_order(8) == 1536);
  for (std::uint64_t n = 1; n <= 12; ++n) {
    CHECK(gl2_order(n) == oracle::count_invertible(n));
  }
  for (std::uint64_t n = 1; n <= 200; ++n) {
    std::uint64_t prod = 1;
    for (const auto& pp : factorize(n)) prod *= gl2_order(ipow(pp.prime, pp.exponent));
    CHECK(gl2_order(n) == prod);
    CHECK(sl2_order(n) * euler_phi(n) == gl2_order(n));
  }
  CHECK_THROWS_AS(gl2_order(1ULL << 40), InvalidArgument);
}
