#pragma once

// Exact arithmetic in Z/nZ, on 2x2 matrices and column vectors over Z/nZ,
// and CRT decomposition between coprime moduli.

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <vector>

#include "modcurve/errors.hpp"

namespace modcurve {

using Residue = std::uint64_t;

/// Largest modulus accepted anywhere in the library.
inline constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 63) - 1;

struct PrimePower {
  std::uint64_t prime = 0;
  int exponent = 0;

  std::uint64_t value() const;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// ---------------------------------------------------------------------------
// Integer helpers

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm(std::uint64_t a, std::uint64_t b);
bool is_prime(std::uint64_t n);
/// Trial division; primes strictly increasing.
std::vector<PrimePower> factorize(std::uint64_t n);
std::vector<std::uint64_t> prime_support(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
/// Exponent of the prime p in n (n > 0).
int valuation(std::uint64_t n, std::uint64_t p);
std::uint64_t ipow(std::uint64_t base, int exp);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t n);
/// Signed reduction into [0, n).
Residue reduce_signed(std::int64_t x, std::uint64_t n);

/// A positive modulus together with its prime factorization.
class Modulus {
 public:
  explicit Modulus(std::uint64_t n);

  std::uint64_t value() const noexcept { return n_; }
  const std::vector<PrimePower>& factorization() const noexcept { return factors_; }
  std::vector<std::uint64_t> primes() const;

  Residue reduce(std::int64_t x) const { return reduce_signed(x, n_); }
  Residue add(Residue a, Residue b) const;
  Residue sub(Residue a, Residue b) const;
  Residue mul(Residue a, Residue b) const { return mulmod(a, b, n_); }
  bool is_unit(Residue a) const { return gcd(a % n_, n_) == 1; }
  /// Throws NotInvertible for non-units.
  Residue inverse(Residue a) const;

  friend bool operator==(const Modulus& x, const Modulus& y) { return x.n_ == y.n_; }

 private:
  std::uint64_t n_;
  std::vector<PrimePower> factors_;
};

/// 2x2 matrix over Z/nZ, entries kept in [0, n).
///
/// Row-major: [[a, b], [c, d]].
class Mat2 {
 public:
  Mat2(std::uint64_t n, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

  static Mat2 identity(std::uint64_t n) { return Mat2(n, 1, 0, 0, 1); }
  /// Builds from residues already in [0, n); no reduction.
  static Mat2 from_reduced(std::uint64_t n, Residue a, Residue b, Residue c, Residue d);

  std::uint64_t modulus() const noexcept { return n_; }
  Residue a() const noexcept { return e_[0]; }
  Residue b() const noexcept { return e_[1]; }
  Residue c() const noexcept { return e_[2]; }
  Residue d() const noexcept { return e_[3]; }
  Residue entry(int i) const noexcept { return e_[i]; }

  bool is_identity() const noexcept;

  friend bool operator==(const Mat2& x, const Mat2& y) = default;
  friend auto operator<=>(const Mat2& x, const Mat2& y) = default;

 private:
  Mat2() = default;

  std::uint64_t n_ = 1;
  Residue e_[4] = {0, 0, 0, 0};
};

std::ostream& operator<<(std::ostream& os, const Mat2& m);

Mat2 operator*(const Mat2& x, const Mat2& y);
Residue det(const Mat2& m);
bool is_invertible(const Mat2& m);
Mat2 inverse(const Mat2& m);
Mat2 negate(const Mat2& m);
/// Integer power by repeated squaring (non-negative exponent).
Mat2 power(const Mat2& m, std::uint64_t e);

/// Entrywise reduction to a divisor m of the modulus.
Mat2 reduce(const Mat2& x, std::uint64_t m);

/// Components modulo each factor; factors must be pairwise coprime with
/// product equal to the modulus.
std::vector<Mat2> crt_split(const Mat2& x, std::span<const std::uint64_t> factors);
/// Inverse of crt_split; component moduli must be pairwise coprime.
Mat2 crt_join(std::span<const Mat2> parts);
/// Integer solving x = r_i mod m_i for pairwise coprime moduli.
std::uint64_t crt_combine(std::span<const std::uint64_t> residues,
                          std::span<const std::uint64_t> moduli);

/// Column vector over Z/nZ.
class Vec2 {
 public:
  Vec2(std::uint64_t n, std::int64_t x, std::int64_t y);

  std::uint64_t modulus() const noexcept { return n_; }
  Residue x() const noexcept { return x_; }
  Residue y() const noexcept { return y_; }
  bool is_zero() const noexcept { return x_ == 0 && y_ == 0; }

  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend auto operator<=>(const Vec2&, const Vec2&) = default;

 private:
  std::uint64_t n_;
  Residue x_;
  Residue y_;
};

std::ostream& operator<<(std::ostream& os, const Vec2& v);

Vec2 operator*(const Mat2& g, const Vec2& v);
Vec2 operator+(const Vec2& u, const Vec2& v);
Vec2 operator-(const Vec2& v);
Vec2 scale(std::uint64_t k, const Vec2& v);
Vec2 reduce(const Vec2& v, std::uint64_t m);
/// Additive order of v in (Z/nZ)^2, i.e. n / gcd(n, x, y).
std::uint64_t order(const Vec2& v);

/// #GL_2(Z/nZ); throws InvalidArgument when the result overflows 64 bits.
std::uint64_t gl2_order(std::uint64_t n);
/// #SL_2(Z/nZ) = #GL_2(Z/nZ) / phi(n).
std::uint64_t sl2_order(std::uint64_t n);

}  // namespace modcurve

template <>
struct std::hash<modcurve::Mat2> {
  std::size_t operator()(const modcurve::Mat2& m) const noexcept;
};
