#include "modcurve/modarith.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace modcurve {

namespace {

void require_modulus(std::uint64_t n) {
  if (n == 0 || n > kMaxModulus) {
    throw InvalidArgument("modulus must lie in [1, 2^63-1], got " + std::to_string(n));
  }
}

void require_same(std::uint64_t n, std::uint64_t m) {
  if (n != m) {
    throw ModulusMismatch("modulus mismatch: " + std::to_string(n) + " vs " +
                          std::to_string(m));
  }
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw InvalidArgument("integer overflow in group order computation");
  }
  return a * b;
}

// Extended Euclid on signed 128-bit values; returns inverse of a mod n or 0.
std::uint64_t inverse_or_zero(std::uint64_t a, std::uint64_t n) {
  __int128 t = 0, new_t = 1;
  __int128 r = n, new_r = a % n;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) return 0;
  if (t < 0) t += n;
  return static_cast<std::uint64_t>(t);
}

}  // namespace

std::uint64_t PrimePower::value() const { return ipow(prime, exponent); }

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / gcd(a, b), b);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<PrimePower> factorize(std::uint64_t n) {
  require_modulus(n);
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    PrimePower pp{p, 0};
    while (n % p == 0) {
      n /= p;
      ++pp.exponent;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<std::uint64_t> prime_support(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (const auto& pp : factorize(n)) out.push_back(pp.prime);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (const auto& pp : factorize(n)) {
    const std::size_t base = out.size();
    std::uint64_t q = 1;
    for (int e = 1; e <= pp.exponent; ++e) {
      q *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (const auto& pp : factorize(n)) phi = phi / pp.prime * (pp.prime - 1);
  return phi;
}

int valuation(std::uint64_t n, std::uint64_t p) {
  if (n == 0 || p < 2) throw InvalidArgument("valuation needs n > 0 and p >= 2");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  std::uint64_t r = 1 % n;
  a %= n;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, n);
    a = mulmod(a, a, n);
    e >>= 1;
  }
  return r;
}

Residue reduce_signed(std::int64_t x, std::uint64_t n) {
  if (x >= 0) return static_cast<std::uint64_t>(x) % n;
  // -(x+1) avoids overflow at INT64_MIN.
  const std::uint64_t neg = static_cast<std::uint64_t>(-(x + 1)) + 1;
  const std::uint64_t r = neg % n;
  return r == 0 ? 0 : n - r;
}

// ---------------------------------------------------------------------------

Modulus::Modulus(std::uint64_t n) : n_(n), factors_(factorize(n)) {}

std::vector<std::uint64_t> Modulus::primes() const {
  std::vector<std::uint64_t> out;
  for (const auto& pp : factors_) out.push_back(pp.prime);
  return out;
}

Residue Modulus::add(Residue a, Residue b) const {
  a %= n_;
  b %= n_;
  return a >= n_ - b ? a - (n_ - b) : a + b;
}

Residue Modulus::sub(Residue a, Residue b) const {
  a %= n_;
  b %= n_;
  return a >= b ? a - b : a + (n_ - b);
}

Residue Modulus::inverse(Residue a) const {
  if (n_ == 1) return 0;
  const std::uint64_t inv = inverse_or_zero(a, n_);
  if (inv == 0) {
    throw NotInvertible(std::to_string(a) + " is not a unit mod " + std::to_string(n_));
  }
  return inv;
}

// ---------------------------------------------------------------------------

Mat2::Mat2(std::uint64_t n, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
    : n_(n) {
  require_modulus(n);
  e_[0] = reduce_signed(a, n);
  e_[1] = reduce_signed(b, n);
  e_[2] = reduce_signed(c, n);
  e_[3] = reduce_signed(d, n);
}

Mat2 Mat2::from_reduced(std::uint64_t n, Residue a, Residue b, Residue c, Residue d) {
  Mat2 m;
  m.n_ = n;
  m.e_[0] = a;
  m.e_[1] = b;
  m.e_[2] = c;
  m.e_[3] = d;
  return m;
}

bool Mat2::is_identity() const noexcept {
  const Residue one = 1 % n_;
  return e_[0] == one && e_[1] == 0 && e_[2] == 0 && e_[3] == one;
}

std::ostream& operator<<(std::ostream& os, const Mat2& m) {
  return os << "[[" << m.a() << "," << m.b() << "],[" << m.c() << "," << m.d()
            << "]] mod " << m.modulus();
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  require_same(x.modulus(), y.modulus());
  const std::uint64_t n = x.modulus();
  auto dot = [n](Residue p, Residue q, Residue r, Residue s) {
    const unsigned __int128 v = static_cast<unsigned __int128>(p) * q +
                                static_cast<unsigned __int128>(r) * s;
    return static_cast<Residue>(v % n);
  };
  return Mat2::from_reduced(n, dot(x.a(), y.a(), x.b(), y.c()), dot(x.a(), y.b(), x.b(), y.d()),
                            dot(x.c(), y.a(), x.d(), y.c()), dot(x.c(), y.b(), x.d(), y.d()));
}

Residue det(const Mat2& m) {
  const std::uint64_t n = m.modulus();
  const Residue ad = mulmod(m.a(), m.d(), n);
  const Residue bc = mulmod(m.b(), m.c(), n);
  return ad >= bc ? ad - bc : ad + (n - bc);
}

bool is_invertible(const Mat2& m) { return gcd(det(m), m.modulus()) == 1; }

Mat2 inverse(const Mat2& m) {
  const std::uint64_t n = m.modulus();
  if (n == 1) return m;
  const Residue dinv = inverse_or_zero(det(m), n);
  if (dinv == 0) {
    throw NotInvertible("determinant " + std::to_string(det(m)) + " is not a unit mod " +
                        std::to_string(n));
  }
  auto neg = [n](Residue r) { return r == 0 ? 0 : n - r; };
  return Mat2::from_reduced(n, mulmod(dinv, m.d(), n), mulmod(dinv, neg(m.b()), n),
                            mulmod(dinv, neg(m.c()), n), mulmod(dinv, m.a(), n));
}

Mat2 negate(const Mat2& m) {
  const std::uint64_t n = m.modulus();
  auto neg = [n](Residue r) { return r == 0 ? 0 : n - r; };
  return Mat2::from_reduced(n, neg(m.a()), neg(m.b()), neg(m.c()), neg(m.d()));
}

Mat2 power(const Mat2& m, std::uint64_t e) {
  Mat2 result = Mat2::identity(m.modulus());
  Mat2 base = m;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

Mat2 reduce(const Mat2& x, std::uint64_t m) {
  require_modulus(m);
  if (x.modulus() % m != 0) {
    throw InvalidArgument(std::to_string(m) + " does not divide " +
                          std::to_string(x.modulus()));
  }
  return Mat2::from_reduced(m, x.a() % m, x.b() % m, x.c() % m, x.d() % m);
}

std::uint64_t crt_combine(std::span<const std::uint64_t> residues,
                          std::span<const std::uint64_t> moduli) {
  if (residues.size() != moduli.size()) throw InvalidArgument("crt: size mismatch");
  std::uint64_t x = 0;
  std::uint64_t m = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const std::uint64_t mi = moduli[i];
    require_modulus(mi);
    if (gcd(m, mi) != 1) {
      throw NonCoprimeModuli("crt: moduli " + std::to_string(m) + " and " + std::to_string(mi) +
                             " are not coprime");
    }
    // x' = x + m * ((r - x) * m^{-1} mod mi)
    const std::uint64_t mm = m % mi;
    const std::uint64_t minv = mi == 1 ? 0 : inverse_or_zero(mm, mi);
    const std::uint64_t r = residues[i] % mi;
    const std::uint64_t xr = x % mi;
    const std::uint64_t diff = r >= xr ? r - xr : r + (mi - xr);
    const std::uint64_t t = mulmod(diff, minv, mi);
    const std::uint64_t next_m = checked_mul(m, mi);
    x = static_cast<std::uint64_t>((static_cast<unsigned __int128>(m) * t + x) % next_m);
    m = next_m;
  }
  return x;
}

std::vector<Mat2> crt_split(const Mat2& x, std::span<const std::uint64_t> factors) {
  std::uint64_t product = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      if (gcd(factors[i], factors[j]) != 1) {
        throw NonCoprimeModuli("crt_split: factors " + std::to_string(factors[i]) + " and " +
                               std::to_string(factors[j]) + " are not coprime");
      }
    }
    product = checked_mul(product, factors[i]);
  }
  if (product != x.modulus()) {
    throw InvalidArgument("crt_split: factors multiply to " + std::to_string(product) +
                          ", expected " + std::to_string(x.modulus()));
  }
  std::vector<Mat2> out;
  out.reserve(factors.size());
  for (std::uint64_t f : factors) out.push_back(reduce(x, f));
  return out;
}

Mat2 crt_join(std::span<const Mat2> parts) {
  std::vector<std::uint64_t> moduli;
  for (const auto& p : parts) moduli.push_back(p.modulus());
  Residue e[4];
  for (int k = 0; k < 4; ++k) {
    std::vector<std::uint64_t> residues;
    for (const auto& p : parts) residues.push_back(p.entry(k));
    e[k] = crt_combine(residues, moduli);
  }
  std::uint64_t n = 1;
  for (std::uint64_t m : moduli) n *= m;
  return Mat2::from_reduced(n, e[0] % n, e[1] % n, e[2] % n, e[3] % n);
}

// ---------------------------------------------------------------------------

Vec2::Vec2(std::uint64_t n, std::int64_t x, std::int64_t y) : n_(n) {
  require_modulus(n);
  x_ = reduce_signed(x, n);
  y_ = reduce_signed(y, n);
}

std::ostream& operator<<(std::ostream& os, const Vec2& v) {
  return os << "(" << v.x() << "," << v.y() << ") mod " << v.modulus();
}

namespace {
Vec2 make_vec(std::uint64_t n, Residue x, Residue y) {
  // Residues are < n <= 2^63 - 1 and so fit in int64.
  return Vec2(n, static_cast<std::int64_t>(x), static_cast<std::int64_t>(y));
}
}  // namespace

Vec2 operator*(const Mat2& g, const Vec2& v) {
  require_same(g.modulus(), v.modulus());
  const std::uint64_t n = v.modulus();
  auto dot = [n](Residue p, Residue q, Residue r, Residue s) {
    const unsigned __int128 t = static_cast<unsigned __int128>(p) * q +
                                static_cast<unsigned __int128>(r) * s;
    return static_cast<Residue>(t % n);
  };
  return make_vec(n, dot(g.a(), v.x(), g.b(), v.y()), dot(g.c(), v.x(), g.d(), v.y()));
}

Vec2 operator+(const Vec2& u, const Vec2& v) {
  require_same(u.modulus(), v.modulus());
  const std::uint64_t n = u.modulus();
  auto add = [n](Residue a, Residue b) { return a >= n - b ? a - (n - b) : a + b; };
  return make_vec(n, add(u.x(), v.x()), add(u.y(), v.y()));
}

Vec2 operator-(const Vec2& v) {
  const std::uint64_t n = v.modulus();
  auto neg = [n](Residue r) { return r == 0 ? 0 : n - r; };
  return make_vec(n, neg(v.x()), neg(v.y()));
}

Vec2 scale(std::uint64_t k, const Vec2& v) {
  const std::uint64_t n = v.modulus();
  return make_vec(n, mulmod(k % n, v.x(), n), mulmod(k % n, v.y(), n));
}

Vec2 reduce(const Vec2& v, std::uint64_t m) {
  require_modulus(m);
  if (v.modulus() % m != 0) {
    throw InvalidArgument(std::to_string(m) + " does not divide " +
                          std::to_string(v.modulus()));
  }
  return make_vec(m, v.x() % m, v.y() % m);
}

std::uint64_t order(const Vec2& v) {
  const std::uint64_t n = v.modulus();
  return n / gcd(n, gcd(v.x(), v.y()));
}

// ---------------------------------------------------------------------------

std::uint64_t gl2_order(std::uint64_t n) {
  std::uint64_t total = 1;
  for (const auto& pp : factorize(n)) {
    const std::uint64_t l = pp.prime;
    // l^{4(k-1)} (l^2 - 1)(l^2 - l)
    std::uint64_t part = ipow(l, 4 * (pp.exponent - 1));
    part = checked_mul(part, checked_mul(l, l) - 1);
    part = checked_mul(part, checked_mul(l, l) - l);
    total = checked_mul(total, part);
  }
  return total;
}

std::uint64_t sl2_order(std::uint64_t n) { return gl2_order(n) / euler_phi(n); }

}  // namespace modcurve

std::size_t std::hash<modcurve::Mat2>::operator()(const modcurve::Mat2& m) const noexcept {
  std::size_t h = std::hash<std::uint64_t>{}(m.modulus());
  for (int i = 0; i < 4; ++i) {
    h ^= std::hash<std::uint64_t>{}(m.entry(i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}
