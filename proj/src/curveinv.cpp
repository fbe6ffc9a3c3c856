#include "modcurve/curveinv.hpp"

#include <array>
#include <string>

#include "modcurve/errors.hpp"
#include "modcurve/modarith.hpp"

namespace modcurve {

namespace {

void require_positive(std::uint64_t n, const char* what) {
  if (n == 0) throw InvalidArgument(std::string(what) + " must be positive");
}

// Jordan totient J_2(n) = n^2 prod_{p | n} (1 - 1/p^2).
std::uint64_t jordan2(std::uint64_t n) {
  std::uint64_t j = 1;
  for (const auto& pp : factorize(n)) {
    j *= ipow(pp.prime, 2 * (pp.exponent - 1)) * (pp.prime * pp.prime - 1);
  }
  return j;
}

// Recorded Q-gonalities. These are trusted inputs, not computed here.
constexpr std::array<KnownGonality, 7> kKnownGonality{{
    {11, 2, "genus 1"},
    {13, 2, "hyperelliptic, genus 2"},
    {16, 2, "hyperelliptic, genus 2"},
    {17, 4, "tabulated"},
    {25, 5, "tabulated"},
    {32, 8, "tabulated"},
    {37, 18, "tabulated"},
}};

}  // namespace

std::uint64_t psl2_index(std::uint64_t n) {
  require_positive(n, "level");
  if (n == 1) return 1;
  if (n == 2) return 3;
  return jordan2(n) / 2;
}

std::uint64_t cusp_count(std::uint64_t n) {
  require_positive(n, "level");
  switch (n) {
    case 1: return 1;
    case 2: return 2;
    case 3: return 2;
    case 4: return 3;
    default: break;
  }
  std::uint64_t sum = 0;
  for (std::uint64_t d : divisors(n)) sum += euler_phi(d) * euler_phi(n / d);
  return sum / 2;
}

std::uint64_t genus_x1(std::uint64_t n) {
  require_positive(n, "level");
  if (n <= 4) return 0;
  // Gamma_1(N) is torsion free for N >= 4: g = 1 + mu/12 - c/2.
  const std::uint64_t mu = psl2_index(n);
  const std::uint64_t c = cusp_count(n);
  const std::uint64_t twelve_g = 12 + mu - 6 * c;
  if (twelve_g % 12 != 0) throw Error("non-integral genus for level " + std::to_string(n));
  return twelve_g / 12;
}

MapDegree map_degree(std::uint64_t a, std::uint64_t b) {
  require_positive(a, "a");
  require_positive(b, "b");
  MapDegree m;
  m.a = a;
  m.b = b;
  m.half = a <= 2 && a * b > 2;
  std::uint64_t deg = b * b;
  for (const auto& pp : factorize(b)) {
    if (a % pp.prime == 0) continue;
    deg = deg / (pp.prime * pp.prime) * (pp.prime * pp.prime - 1);
  }
  if (m.half) {
    if (deg % 2 != 0) throw Error("odd degree with c_f = 1/2");
    deg /= 2;
  }
  m.degree = deg;
  return m;
}

Rational gonality_lower_bound(std::uint64_t n) {
  return Rational(7, 800) * Rational(static_cast<std::int64_t>(psl2_index(n)));
}

std::optional<KnownGonality> known_gonality(std::uint64_t n) {
  for (const auto& k : kKnownGonality) {
    if (k.level == n) return k;
  }
  return std::nullopt;
}

CurveInvariants curve_invariants(std::uint64_t n) {
  CurveInvariants inv;
  inv.level = n;
  inv.psl2_index = psl2_index(n);
  inv.cusps = cusp_count(n);
  inv.genus = genus_x1(n);
  inv.gonality_lower = gonality_lower_bound(n);
  inv.known_gonality = known_gonality(n);
  return inv;
}

FreyVerdict frey_gonality_cert(std::uint64_t n, std::uint64_t d, std::uint64_t gonality) {
  require_positive(n, "level");
  require_positive(d, "degree");
  require_positive(gonality, "gonality");
  return FreyVerdict{n, d, gonality, 2 * d < gonality};
}

}  // namespace modcurve
