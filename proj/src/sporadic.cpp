#include "modcurve/sporadic.hpp"

#include <array>
#include <utility>

#include "modcurve/curveinv.hpp"
#include "modcurve/errors.hpp"
#include "modcurve/modarith.hpp"

namespace modcurve {

namespace {

const Rational kLiftConstant(7, 1600);

Rational as_rational(std::uint64_t x) { return Rational(static_cast<std::int64_t>(x)); }

// h(D) for every discriminant -100 <= D < 0, counted from reduced primitive forms.
constexpr std::array<std::pair<std::int64_t, std::uint64_t>, 50> kClassNumbers{{
    {-3, 1},  {-4, 1},  {-7, 1},  {-8, 1},  {-11, 1}, {-12, 1}, {-15, 2}, {-16, 1}, {-19, 1},
    {-20, 2}, {-23, 3}, {-24, 2}, {-27, 1}, {-28, 1}, {-31, 3}, {-32, 2}, {-35, 2}, {-36, 2},
    {-39, 4}, {-40, 2}, {-43, 1}, {-44, 3}, {-47, 5}, {-48, 2}, {-51, 2}, {-52, 2}, {-55, 4},
    {-56, 4}, {-59, 3}, {-60, 2}, {-63, 4}, {-64, 2}, {-67, 1}, {-68, 4}, {-71, 7}, {-72, 2},
    {-75, 2}, {-76, 3}, {-79, 5}, {-80, 4}, {-83, 3}, {-84, 4}, {-87, 6}, {-88, 2}, {-91, 2},
    {-92, 3}, {-95, 8}, {-96, 4}, {-99, 2}, {-100, 2},
}};

std::uint64_t expected_units(std::int64_t disc) {
  if (disc == -4) return 4;
  if (disc == -3) return 6;
  return 2;
}

}  // namespace

std::string to_string(SporadicVerdict v) {
  return v == SporadicVerdict::SporadicAllLiftsSporadic ? "SporadicAllLiftsSporadic"
                                                        : "Inconclusive";
}

SporadicCertificate lifting_certificate(std::uint64_t n, std::uint64_t d,
                                        std::uint64_t lift_steps) {
  if (n == 0 || d == 0) throw InvalidArgument("level and degree must be positive");
  SporadicCertificate cert;
  cert.level = n;
  cert.degree = d;
  cert.psl2_index = psl2_index(n);
  cert.threshold = kLiftConstant * as_rational(cert.psl2_index);
  cert.margin = cert.threshold - as_rational(d);
  const bool issued = n > 2 && as_rational(d) < cert.threshold;
  if (!issued) return cert;

  for (std::uint64_t m = 1; m <= lift_steps; ++m) {
    LiftStep step;
    step.multiplier = m;
    step.lift_level = n * m;
    const std::uint64_t deg_f = map_degree(n, m).degree;
    step.degree_bound = d * deg_f;
    const std::uint64_t mu = psl2_index(n * m);
    step.threshold = kLiftConstant * as_rational(mu);
    step.index_identity = deg_f * cert.psl2_index == mu;
    step.holds = step.index_identity && as_rational(step.degree_bound) < step.threshold;
    cert.chain.push_back(step);
    if (!step.holds) {
      throw Error("lift chain failed at m = " + std::to_string(m) + " for level " +
                  std::to_string(n));
    }
  }
  cert.verdict = SporadicVerdict::SporadicAllLiftsSporadic;
  return cert;
}

// ---------------------------------------------------------------------------

bool PushforwardReport::all_transfer() const {
  for (const auto& r : records) {
    if (!r.transfers) return false;
  }
  return true;
}

PushforwardReport pushforward_degree_check(const DegreeSpectrum& upper,
                                           const DegreeSpectrum& lower) {
  const std::uint64_t n = upper.modulus;
  const std::uint64_t a = lower.modulus;
  if (n % a != 0) {
    throw InvalidArgument(std::to_string(a) + " does not divide " + std::to_string(n));
  }
  if (upper.field_degree != lower.field_degree) {
    throw InvalidArgument("spectra use different field degrees");
  }
  PushforwardReport report;
  report.modulus = n;
  report.image_modulus = a;
  report.map_degree = map_degree(a, n / a).degree;
  for (const OrbitRecord& rec : upper.records) {
    const Vec2 image = reduce(rec.representative, a);
    const OrbitRecord& low = lower.records[lower.record_of(image)];
    report.records.push_back(PushforwardRecord{rec.representative, rec.degree,
                                               low.representative, low.degree,
                                               rec.degree == report.map_degree * low.degree});
  }
  return report;
}

PushforwardReport pushforward_degree_check(const MatGroup& g, std::uint64_t a,
                                           std::uint64_t field_degree) {
  return pushforward_degree_check(degree_spectrum(g, field_degree),
                                  degree_spectrum(project(g, a), field_degree));
}

// ---------------------------------------------------------------------------

std::optional<std::uint64_t> tabulated_class_number(std::int64_t disc) {
  for (const auto& [d, h] : kClassNumbers) {
    if (d == disc) return h;
  }
  return std::nullopt;
}

CmOrder make_cm_order(std::int64_t disc, std::uint64_t h, std::uint64_t w) {
  if (disc >= 0) throw InvalidArgument("CM discriminant must be negative");
  const std::int64_t r = ((disc % 4) + 4) % 4;
  if (r != 0 && r != 1) {
    throw InvalidArgument("discriminant " + std::to_string(disc) + " is not 0 or 1 mod 4");
  }
  if (h == 0) throw InvalidArgument("class number must be positive");
  if (w != expected_units(disc)) {
    throw InvalidArgument("unit count " + std::to_string(w) + " does not match discriminant " +
                          std::to_string(disc));
  }
  return CmOrder{disc, h, w};
}

CmOrder cm_order(std::int64_t disc) {
  const auto h = tabulated_class_number(disc);
  if (!h) {
    throw InvalidArgument("no tabulated class number for discriminant " + std::to_string(disc) +
                          "; pass h explicitly");
  }
  return make_cm_order(disc, *h, expected_units(disc));
}

int kronecker(std::int64_t disc, std::uint64_t prime) {
  if (!is_prime(prime)) throw InvalidArgument(std::to_string(prime) + " is not prime");
  if (prime == 2) {
    const std::int64_t r = ((disc % 8) + 8) % 8;
    if (r % 2 == 0) return 0;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  const Residue d = reduce_signed(disc, prime);
  if (d == 0) return 0;
  return powmod(d, (prime - 1) / 2, prime) == 1 ? 1 : -1;
}

CmThreshold cm_threshold(const CmOrder& order) {
  CmThreshold t;
  t.order = order;
  t.threshold = Rational(6400, 7) * Rational(static_cast<std::int64_t>(order.class_number),
                                             static_cast<std::int64_t>(order.unit_count)) -
                Rational(1);
  // First integer strictly above the threshold.
  std::uint64_t l = 2;
  if (t.threshold >= Rational(0)) {
    l = static_cast<std::uint64_t>(t.threshold.numerator() / t.threshold.denominator()) + 1;
  }
  while (!(is_prime(l) && kronecker(order.discriminant, l) == 1)) ++l;
  t.prime = l;
  return t;
}

CmPointDegree cm_point_degree(const CmOrder& order, std::uint64_t prime) {
  const CmThreshold t = cm_threshold(order);
  if (!is_prime(prime)) throw InvalidArgument(std::to_string(prime) + " is not prime");
  if (!(as_rational(prime) > t.threshold)) {
    throw PreconditionFailed("l = " + std::to_string(prime) + " is not above the threshold " +
                             to_string(t.threshold));
  }
  if (kronecker(order.discriminant, prime) != 1) {
    throw PreconditionFailed("l = " + std::to_string(prime) + " does not split for discriminant " +
                             std::to_string(order.discriminant));
  }
  const std::uint64_t num = 2 * order.class_number * (prime - 1);
  if (num % order.unit_count != 0) throw Error("non-integral CM point degree");
  CmPointDegree out;
  out.order = order;
  out.prime = prime;
  out.degree = num / order.unit_count;
  out.certificate = lifting_certificate(prime, out.degree);
  return out;
}

}  // namespace modcurve
