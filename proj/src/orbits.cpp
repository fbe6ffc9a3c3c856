#include "modcurve/orbits.hpp"

#include <algorithm>
#include <string>

#include "modcurve/curveinv.hpp"

namespace modcurve {

namespace {

// (Z/nZ)^2 is indexed flat as x * n + y.
constexpr std::uint64_t kMaxOrbitModulus = 4096;

void require_orbit_modulus(std::uint64_t n) {
  if (n > kMaxOrbitModulus) {
    throw InvalidArgument("orbit computations support n <= " + std::to_string(kMaxOrbitModulus));
  }
}

Vec2 from_index(std::uint64_t idx, std::uint64_t n) {
  return Vec2(n, static_cast<std::int64_t>(idx / n), static_cast<std::int64_t>(idx % n));
}

std::uint64_t to_index(const Vec2& v) { return v.x() * v.modulus() + v.y(); }

}  // namespace

std::vector<Vec2> exact_order_vectors(std::uint64_t n, std::uint64_t d) {
  require_orbit_modulus(n);
  if (d == 0 || n % d != 0) {
    throw InvalidArgument(std::to_string(d) + " does not divide " + std::to_string(n));
  }
  std::vector<Vec2> out;
  for (std::uint64_t x = 0; x < n; ++x) {
    for (std::uint64_t y = 0; y < n; ++y) {
      Vec2 v(n, static_cast<std::int64_t>(x), static_cast<std::int64_t>(y));
      if (order(v) == d) out.push_back(v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

OrbitPartition::OrbitPartition(const MatGroup& g) : n_(g.modulus()) {
  require_orbit_modulus(n_);
  const std::uint64_t total = n_ * n_;
  constexpr std::uint32_t kUnset = UINT32_MAX;
  orbit_id_.assign(total, kUnset);
  std::vector<std::uint64_t> queue;
  for (std::uint64_t start = 0; start < total; ++start) {
    if (orbit_id_[start] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(sizes_.size());
    orbit_id_[start] = id;
    queue.assign(1, start);
    // The group is finite, so forward closure under generators is the orbit.
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const Vec2 v = from_index(queue[i], n_);
      for (const Mat2& s : g.generators()) {
        const std::uint64_t w = to_index(s * v);
        if (orbit_id_[w] == kUnset) {
          orbit_id_[w] = id;
          queue.push_back(w);
        }
      }
    }
    sizes_.push_back(queue.size());
    reps_.push_back(start);
  }
}

std::size_t OrbitPartition::orbit_of(const Vec2& v) const {
  if (v.modulus() != n_) throw ModulusMismatch("vector modulus differs from partition modulus");
  return orbit_id_[to_index(v)];
}

Vec2 OrbitPartition::representative(std::size_t orbit) const {
  return from_index(reps_.at(orbit), n_);
}

// ---------------------------------------------------------------------------

std::size_t DegreeSpectrum::record_of(const Vec2& p) const {
  if (p.modulus() != modulus) throw ModulusMismatch("vector modulus differs from spectrum");
  const std::int64_t r = lookup_.at(to_index(p));
  if (r < 0) throw InvalidArgument("vector does not have exact order " + std::to_string(modulus));
  return static_cast<std::size_t>(r);
}

std::uint64_t DegreeSpectrum::total_size() const {
  std::uint64_t s = 0;
  for (const auto& r : records) s += r.size;
  return s;
}

DegreeSpectrum degree_spectrum(const MatGroup& g, std::uint64_t field_degree) {
  if (field_degree == 0) throw InvalidArgument("field degree must be positive");
  const std::uint64_t n = g.modulus();
  const OrbitPartition part(g);
  DegreeSpectrum spec;
  spec.modulus = n;
  spec.field_degree = field_degree;
  spec.lookup_.assign(n * n, -1);

  std::vector<std::int64_t> record_for_orbit(part.orbit_count(), -1);
  for (std::size_t orbit = 0; orbit < part.orbit_count(); ++orbit) {
    const Vec2 rep = part.representative(orbit);
    if (order(rep) != n) continue;
    const std::uint64_t size = part.size(orbit);
    const bool minus_closed = part.orbit_of(-rep) == orbit;
    // c_x = 1/2 only when some element sends P to -P and 2P != O.
    const bool half = minus_closed && n > 2;
    if (half && (size * field_degree) % 2 != 0) {
      throw Error("odd orbit closed under negation for a point of order > 2");
    }
    const std::uint64_t degree = half ? size * field_degree / 2 : size * field_degree;
    record_for_orbit[orbit] = static_cast<std::int64_t>(spec.records.size());
    spec.records.push_back(OrbitRecord{rep, size, n, minus_closed, half ? 1 : 2, degree});
  }
  for (std::uint64_t idx = 0; idx < n * n; ++idx) {
    spec.lookup_[idx] = record_for_orbit[part.orbit_of(from_index(idx, n))];
  }
  return spec;
}

std::uint64_t fiber_count(const Vec2& p, std::uint64_t b) {
  const std::uint64_t n = p.modulus();
  if (b == 0 || n % b != 0) {
    throw InvalidArgument(std::to_string(b) + " does not divide " + std::to_string(n));
  }
  if (order(p) != n) {
    throw InvalidArgument("fiber_count: P must have exact order " + std::to_string(n));
  }
  const std::uint64_t a = n / b;
  std::uint64_t count = 0;
  // Q = P + T with T in E[b] = a * (Z/nZ)^2.
  for (std::uint64_t i = 0; i < b; ++i) {
    for (std::uint64_t j = 0; j < b; ++j) {
      const Vec2 t(n, static_cast<std::int64_t>(a * i), static_cast<std::int64_t>(a * j));
      if (order(p + t) == n) ++count;
    }
  }
  return count;
}

std::vector<GrowthRecord> max_growth_check(const MatGroup& g, std::uint64_t b,
                                           std::uint64_t field_degree) {
  const std::uint64_t n = g.modulus();
  if (b == 0 || n % b != 0) {
    throw InvalidArgument(std::to_string(b) + " does not divide " + std::to_string(n));
  }
  const std::uint64_t a = n / b;
  const MatGroup lower = project(g, a);
  const DegreeSpectrum upper_spec = degree_spectrum(g, field_degree);
  const DegreeSpectrum lower_spec = degree_spectrum(lower, field_degree);
  const std::uint64_t deg_f = map_degree(a, b).degree;

  std::vector<GrowthRecord> out;
  for (const OrbitRecord& rec : upper_spec.records) {
    // f sends (E, P) to (E, bP); bP corresponds to P mod a under E[a] = b E[ab].
    const Vec2 image = reduce(rec.representative, a);
    const OrbitRecord& low = lower_spec.records[lower_spec.record_of(image)];
    if (rec.size % low.size != 0) throw Error("orbit sizes are not divisible");
    GrowthRecord r{rec.representative};
    r.orbit_size = rec.size;
    r.lower_orbit_size = low.size;
    r.growth = rec.size / low.size;
    r.fiber = fiber_count(rec.representative, b);
    r.maximal = r.growth == r.fiber;
    r.degree = rec.degree;
    r.image_degree = low.degree;
    r.map_degree = deg_f;
    r.multiplicative = r.degree == deg_f * r.image_degree;
    out.push_back(r);
  }
  return out;
}

}  // namespace modcurve
