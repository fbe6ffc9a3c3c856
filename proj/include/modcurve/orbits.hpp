#pragma once

// Galois-image action on torsion vectors and the degrees of closed points
// on X_1(n) lying above a fixed j-invariant.

#include <cstdint>
#include <optional>
#include <vector>

#include "modcurve/matgroup.hpp"

namespace modcurve {

/// All vectors of (Z/nZ)^2 with exact additive order d, in lexicographic order.
std::vector<Vec2> exact_order_vectors(std::uint64_t n, std::uint64_t d);

/// Orbits of a group on the whole of (Z/nZ)^2, computed from generator
/// action only (the group itself is never materialized).
class OrbitPartition {
 public:
  explicit OrbitPartition(const MatGroup& g);

  std::uint64_t modulus() const noexcept { return n_; }
  std::size_t orbit_count() const noexcept { return sizes_.size(); }
  std::size_t orbit_of(const Vec2& v) const;
  std::uint64_t orbit_size(const Vec2& v) const { return sizes_[orbit_of(v)]; }
  /// Lexicographically smallest member of the orbit.
  Vec2 representative(std::size_t orbit) const;
  std::uint64_t size(std::size_t orbit) const { return sizes_[orbit]; }

 private:
  std::uint64_t n_;
  std::vector<std::uint32_t> orbit_id_;  // indexed by x * n + y
  std::vector<std::uint64_t> sizes_;
  std::vector<std::uint64_t> reps_;      // flat index of representative
};

struct OrbitRecord {
  Vec2 representative;
  std::uint64_t size = 0;
  std::uint64_t point_order = 0;
  bool minus_closed = false;
  /// Twice c_x: 1 when c_x = 1/2, 2 when c_x = 1.
  int twice_c = 2;
  std::uint64_t degree = 0;
};

struct DegreeSpectrum {
  std::uint64_t modulus = 1;
  std::uint64_t field_degree = 1;
  std::vector<OrbitRecord> records;

  /// Index into `records` of the orbit containing P (P of exact order n).
  std::size_t record_of(const Vec2& p) const;
  std::uint64_t total_size() const;

 private:
  friend DegreeSpectrum degree_spectrum(const MatGroup&, std::uint64_t);
  std::vector<std::int64_t> lookup_;  // flat vector index -> record index or -1
};

/// Orbits of G on exact-order-n vectors with deg(x) = c_x * field_degree * |orbit|.
DegreeSpectrum degree_spectrum(const MatGroup& g, std::uint64_t field_degree = 1);

/// #{Q : bQ = bP, Q of exact order n}, where P has exact order n = P.modulus().
std::uint64_t fiber_count(const Vec2& p, std::uint64_t b);

struct GrowthRecord {
  Vec2 representative;
  std::uint64_t orbit_size = 0;        // [k(P):k]
  std::uint64_t lower_orbit_size = 0;  // [k(bP):k]
  std::uint64_t growth = 0;            // [k(P):k(bP)]
  std::uint64_t fiber = 0;             // fiber_count(P, b)
  bool maximal = false;                // growth == fiber
  std::uint64_t degree = 0;            // deg(x)
  std::uint64_t image_degree = 0;      // deg(f(x))
  std::uint64_t map_degree = 0;        // deg(X_1(ab) -> X_1(a))
  bool multiplicative = false;         // deg(x) == deg(f) * deg(f(x))
};

/// Per-orbit comparison of [k(P):k(bP)] against the fiber count of
/// X_1(ab) -> X_1(a), with a = G.modulus() / b.
std::vector<GrowthRecord> max_growth_check(const MatGroup& g, std::uint64_t b,
                                           std::uint64_t field_degree = 1);

}  // namespace modcurve
