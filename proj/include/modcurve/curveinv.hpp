#pragma once

// Numerical invariants of the modular curves X_1(N).

#include <cstdint>
#include <optional>
#include <string>

#include "modcurve/rational.hpp"

namespace modcurve {

/// [PSL_2(Z) : image of Gamma_1(N)], the degree of X_1(N) -> X(1).
std::uint64_t psl2_index(std::uint64_t n);

/// Number of cusps of X_1(N).
std::uint64_t cusp_count(std::uint64_t n);

std::uint64_t genus_x1(std::uint64_t n);

struct MapDegree {
  std::uint64_t a = 1;
  std::uint64_t b = 1;
  /// c_f is 1/2 exactly when a <= 2 and ab > 2.
  bool half = false;
  std::uint64_t degree = 1;

  Rational c_f() const { return half ? Rational(1, 2) : Rational(1); }
};

/// Degree of the natural map X_1(ab) -> X_1(a), (E, P) -> (E, bP).
MapDegree map_degree(std::uint64_t a, std::uint64_t b);

/// (7/800) * psl2_index(N), a lower bound for the gonality over C.
Rational gonality_lower_bound(std::uint64_t n);

struct KnownGonality {
  std::uint64_t level;
  std::uint64_t gonality;
  const char* source;
};

/// Recorded Q-gonalities of X_1(N); empty outside the shipped table.
std::optional<KnownGonality> known_gonality(std::uint64_t n);

struct CurveInvariants {
  std::uint64_t level = 1;
  std::uint64_t psl2_index = 1;
  std::uint64_t cusps = 1;
  std::uint64_t genus = 0;
  Rational gonality_lower{0};
  std::optional<KnownGonality> known_gonality;
};

CurveInvariants curve_invariants(std::uint64_t n);

struct FreyVerdict {
  std::uint64_t level = 1;
  std::uint64_t degree = 1;
  std::uint64_t gonality = 1;
  /// True when 2d < gonality, so X_1(N) has only finitely many points of
  /// degree <= d and every point of degree d is sporadic.
  bool finitely_many = false;
};

FreyVerdict frey_gonality_cert(std::uint64_t n, std::uint64_t d, std::uint64_t gonality);

}  // namespace modcurve
