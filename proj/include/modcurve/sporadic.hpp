#pragma once

// Sporadic-point certificates: the index-based lifting criterion, degree
// bookkeeping under X_1(n) -> X_1(a), and the CM construction arithmetic.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modcurve/orbits.hpp"
#include "modcurve/rational.hpp"

namespace modcurve {

enum class SporadicVerdict { SporadicAllLiftsSporadic, Inconclusive };

std::string to_string(SporadicVerdict v);

/// One link of deg(y) <= d * deg(X_1(mN) -> X_1(N)) < (7/1600) mu(mN).
struct LiftStep {
  std::uint64_t multiplier = 1;
  std::uint64_t lift_level = 1;
  std::uint64_t degree_bound = 0;  // d * map_degree(N, m)
  Rational threshold{0};           // (7/1600) * psl2_index(mN)
  bool index_identity = false;     // map_degree(N, m) * mu(N) == mu(mN)
  bool holds = false;
};

struct SporadicCertificate {
  std::uint64_t level = 1;
  std::uint64_t degree = 1;
  std::uint64_t psl2_index = 1;
  Rational threshold{0};
  /// threshold - degree; positive exactly when the bound is met.
  Rational margin{0};
  SporadicVerdict verdict = SporadicVerdict::Inconclusive;
  /// Filled for issued certificates only.
  std::vector<LiftStep> chain;

  bool issued() const { return verdict == SporadicVerdict::SporadicAllLiftsSporadic; }
};

inline constexpr std::uint64_t kDefaultLiftSteps = 20;

/// A point of degree d on X_1(N) with d < (7/1600) mu(N) and N > 2 is
/// sporadic, and so is every point above it on every X_1(mN).
SporadicCertificate lifting_certificate(std::uint64_t n, std::uint64_t d,
                                        std::uint64_t lift_steps = kDefaultLiftSteps);

// ---------------------------------------------------------------------------

struct PushforwardRecord {
  Vec2 representative;
  std::uint64_t degree = 0;
  Vec2 image_representative;
  std::uint64_t image_degree = 0;
  /// deg(x) == deg(f) * deg(f(x)); sporadicity of x then passes to f(x).
  bool transfers = false;
};

struct PushforwardReport {
  std::uint64_t modulus = 1;
  std::uint64_t image_modulus = 1;
  std::uint64_t map_degree = 1;
  std::vector<PushforwardRecord> records;
  bool all_transfer() const;
};

/// `upper` and `lower` must be the spectra of G mod n and of project(G, a).
PushforwardReport pushforward_degree_check(const DegreeSpectrum& upper,
                                           const DegreeSpectrum& lower);

/// Convenience form computing both spectra from G.
PushforwardReport pushforward_degree_check(const MatGroup& g, std::uint64_t a,
                                           std::uint64_t field_degree = 1);

// ---------------------------------------------------------------------------

struct CmOrder {
  std::int64_t discriminant = -4;
  std::uint64_t class_number = 1;
  std::uint64_t unit_count = 4;
};

/// Validates the discriminant, and that w matches it.
CmOrder make_cm_order(std::int64_t disc, std::uint64_t h, std::uint64_t w);

/// Order with class number from the shipped table (|D| <= 100).
CmOrder cm_order(std::int64_t disc);

std::optional<std::uint64_t> tabulated_class_number(std::int64_t disc);

/// Kronecker symbol (D / p) for a prime p.
int kronecker(std::int64_t disc, std::uint64_t prime);

struct CmThreshold {
  CmOrder order;
  /// (6400/7) * h / w - 1
  Rational threshold{0};
  /// Smallest prime above the threshold that splits in the CM field.
  std::uint64_t prime = 0;
};

CmThreshold cm_threshold(const CmOrder& order);

struct CmPointDegree {
  CmOrder order;
  std::uint64_t prime = 0;
  /// 2 h (l - 1) / w
  std::uint64_t degree = 0;
  SporadicCertificate certificate;
};

/// Throws PreconditionFailed if l is not above the threshold or does not split.
CmPointDegree cm_point_degree(const CmOrder& order, std::uint64_t prime);

}  // namespace modcurve
