#pragma once

// Decision tree for non-CM isolated points with rational j-invariant, driven
// by a declared Galois-image profile. The tool never computes an image; it
// only applies the case analysis to what the profile states.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "modcurve/curveinv.hpp"

namespace modcurve {

enum class ImageType { borel, normalizer_split, normalizer_nonsplit, exceptional, other, unknown };

std::string to_string(ImageType t);
/// Throws InvalidArgument for unknown names.
ImageType image_type_from_string(const std::string& name);

struct NonsurjectivePrime {
  std::uint64_t prime = 0;
  ImageType type = ImageType::unknown;
  /// Declared l-adic level, if known.
  std::optional<std::uint64_t> level;
};

struct ProfileFlags {
  /// Assume the conjectured list of mod-l images over Q: surjective for
  /// l > 37 except at 37 itself, and only Borel images at 17 and 37.
  bool assume_sz = false;
};

struct GaloisProfile {
  std::uint64_t field_degree = 1;
  std::vector<NonsurjectivePrime> nonsurjective;
  /// Declared or certified l-adic levels for primes with surjective mod-l image.
  std::map<std::uint64_t, std::uint64_t> ladic_levels;
  ProfileFlags flags;

  const NonsurjectivePrime* find(std::uint64_t prime) const;
  /// Declared l-adic level from either source.
  std::optional<std::uint64_t> level_of(std::uint64_t prime) const;
  /// {2, 3} plus every prime with non-surjective mod-l image or l-adic level > 1.
  std::set<std::uint64_t> s_set() const;
};

/// Throws InconsistentProfile for repeated or non-prime entries, or for
/// combinations that cannot occur over Q (Borel at both 17 and 37).
void validate_profile(const GaloisProfile& p);

struct ClassificationVerdict {
  std::uint64_t n = 1;
  /// First applicable case, 1 through 4.
  int case_number = 4;
  /// Every case compatible with the profile, when some data are unknown.
  std::vector<int> possible_cases;
  std::vector<std::string> evidence;
  /// Set when the profile sits outside the wording of the cases (a
  /// large-prime condition holding at a prime not dividing n).
  bool between_cases = false;

  // Case 4 data.
  std::uint64_t p = 1;
  int a_p = 0;
  int b_p = 0;
  std::vector<std::uint64_t> candidates;
  std::uint64_t target = 1;
};

ClassificationVerdict classify_profile(const GaloisProfile& profile, std::uint64_t n);

struct TargetLevel {
  std::uint64_t n = 1;
  std::uint64_t level = 1;
  std::uint64_t target = 1;  // gcd(n, level)
  MapDegree map;             // X_1(n) -> X_1(target)
};

TargetLevel target_level(std::uint64_t n, std::uint64_t level);

enum class ScreenVerdict {
  NoSporadic,
  NoSporadicAtPrimeLevel,
  Borel37Sporadic,
  ExcludedByAssumption,
  Inconclusive,
};

std::string to_string(ScreenVerdict v);

struct ScreenResult {
  ScreenVerdict verdict = ScreenVerdict::Inconclusive;
  std::vector<std::string> evidence;
  /// Gonality certificate backing a sporadic verdict on X_1(37).
  std::optional<FreyVerdict> frey;
};

/// Conditional screen for n with min(Supp(n)) >= 17; requires assume_sz.
ScreenResult sz_screen(const GaloisProfile& profile, std::uint64_t n);

/// Screen for rational sporadic points on X_1(l), l prime.
ScreenResult prime_level_screen(const GaloisProfile& profile, std::uint64_t prime);

}  // namespace modcurve
