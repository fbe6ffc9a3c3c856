#pragma once

// Constant data consumed by the level bounds and the classification.

#include <cstdint>
#include <optional>
#include <vector>

namespace modcurve {

/// Maximal prime-power level of a modular curve with infinitely many
/// rational points (primes 3, 5, 7, 11, 13, 17, 37).
std::optional<std::uint64_t> sz_table(std::uint64_t prime);

/// Single-prime level bounds M_1({l}) for non-CM curves over Q
/// (primes 2, 3, 5, 7, 11, 13, 17, 37).
std::optional<std::uint64_t> m1_table(std::uint64_t prime);

/// Primes carrying an entry in m1_table, increasing.
std::vector<std::uint64_t> m1_primes();

/// Order of the mod-p image when p = 17 or 37 is non-surjective but the
/// image is not in the normalizer of a non-split Cartan.
std::optional<std::uint64_t> special_image_order(std::uint64_t prime);

struct ClassificationEntry {
  std::uint64_t p;  // 1 stands for "no further prime"
  int a;
  int b;
};

/// The published (p, a_p, b_p) table, used as the comparison target.
const std::vector<ClassificationEntry>& published_classification_table();

/// Largest p^c allowed for case-4 candidate levels.
inline constexpr std::uint64_t kMaxPrimePart = 169;

}  // namespace modcurve
