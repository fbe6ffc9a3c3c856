#pragma once

// Level detection and composition for open subgroups of GL_2 given at a
// finite stage, and the explicit valuation bound on multi-prime levels.
//
// A finite group G mod N stands for its full preimage in GL_2 of the
// profinite completion. Every certificate below is a statement about that
// preimage: "the group is the full preimage of its reduction mod M".

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "modcurve/matgroup.hpp"

namespace modcurve {

struct PrimeLevel {
  std::uint64_t prime = 0;
  int exponent = 0;
  friend bool operator==(const PrimeLevel&, const PrimeLevel&) = default;
};

/// Kernel-size comparison at one stage of the l-adic filtration.
struct StageEvidence {
  std::uint64_t prime = 0;
  int stage = 0;
  std::uint64_t upper_order = 0;   // |G mod l^{s+1}|
  std::uint64_t lower_order = 0;   // |G mod l^s|
  std::uint64_t kernel_order = 0;  // upper / lower
  std::uint64_t full_kernel_order = 0;
  bool kernel_full = false;
};

/// One full-preimage order check |G| = |G mod d| * #ker(GL_2(Z/N) -> GL_2(Z/d)).
struct PreimageCheck {
  std::uint64_t modulus = 0;
  std::uint64_t divisor = 0;
  std::uint64_t order = 0;
  std::uint64_t reduced_order = 0;
  std::uint64_t kernel_order = 0;
  bool passed = false;
};

struct LevelCertificate {
  std::vector<PrimeLevel> prime_powers;
  /// Certified: the group is the full preimage of its reduction mod `level`.
  std::uint64_t level = 1;
  /// Smallest divisor of `level` with the same property.
  std::uint64_t minimal_level = 1;
  std::vector<StageEvidence> stages;
  std::vector<PreimageCheck> checks;
};

PreimageCheck check_full_preimage(const MatGroup& g, std::uint64_t divisor,
                                  std::size_t cap = kDefaultCap);

/// s_0 = 2 for l = 2, else 1.
int minimal_stage(std::uint64_t prime);

struct LadicDetection {
  bool certified = false;
  StageEvidence evidence;
  /// Meaningful only when certified.
  LevelCertificate certificate;
};

/// G must have prime-power modulus l^k with k >= stage + 1. Compares
/// |ker(G mod l^{s+1} -> G mod l^s)| with l^4; when equal, the l-adic group
/// is certified to be the full preimage of its reduction mod l^s, and the
/// level is then minimized. Throws StageTooLow for s < s_0.
LadicDetection detect_ladic_level(const MatGroup& g, int stage, std::size_t cap = kDefaultCap);

/// Smallest divisor M of `bound` with G the full preimage of G mod M.
/// Requires G to be the full preimage of G mod bound (PreconditionFailed).
std::uint64_t minimize_level(const MatGroup& g, std::uint64_t bound,
                             std::size_t cap = kDefaultCap,
                             std::vector<PreimageCheck>* trail = nullptr);

/// Per-prime data (l_i, t_i) with G given mod a multiple of prod l_i^{t_i+1}.
/// Verifies each hypothesis "G mod m_i l_i^{t_i+1} is the full preimage of
/// G mod m_i l_i^{t_i}" (m_i the product of the other primes) and returns a
/// certificate for M = prod l_i^{t_i}. Throws HypothesisFailed naming the
/// offending prime.
LevelCertificate compose_level(const MatGroup& g, std::span<const PrimeLevel> data,
                               std::size_t cap = kDefaultCap);

// ---------------------------------------------------------------------------
// Valuation bound for multi-prime levels

struct BoundInput {
  std::vector<std::uint64_t> primes;
  /// M_1({l}); defaults to m1_table.
  std::map<std::uint64_t, std::uint64_t> single_prime_level;
  /// Order of the mod-l' image for l' in S; defaults to #GL_2(Z/l').
  std::map<std::uint64_t, std::uint64_t> image_order;
  /// Explicit tau per prime; must not exceed tau_cap.
  std::map<std::uint64_t, int> tau;
};

/// v_l(#GL_2(Z/m_{S - {l}})).
int tau_cap(std::span<const std::uint64_t> primes, std::uint64_t ell);
/// sum over l' in S - {l} of v_l(image_order(l')).
int default_tau(const BoundInput& input, std::uint64_t ell);
/// max(v_l(M_1({l})), v_l(2l)) + tau.
int level_bound(const BoundInput& input, std::uint64_t ell);

struct ClassificationRow {
  std::uint64_t p = 1;
  int a = 0;
  int b = 0;
  int published_a = 0;
  int published_b = 0;
  bool matches = false;
};

/// Recomputes every (a_p, b_p) from level_bound and compares with the
/// published values.
std::vector<ClassificationRow> classification_table();

}  // namespace modcurve
