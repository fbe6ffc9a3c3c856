#pragma once

// Finite subgroups of GL_2(Z/nZ) given by generators.
//
// Element sets are materialized lazily by breadth-first closure and cached
// behind a mutex, so a MatGroup value can be shared freely between threads.
// Materialized elements are stored as packed 64-bit codes (four 16-bit
// entries), which limits materialization to moduli n <= 65536.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "modcurve/modarith.hpp"

namespace modcurve {

inline constexpr std::size_t kDefaultCap = std::size_t{1} << 24;
inline constexpr std::uint64_t kMaxMaterializedModulus = 65536;

namespace detail {
std::uint64_t encode(const Mat2& m);
Mat2 decode(std::uint64_t code, std::uint64_t n);
std::uint64_t mul_codes(std::uint64_t x, std::uint64_t y, std::uint64_t n);
}  // namespace detail

class MatGroup {
 public:
  /// Every generator must be invertible with modulus n.
  MatGroup(std::uint64_t n, std::vector<Mat2> generators);

  /// Builds a group from an explicit element list. Throws InvalidArgument if
  /// the list is not closed under multiplication.
  static MatGroup from_elements(std::uint64_t n, std::span<const Mat2> elements,
                                std::size_t cap = kDefaultCap);

  std::uint64_t modulus() const noexcept { return n_; }
  const std::vector<Mat2>& generators() const noexcept { return gens_; }

  bool is_materialized() const;
  /// Sorted packed codes of all elements; materializes on first use.
  std::shared_ptr<const std::vector<std::uint64_t>> element_codes(
      std::size_t cap = kDefaultCap) const;
  std::vector<Mat2> elements(std::size_t cap = kDefaultCap) const;
  std::uint64_t order(std::size_t cap = kDefaultCap) const;
  bool contains(const Mat2& g, std::size_t cap = kDefaultCap) const;

 private:
  struct Cache;

  MatGroup(std::uint64_t n, std::vector<Mat2> generators,
           std::shared_ptr<const std::vector<std::uint64_t>> codes);

  friend MatGroup closure(std::uint64_t, std::span<const Mat2>, std::size_t);
  friend MatGroup project(const MatGroup&, std::uint64_t);
  friend MatGroup kernel_of_projection(const MatGroup&, std::uint64_t, std::size_t);
  friend MatGroup subgroup_where(const MatGroup&, const std::function<bool(const Mat2&)>&,
                                 std::size_t);

  std::uint64_t n_;
  std::vector<Mat2> gens_;
  std::shared_ptr<Cache> cache_;
};

/// Materialized subgroup generated by `generators`. Throws CapExceeded once
/// the element count passes `cap`.
MatGroup closure(std::uint64_t n, std::span<const Mat2> generators,
                 std::size_t cap = kDefaultCap);

/// Image of G under reduction mod m (m | n).
MatGroup project(const MatGroup& g, std::uint64_t m);

/// {g in G : g = I mod m}.
MatGroup kernel_of_projection(const MatGroup& g, std::uint64_t m,
                              std::size_t cap = kDefaultCap);

/// True iff G contains [[1,1],[0,1]] and [[1,0],[1,1]], i.e. G >= SL_2(Z/nZ).
bool contains_sl2(const MatGroup& g, std::size_t cap = kDefaultCap);

/// |G| = |G mod m| * #ker(GL_2(Z/n) -> GL_2(Z/m)).
bool is_full_preimage(const MatGroup& g, std::uint64_t m, std::size_t cap = kDefaultCap);

/// Order of ker(GL_2(Z/nZ) -> GL_2(Z/mZ)).
std::uint64_t congruence_kernel_order(std::uint64_t n, std::uint64_t m);

/// Elements of G satisfying `pred`; the selection must itself be a subgroup.
MatGroup subgroup_where(const MatGroup& g, const std::function<bool(const Mat2&)>& pred,
                        std::size_t cap = kDefaultCap);

// ---------------------------------------------------------------------------
// Standard subgroups

/// A small generating set of (Z/nZ)^x.
std::vector<std::uint64_t> unit_group_generators(std::uint64_t n);

MatGroup trivial_group(std::uint64_t n);
MatGroup gl2(std::uint64_t n);
MatGroup sl2(std::uint64_t n);
/// Upper-triangular invertible matrices.
MatGroup borel(std::uint64_t n);
/// Invertible diagonal matrices.
MatGroup split_cartan(std::uint64_t n);
/// Kernel of GL_2(Z/nZ) -> GL_2(Z/mZ).
MatGroup congruence_kernel(std::uint64_t n, std::uint64_t m);
/// Full preimage in GL_2(Z/NZ) of H, where H.modulus() divides N.
MatGroup preimage(const MatGroup& h, std::uint64_t big_n);
/// The subgroup H x K of GL_2(Z/ab) for coprime moduli a, b.
MatGroup direct_product(const MatGroup& h, const MatGroup& k);
/// x G x^{-1}.
MatGroup conjugate(const MatGroup& g, const Mat2& x);
/// <G, -I>.
MatGroup with_minus_identity(const MatGroup& g);

/// Lift of an invertible matrix mod m to one mod N that is invertible mod N.
Mat2 invertible_lift(const Mat2& x, std::uint64_t big_n);

// ---------------------------------------------------------------------------
// Goursat data

/// Subgroup of GL_2(Z/a) x GL_2(Z/b) for arbitrary a, b, given by pair generators.
class ProductGroup {
 public:
  using Pair = std::pair<Mat2, Mat2>;

  ProductGroup(std::uint64_t a, std::uint64_t b, std::vector<Pair> generators);

  std::uint64_t left_modulus() const noexcept { return a_; }
  std::uint64_t right_modulus() const noexcept { return b_; }
  const std::vector<Pair>& generators() const noexcept { return gens_; }
  std::vector<Pair> elements(std::size_t cap = kDefaultCap) const;

 private:
  std::uint64_t a_;
  std::uint64_t b_;
  std::vector<Pair> gens_;
};

struct GoursatData {
  std::uint64_t left_modulus = 1;   // a
  std::uint64_t right_modulus = 1;  // b
  std::uint64_t order = 1;          // |H|
  MatGroup left_image;              // G  = image of H mod a
  MatGroup right_image;             // G' = image of H mod b
  MatGroup left_kernel;             // N' = ker(H -> G'), inside G
  MatGroup right_kernel;            // N  = ker(H -> G),  inside G'
  std::uint64_t common_quotient_order = 1;
  /// One (G-coset representative, G'-coset representative) per coset of N'.
  std::vector<ProductGroup::Pair> graph_pairs;
};

/// H mod ab with gcd(a, b) = 1 and a * b = H.modulus().
GoursatData goursat(const MatGroup& h, std::uint64_t a, std::uint64_t b,
                    std::size_t cap = kDefaultCap);
GoursatData goursat(const ProductGroup& h, std::size_t cap = kDefaultCap);

}  // namespace modcurve
