#include "modcurve/matgroup.hpp"

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include <algorithm>
#include <mutex>
#include <string>

namespace modcurve {

namespace detail {

std::uint64_t encode(const Mat2& m) {
  return m.a() | (m.b() << 16) | (m.c() << 32) | (m.d() << 48);
}

Mat2 decode(std::uint64_t code, std::uint64_t n) {
  return Mat2::from_reduced(n, code & 0xffff, (code >> 16) & 0xffff, (code >> 32) & 0xffff,
                            code >> 48);
}

std::uint64_t mul_codes(std::uint64_t x, std::uint64_t y, std::uint64_t n) {
  const std::uint64_t xa = x & 0xffff, xb = (x >> 16) & 0xffff, xc = (x >> 32) & 0xffff,
                      xd = x >> 48;
  const std::uint64_t ya = y & 0xffff, yb = (y >> 16) & 0xffff, yc = (y >> 32) & 0xffff,
                      yd = y >> 48;
  const std::uint64_t a = (xa * ya + xb * yc) % n;
  const std::uint64_t b = (xa * yb + xb * yd) % n;
  const std::uint64_t c = (xc * ya + xd * yc) % n;
  const std::uint64_t d = (xc * yb + xd * yd) % n;
  return a | (b << 16) | (c << 32) | (d << 48);
}

}  // namespace detail

namespace {

using Codes = std::vector<std::uint64_t>;

void require_materializable(std::uint64_t n) {
  if (n > kMaxMaterializedModulus) {
    throw InvalidArgument("materialization supports moduli up to " +
                          std::to_string(kMaxMaterializedModulus) + ", got " +
                          std::to_string(n));
  }
}

void require_divisor(std::uint64_t n, std::uint64_t m) {
  if (m == 0 || n % m != 0) {
    throw InvalidArgument(std::to_string(m) + " does not divide " + std::to_string(n));
  }
}

// Dimino's algorithm: G_i = <G_{i-1}, g_i> is enumerated as a union of right
// cosets of G_{i-1}, so each element costs one product rather than one per
// generator. Generators already in the group are skipped.
std::shared_ptr<const Codes> closure_codes(std::uint64_t n, std::span<const Mat2> gens,
                                           std::size_t cap) {
  require_materializable(n);
  const std::uint64_t id = detail::encode(Mat2::identity(n));
  absl::flat_hash_set<std::uint64_t> seen{id};
  auto elems = std::make_shared<Codes>(Codes{id});
  std::vector<std::uint64_t> used;

  auto add_coset = [&](std::size_t sub_size, std::uint64_t rep) {
    for (std::size_t j = 0; j < sub_size; ++j) {
      const std::uint64_t y = detail::mul_codes((*elems)[j], rep, n);
      seen.insert(y);
      elems->push_back(y);
    }
    if (elems->size() > cap) throw CapExceeded(cap, elems->size());
  };

  for (const Mat2& g : gens) {
    const std::uint64_t gc = detail::encode(g);
    if (seen.contains(gc)) continue;
    used.push_back(gc);
    const std::size_t sub_size = elems->size();
    std::vector<std::uint64_t> reps{gc};
    add_coset(sub_size, gc);
    for (std::size_t r = 0; r < reps.size(); ++r) {
      for (std::uint64_t s : used) {
        const std::uint64_t y = detail::mul_codes(reps[r], s, n);
        if (seen.contains(y)) continue;
        reps.push_back(y);
        add_coset(sub_size, y);
      }
    }
  }
  std::sort(elems->begin(), elems->end());
  return elems;
}

bool sorted_contains(const Codes& codes, std::uint64_t c) {
  return std::binary_search(codes.begin(), codes.end(), c);
}

// Picks generators greedily from a sorted element list known to be a group.
std::vector<Mat2> greedy_generators(std::uint64_t n, const Codes& elems, std::size_t cap) {
  std::vector<Mat2> gens;
  std::shared_ptr<const Codes> current = closure_codes(n, gens, cap);
  for (std::uint64_t c : elems) {
    if (current->size() == elems.size()) break;
    if (sorted_contains(*current, c)) continue;
    gens.push_back(detail::decode(c, n));
    current = closure_codes(n, gens, cap);
    if (current->size() > elems.size()) {
      throw InvalidArgument("element list is not closed under multiplication");
    }
  }
  if (*current != elems) throw InvalidArgument("element list is not a group");
  return gens;
}

}  // namespace

// ---------------------------------------------------------------------------

struct MatGroup::Cache {
  std::mutex mutex;
  std::shared_ptr<const Codes> codes;
};

MatGroup::MatGroup(std::uint64_t n, std::vector<Mat2> generators)
    : n_(n), gens_(std::move(generators)), cache_(std::make_shared<Cache>()) {
  if (n == 0 || n > kMaxModulus) throw InvalidArgument("invalid modulus");
  for (const Mat2& g : gens_) {
    if (g.modulus() != n) {
      throw ModulusMismatch("generator modulus " + std::to_string(g.modulus()) +
                            " differs from group modulus " + std::to_string(n));
    }
    if (!is_invertible(g)) {
      throw NotInvertible("generator is not invertible mod " + std::to_string(n));
    }
  }
}

MatGroup::MatGroup(std::uint64_t n, std::vector<Mat2> generators,
                   std::shared_ptr<const Codes> codes)
    : MatGroup(n, std::move(generators)) {
  cache_->codes = std::move(codes);
}

MatGroup MatGroup::from_elements(std::uint64_t n, std::span<const Mat2> elements,
                                 std::size_t cap) {
  require_materializable(n);
  Codes codes;
  codes.reserve(elements.size());
  for (const Mat2& e : elements) {
    if (e.modulus() != n) throw ModulusMismatch("element modulus differs from group modulus");
    codes.push_back(detail::encode(e));
  }
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  auto gens = greedy_generators(n, codes, cap);
  return MatGroup(n, std::move(gens), std::make_shared<const Codes>(std::move(codes)));
}

bool MatGroup::is_materialized() const {
  std::lock_guard lock(cache_->mutex);
  return cache_->codes != nullptr;
}

std::shared_ptr<const std::vector<std::uint64_t>> MatGroup::element_codes(
    std::size_t cap) const {
  std::lock_guard lock(cache_->mutex);
  if (!cache_->codes) cache_->codes = closure_codes(n_, gens_, cap);
  return cache_->codes;
}

std::vector<Mat2> MatGroup::elements(std::size_t cap) const {
  auto codes = element_codes(cap);
  std::vector<Mat2> out;
  out.reserve(codes->size());
  for (std::uint64_t c : *codes) out.push_back(detail::decode(c, n_));
  return out;
}

std::uint64_t MatGroup::order(std::size_t cap) const { return element_codes(cap)->size(); }

bool MatGroup::contains(const Mat2& g, std::size_t cap) const {
  if (g.modulus() != n_) throw ModulusMismatch("membership test across moduli");
  return sorted_contains(*element_codes(cap), detail::encode(g));
}

// ---------------------------------------------------------------------------

MatGroup closure(std::uint64_t n, std::span<const Mat2> generators, std::size_t cap) {
  MatGroup g(n, std::vector<Mat2>(generators.begin(), generators.end()));
  g.cache_->codes = closure_codes(n, g.gens_, cap);
  return g;
}

MatGroup project(const MatGroup& g, std::uint64_t m) {
  require_divisor(g.modulus(), m);
  std::vector<Mat2> gens;
  for (const Mat2& x : g.generators()) {
    Mat2 r = reduce(x, m);
    if (!r.is_identity() && std::find(gens.begin(), gens.end(), r) == gens.end()) {
      gens.push_back(r);
    }
  }
  if (m == g.modulus()) return g;
  if (!g.is_materialized()) return MatGroup(m, std::move(gens));

  auto src = g.element_codes();
  Codes image;
  image.reserve(src->size());
  for (std::uint64_t c : *src) {
    image.push_back(detail::encode(reduce(detail::decode(c, g.modulus()), m)));
  }
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  return MatGroup(m, std::move(gens), std::make_shared<const Codes>(std::move(image)));
}

MatGroup kernel_of_projection(const MatGroup& g, std::uint64_t m, std::size_t cap) {
  require_divisor(g.modulus(), m);
  const std::uint64_t n = g.modulus();
  auto src = g.element_codes(cap);
  Codes kernel;
  for (std::uint64_t c : *src) {
    if (reduce(detail::decode(c, n), m).is_identity()) kernel.push_back(c);
  }
  auto gens = greedy_generators(n, kernel, cap);
  return MatGroup(n, std::move(gens), std::make_shared<const Codes>(std::move(kernel)));
}

MatGroup subgroup_where(const MatGroup& g, const std::function<bool(const Mat2&)>& pred,
                        std::size_t cap) {
  const std::uint64_t n = g.modulus();
  auto src = g.element_codes(cap);
  Codes picked;
  for (std::uint64_t c : *src) {
    if (pred(detail::decode(c, n))) picked.push_back(c);
  }
  auto gens = greedy_generators(n, picked, cap);
  return MatGroup(n, std::move(gens), std::make_shared<const Codes>(std::move(picked)));
}

bool contains_sl2(const MatGroup& g, std::size_t cap) {
  const std::uint64_t n = g.modulus();
  return g.contains(Mat2(n, 1, 1, 0, 1), cap) && g.contains(Mat2(n, 1, 0, 1, 1), cap);
}

std::uint64_t congruence_kernel_order(std::uint64_t n, std::uint64_t m) {
  require_divisor(n, m);
  return gl2_order(n) / gl2_order(m);
}

bool is_full_preimage(const MatGroup& g, std::uint64_t m, std::size_t cap) {
  const std::uint64_t big = g.order(cap);
  const std::uint64_t small = project(g, m).order(cap);
  return big == small * congruence_kernel_order(g.modulus(), m);
}

// ---------------------------------------------------------------------------

std::vector<std::uint64_t> unit_group_generators(std::uint64_t n) {
  std::vector<std::uint64_t> gens;
  if (n <= 2) return gens;
  const std::uint64_t phi = euler_phi(n);
  std::vector<bool> reached(n, false);
  std::vector<std::uint64_t> subgroup{1};
  reached[1] = true;
  for (std::uint64_t u = 2; u < n && subgroup.size() < phi; ++u) {
    if (gcd(u, n) != 1 || reached[u]) continue;
    gens.push_back(u);
    for (std::size_t i = 0; i < subgroup.size(); ++i) {
      for (std::uint64_t g : gens) {
        const std::uint64_t y = mulmod(subgroup[i], g, n);
        if (!reached[y]) {
          reached[y] = true;
          subgroup.push_back(y);
        }
      }
    }
  }
  return gens;
}

MatGroup trivial_group(std::uint64_t n) { return MatGroup(n, {}); }

MatGroup sl2(std::uint64_t n) {
  if (n == 1) return trivial_group(1);
  return MatGroup(n, {Mat2(n, 1, 1, 0, 1), Mat2(n, 1, 0, 1, 1)});
}

MatGroup gl2(std::uint64_t n) {
  std::vector<Mat2> gens = sl2(n).generators();
  for (std::uint64_t u : unit_group_generators(n)) {
    gens.emplace_back(n, static_cast<std::int64_t>(u), 0, 0, 1);
  }
  return MatGroup(n, std::move(gens));
}

MatGroup borel(std::uint64_t n) {
  if (n == 1) return trivial_group(1);
  std::vector<Mat2> gens{Mat2(n, 1, 1, 0, 1)};
  for (std::uint64_t u : unit_group_generators(n)) {
    const auto s = static_cast<std::int64_t>(u);
    gens.emplace_back(n, s, 0, 0, 1);
    gens.emplace_back(n, 1, 0, 0, s);
  }
  return MatGroup(n, std::move(gens));
}

MatGroup split_cartan(std::uint64_t n) {
  std::vector<Mat2> gens;
  for (std::uint64_t u : unit_group_generators(n)) {
    const auto s = static_cast<std::int64_t>(u);
    gens.emplace_back(n, s, 0, 0, 1);
    gens.emplace_back(n, 1, 0, 0, s);
  }
  return MatGroup(n, std::move(gens));
}

namespace {

// Generators for ker(GL_2(Z/p^k) -> GL_2(Z/p^j)), 1 <= j <= k.
std::vector<Mat2> prime_power_kernel_generators(std::uint64_t p, int k, int j) {
  const std::uint64_t q = ipow(p, k);
  const auto step = static_cast<std::int64_t>(ipow(p, j));
  std::vector<Mat2> gens;
  if (j >= k) return gens;
  for (int mask = 1; mask < 16; ++mask) {
    const std::int64_t e[4] = {mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1};
    gens.emplace_back(q, 1 + step * e[0], step * e[1], step * e[2], 1 + step * e[3]);
  }
  gens.emplace_back(q, 1 - step, 0, 0, 1);
  gens.emplace_back(q, 1, 0, 0, 1 - step);
  return gens;
}

// Embeds x (mod a factor f of n) as the matrix that is x mod f and I mod n/f.
Mat2 embed_factor(const Mat2& x, std::uint64_t n) {
  const std::uint64_t f = x.modulus();
  const std::uint64_t rest = n / f;
  if (rest == 1) return x;
  const Mat2 parts[2] = {x, Mat2::identity(rest)};
  return crt_join(parts);
}

}  // namespace

MatGroup congruence_kernel(std::uint64_t n, std::uint64_t m) {
  require_divisor(n, m);
  std::vector<Mat2> gens;
  for (const auto& pp : factorize(n)) {
    const int j = valuation(m, pp.prime);
    std::vector<Mat2> local = j == 0 ? gl2(pp.value()).generators()
                                     : prime_power_kernel_generators(pp.prime, pp.exponent, j);
    for (const Mat2& g : local) gens.push_back(embed_factor(g, n));
  }
  return MatGroup(n, std::move(gens));
}

Mat2 invertible_lift(const Mat2& x, std::uint64_t big_n) {
  const std::uint64_t m = x.modulus();
  require_divisor(big_n, m);
  // Split N = N1 * N2 with Supp(N1) = Supp(m) and gcd(N2, m) = 1.
  std::uint64_t n1 = 1;
  for (const auto& pp : factorize(big_n)) {
    if (m % pp.prime == 0) n1 *= pp.value();
  }
  const std::uint64_t n2 = big_n / n1;
  const Mat2 lifted(n1, static_cast<std::int64_t>(x.a()), static_cast<std::int64_t>(x.b()),
                    static_cast<std::int64_t>(x.c()), static_cast<std::int64_t>(x.d()));
  if (n2 == 1) return lifted;
  const Mat2 parts[2] = {lifted, Mat2::identity(n2)};
  return crt_join(parts);
}

MatGroup preimage(const MatGroup& h, std::uint64_t big_n) {
  require_divisor(big_n, h.modulus());
  std::vector<Mat2> gens;
  for (const Mat2& g : h.generators()) gens.push_back(invertible_lift(g, big_n));
  const MatGroup kernel = congruence_kernel(big_n, h.modulus());
  for (const Mat2& g : kernel.generators()) gens.push_back(g);
  return MatGroup(big_n, std::move(gens));
}

MatGroup direct_product(const MatGroup& h, const MatGroup& k) {
  const std::uint64_t a = h.modulus(), b = k.modulus();
  if (gcd(a, b) != 1) throw NonCoprimeModuli("direct_product needs coprime moduli");
  std::vector<Mat2> gens;
  for (const Mat2& g : h.generators()) {
    const Mat2 parts[2] = {g, Mat2::identity(b)};
    gens.push_back(crt_join(parts));
  }
  for (const Mat2& g : k.generators()) {
    const Mat2 parts[2] = {Mat2::identity(a), g};
    gens.push_back(crt_join(parts));
  }
  return MatGroup(a * b, std::move(gens));
}

MatGroup conjugate(const MatGroup& g, const Mat2& x) {
  const Mat2 xinv = inverse(x);
  std::vector<Mat2> gens;
  for (const Mat2& y : g.generators()) gens.push_back(x * y * xinv);
  return MatGroup(g.modulus(), std::move(gens));
}

MatGroup with_minus_identity(const MatGroup& g) {
  std::vector<Mat2> gens = g.generators();
  gens.push_back(negate(Mat2::identity(g.modulus())));
  return MatGroup(g.modulus(), std::move(gens));
}

// ---------------------------------------------------------------------------

ProductGroup::ProductGroup(std::uint64_t a, std::uint64_t b, std::vector<Pair> generators)
    : a_(a), b_(b), gens_(std::move(generators)) {
  require_materializable(a);
  require_materializable(b);
  for (const auto& [x, y] : gens_) {
    if (x.modulus() != a || y.modulus() != b) {
      throw ModulusMismatch("product generator moduli do not match (a, b)");
    }
    if (!is_invertible(x) || !is_invertible(y)) {
      throw NotInvertible("product generator is not invertible");
    }
  }
}

std::vector<ProductGroup::Pair> ProductGroup::elements(std::size_t cap) const {
  using Key = std::pair<std::uint64_t, std::uint64_t>;
  std::vector<Key> gens;
  for (const auto& [x, y] : gens_) {
    gens.emplace_back(detail::encode(x), detail::encode(y));
    gens.emplace_back(detail::encode(inverse(x)), detail::encode(inverse(y)));
  }
  absl::flat_hash_set<Key> seen;
  std::vector<Key> elems{{detail::encode(Mat2::identity(a_)), detail::encode(Mat2::identity(b_))}};
  seen.insert(elems.front());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const Key x = elems[i];
    for (const Key& g : gens) {
      const Key y{detail::mul_codes(x.first, g.first, a_), detail::mul_codes(x.second, g.second, b_)};
      if (seen.insert(y).second) {
        elems.push_back(y);
        if (elems.size() > cap) throw CapExceeded(cap, elems.size());
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  std::vector<Pair> out;
  out.reserve(elems.size());
  for (const auto& [x, y] : elems) out.emplace_back(detail::decode(x, a_), detail::decode(y, b_));
  return out;
}

namespace {

// Assigns each element of `group` the index of its coset g*N.
absl::flat_hash_map<std::uint64_t, std::size_t> coset_ids(std::uint64_t n, const Codes& group,
                                                          const Codes& normal,
                                                          std::vector<std::uint64_t>* reps) {
  absl::flat_hash_map<std::uint64_t, std::size_t> ids;
  for (std::uint64_t g : group) {
    if (ids.contains(g)) continue;
    const std::size_t id = reps->size();
    reps->push_back(g);
    for (std::uint64_t k : normal) ids.emplace(detail::mul_codes(g, k, n), id);
  }
  return ids;
}

GoursatData goursat_from_pairs(std::uint64_t a, std::uint64_t b,
                               const std::vector<ProductGroup::Pair>& elems,
                               const std::vector<ProductGroup::Pair>& gens, std::size_t cap) {
  Codes left, right, left_kernel, right_kernel;
  for (const auto& [x, y] : elems) {
    left.push_back(detail::encode(x));
    right.push_back(detail::encode(y));
    if (y.is_identity()) left_kernel.push_back(detail::encode(x));
    if (x.is_identity()) right_kernel.push_back(detail::encode(y));
  }
  for (Codes* c : {&left, &right, &left_kernel, &right_kernel}) {
    std::sort(c->begin(), c->end());
    c->erase(std::unique(c->begin(), c->end()), c->end());
  }
  const std::uint64_t q = left.size() / left_kernel.size();
  if (left.size() % left_kernel.size() != 0 || right.size() != q * right_kernel.size() ||
      elems.size() != q * left_kernel.size() * right_kernel.size()) {
    throw Error("Goursat order bookkeeping failed");
  }

  std::vector<std::uint64_t> left_reps, right_reps;
  const auto left_ids = coset_ids(a, left, left_kernel, &left_reps);
  const auto right_ids = coset_ids(b, right, right_kernel, &right_reps);

  // The image of H in G/N' x G'/N must be the graph of a bijection.
  std::vector<std::size_t> phi(left_reps.size(), SIZE_MAX);
  for (const auto& [x, y] : elems) {
    const std::size_t l = left_ids.at(detail::encode(x));
    const std::size_t r = right_ids.at(detail::encode(y));
    if (phi[l] == SIZE_MAX) {
      phi[l] = r;
    } else if (phi[l] != r) {
      throw Error("Goursat pairing is not well defined");
    }
  }
  std::vector<bool> hit(right_reps.size(), false);
  for (std::size_t r : phi) {
    if (r == SIZE_MAX || hit[r]) throw Error("Goursat pairing is not a bijection");
    hit[r] = true;
  }
  // Homomorphism on generators: phi(cN' * h1) = phi(cN') * h2.
  for (const auto& [h1, h2] : gens) {
    const std::uint64_t c1 = detail::encode(h1), c2 = detail::encode(h2);
    for (std::size_t l = 0; l < left_reps.size(); ++l) {
      const std::size_t lhs = phi[left_ids.at(detail::mul_codes(left_reps[l], c1, a))];
      const std::size_t rhs = right_ids.at(detail::mul_codes(right_reps[phi[l]], c2, b));
      if (lhs != rhs) throw Error("Goursat pairing is not a homomorphism");
    }
  }

  std::vector<ProductGroup::Pair> pairs;
  for (std::size_t l = 0; l < left_reps.size(); ++l) {
    pairs.emplace_back(detail::decode(left_reps[l], a), detail::decode(right_reps[phi[l]], b));
  }
  auto make = [cap](std::uint64_t n, const Codes& codes) {
    std::vector<Mat2> v;
    v.reserve(codes.size());
    for (std::uint64_t c : codes) v.push_back(detail::decode(c, n));
    return MatGroup::from_elements(n, v, cap);
  };
  return GoursatData{a,
                     b,
                     elems.size(),
                     make(a, left),
                     make(b, right),
                     make(a, left_kernel),
                     make(b, right_kernel),
                     q,
                     std::move(pairs)};
}

}  // namespace

GoursatData goursat(const ProductGroup& h, std::size_t cap) {
  return goursat_from_pairs(h.left_modulus(), h.right_modulus(), h.elements(cap), h.generators(),
                            cap);
}

GoursatData goursat(const MatGroup& h, std::uint64_t a, std::uint64_t b, std::size_t cap) {
  if (gcd(a, b) != 1) {
    throw NonCoprimeModuli("goursat: " + std::to_string(a) + " and " + std::to_string(b) +
                           " are not coprime");
  }
  if (a * b != h.modulus()) throw InvalidArgument("goursat: a * b must equal the modulus");
  const std::uint64_t split[2] = {a, b};
  std::vector<ProductGroup::Pair> elems, gens;
  for (const Mat2& x : h.elements(cap)) {
    auto parts = crt_split(x, split);
    elems.emplace_back(parts[0], parts[1]);
  }
  std::sort(elems.begin(), elems.end());
  for (const Mat2& x : h.generators()) {
    auto parts = crt_split(x, split);
    gens.emplace_back(parts[0], parts[1]);
  }
  return goursat_from_pairs(a, b, elems, gens, cap);
}

}  // namespace modcurve
