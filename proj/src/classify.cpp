#include "modcurve/classify.hpp"

#include <algorithm>
#include <array>

#include "modcurve/errors.hpp"
#include "modcurve/levels.hpp"
#include "modcurve/modarith.hpp"
#include "modcurve/tables.hpp"

namespace modcurve {

namespace {

constexpr std::array<std::uint64_t, 8> kIsogenyPrimes{2, 3, 5, 7, 11, 13, 17, 37};
constexpr std::uint64_t kLargeLevel = 169;

bool is_isogeny_prime(std::uint64_t p) {
  return std::find(kIsogenyPrimes.begin(), kIsogenyPrimes.end(), p) != kIsogenyPrimes.end();
}

// Case 1 condition at a single prime.
bool large_prime_condition(const NonsurjectivePrime& e) {
  if (e.prime > 17 && e.prime != 37) return true;
  return (e.prime == 17 || e.prime == 37) && e.type == ImageType::normalizer_nonsplit;
}

bool divides(std::uint64_t d, std::uint64_t n) { return n % d == 0; }

void add_possible(std::vector<int>& cases, int c) {
  if (std::find(cases.begin(), cases.end(), c) == cases.end()) cases.push_back(c);
}

const ClassificationRow& row_for(const std::vector<ClassificationRow>& rows, std::uint64_t p) {
  for (const auto& r : rows) {
    if (r.p == p) return r;
  }
  throw Error("no classification row for p = " + std::to_string(p));
}

}  // namespace

std::string to_string(ImageType t) {
  switch (t) {
    case ImageType::borel: return "borel";
    case ImageType::normalizer_split: return "normalizer_split";
    case ImageType::normalizer_nonsplit: return "normalizer_nonsplit";
    case ImageType::exceptional: return "exceptional";
    case ImageType::other: return "other";
    case ImageType::unknown: return "unknown";
  }
  return "unknown";
}

ImageType image_type_from_string(const std::string& name) {
  for (ImageType t : {ImageType::borel, ImageType::normalizer_split,
                      ImageType::normalizer_nonsplit, ImageType::exceptional, ImageType::other,
                      ImageType::unknown}) {
    if (to_string(t) == name) return t;
  }
  throw InvalidArgument("unknown image type '" + name + "'");
}

const NonsurjectivePrime* GaloisProfile::find(std::uint64_t prime) const {
  for (const auto& e : nonsurjective) {
    if (e.prime == prime) return &e;
  }
  return nullptr;
}

std::optional<std::uint64_t> GaloisProfile::level_of(std::uint64_t prime) const {
  if (const auto* e = find(prime); e && e->level) return e->level;
  if (auto it = ladic_levels.find(prime); it != ladic_levels.end()) return it->second;
  return std::nullopt;
}

std::set<std::uint64_t> GaloisProfile::s_set() const {
  std::set<std::uint64_t> s{2, 3};
  for (const auto& e : nonsurjective) s.insert(e.prime);
  for (const auto& [p, level] : ladic_levels) {
    if (level > 1) s.insert(p);
  }
  return s;
}

void validate_profile(const GaloisProfile& p) {
  if (p.field_degree == 0) throw InconsistentProfile("field degree must be positive");
  std::set<std::uint64_t> seen;
  for (const auto& e : p.nonsurjective) {
    if (!is_prime(e.prime)) {
      throw InconsistentProfile(std::to_string(e.prime) + " is not prime");
    }
    if (!seen.insert(e.prime).second) {
      throw InconsistentProfile("prime " + std::to_string(e.prime) + " listed twice");
    }
    if (e.level && (*e.level == 0 || ipow(e.prime, valuation(*e.level, e.prime)) != *e.level)) {
      throw InconsistentProfile("level of the " + std::to_string(e.prime) +
                                "-adic image must be a power of " + std::to_string(e.prime));
    }
    if (e.type == ImageType::borel && !is_isogeny_prime(e.prime)) {
      throw InconsistentProfile("no rational " + std::to_string(e.prime) +
                                "-isogeny exists over Q");
    }
    if ((e.type == ImageType::normalizer_split || e.type == ImageType::exceptional) &&
        e.prime > 13) {
      throw InconsistentProfile(to_string(e.type) + " image at " + std::to_string(e.prime) +
                                " > 13 does not occur over Q");
    }
  }
  for (const auto& [prime, level] : p.ladic_levels) {
    if (!is_prime(prime)) throw InconsistentProfile(std::to_string(prime) + " is not prime");
    if (level == 0 || ipow(prime, valuation(level, prime)) != level) {
      throw InconsistentProfile("level of the " + std::to_string(prime) +
                                "-adic image must be a power of " + std::to_string(prime));
    }
  }
  const auto* e17 = p.find(17);
  const auto* e37 = p.find(37);
  if (e17 && e37 && e17->type == ImageType::borel && e37->type == ImageType::borel) {
    throw InconsistentProfile("Borel images at both 17 and 37 cannot occur for one curve");
  }
}

ClassificationVerdict classify_profile(const GaloisProfile& profile, std::uint64_t n) {
  if (n == 0) throw InvalidArgument("n must be positive");
  validate_profile(profile);
  ClassificationVerdict v;
  v.n = n;
  std::vector<int> applicable;

  std::string s_desc = "S_E = {";
  for (std::uint64_t q : profile.s_set()) s_desc += (s_desc.back() == '{' ? "" : ",") + std::to_string(q);
  v.evidence.push_back(s_desc + "}");

  // Case 1.
  for (const auto& e : profile.nonsurjective) {
    if (large_prime_condition(e)) {
      add_possible(applicable, 1);
      if (divides(e.prime, n)) {
        v.evidence.push_back("case 1: mod-" + std::to_string(e.prime) + " image is " +
                             to_string(e.type) + " and " + std::to_string(e.prime) + " | n");
      } else {
        v.between_cases = true;
        v.evidence.push_back("case 1 condition holds at " + std::to_string(e.prime) +
                             ", which does not divide n");
      }
    } else if ((e.prime == 17 || e.prime == 37) && e.type == ImageType::unknown) {
      add_possible(v.possible_cases, 1);
      v.evidence.push_back("image type at " + std::to_string(e.prime) +
                           " unknown; case 1 not excluded");
    }
  }

  // Case 2.
  std::vector<std::uint64_t> big_in_support;
  std::vector<std::uint64_t> big_outside;
  for (const auto& e : profile.nonsurjective) {
    if (e.prime <= 3) continue;
    (divides(e.prime, n) ? big_in_support : big_outside).push_back(e.prime);
  }
  std::sort(big_in_support.begin(), big_in_support.end());
  std::sort(big_outside.begin(), big_outside.end());
  if (big_in_support.size() >= 2) {
    add_possible(applicable, 2);
    v.evidence.push_back("case 2: non-surjective at " + std::to_string(big_in_support.back()) +
                         " and " + std::to_string(big_in_support.front()) + ", both dividing n");
  }

  // Case 3.
  for (std::uint64_t l : prime_support(n)) {
    if (l <= 2 || l > 37) continue;
    const auto level = profile.level_of(l);
    if (level && *level > kLargeLevel) {
      add_possible(applicable, 3);
      v.evidence.push_back("case 3: " + std::to_string(l) + "-adic level " +
                           std::to_string(*level) + " > 169");
    } else if (!level && (l == 3 || profile.find(l))) {
      add_possible(v.possible_cases, 3);
      v.evidence.push_back(std::to_string(l) + "-adic level not declared; case 3 not excluded");
    }
  }

  add_possible(applicable, 4);
  for (int c : applicable) add_possible(v.possible_cases, c);
  std::sort(v.possible_cases.begin(), v.possible_cases.end());
  v.case_number = *std::min_element(applicable.begin(), applicable.end());
  if (v.case_number != 4) return v;

  // Case 4.
  const auto rows = classification_table();
  if (!big_in_support.empty()) {
    v.p = big_in_support.front();
    const auto& r = row_for(rows, v.p);
    v.a_p = r.a;
    v.b_p = r.b;
  } else {
    // Primes outside Supp(n) never reach the level bound; the p = 1 row applies.
    const auto& r = row_for(rows, 1);
    v.a_p = r.a;
    v.b_p = r.b;
    if (!big_outside.empty()) {
      v.evidence.push_back("non-surjective primes > 3 outside Supp(n) do not affect the row");
    }
  }
  for (std::uint64_t d : divisors(n)) {
    const int a = valuation(d, 2);
    const int b = valuation(d, 3);
    if (a > v.a_p || b > v.b_p) continue;
    const std::uint64_t rest = d / (ipow(2, a) * ipow(3, b));
    const bool ok = rest == 1 || (v.p > 1 && rest <= kMaxPrimePart &&
                                  ipow(v.p, valuation(rest, v.p)) == rest);
    if (ok) v.candidates.push_back(d);
  }
  v.target = v.candidates.back();
  v.evidence.push_back("case 4: p = " + std::to_string(v.p) + ", a_p = " + std::to_string(v.a_p) +
                       ", b_p = " + std::to_string(v.b_p) + ", target X_1(" +
                       std::to_string(v.target) + ")");
  return v;
}

TargetLevel target_level(std::uint64_t n, std::uint64_t level) {
  if (n == 0 || level == 0) throw InvalidArgument("n and M must be positive");
  TargetLevel t;
  t.n = n;
  t.level = level;
  t.target = gcd(n, level);
  t.map = map_degree(t.target, n / t.target);
  return t;
}

std::string to_string(ScreenVerdict v) {
  switch (v) {
    case ScreenVerdict::NoSporadic: return "NoSporadic";
    case ScreenVerdict::NoSporadicAtPrimeLevel: return "NoSporadicAtPrimeLevel";
    case ScreenVerdict::Borel37Sporadic: return "Borel37Sporadic";
    case ScreenVerdict::ExcludedByAssumption: return "ExcludedByAssumption";
    case ScreenVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

ScreenResult borel37() {
  ScreenResult r;
  r.verdict = ScreenVerdict::Borel37Sporadic;
  r.frey = frey_gonality_cert(37, 6, known_gonality(37)->gonality);
  r.evidence.push_back("Borel image at 37: j = -7*11^3 gives a degree-6 point on X_1(37)");
  r.evidence.push_back("2*6 < 18 = gonality of X_1(37), so that point is sporadic");
  r.evidence.push_back("the other rational 37-isogeny gives degree 18, not sporadic");
  return r;
}

}  // namespace

ScreenResult sz_screen(const GaloisProfile& profile, std::uint64_t n) {
  validate_profile(profile);
  if (!profile.flags.assume_sz) {
    throw PreconditionFailed("sz_screen requires the assume_sz flag");
  }
  const auto support = prime_support(n);
  if (support.empty() || support.front() < 17) {
    throw PreconditionFailed("sz_screen requires min(Supp(n)) >= 17");
  }
  ScreenResult r;
  for (const auto& e : profile.nonsurjective) {
    if (large_prime_condition(e)) {
      r.verdict = ScreenVerdict::ExcludedByAssumption;
      r.evidence.push_back("mod-" + std::to_string(e.prime) + " image " + to_string(e.type) +
                           " contradicts the assumed conjecture");
      return r;
    }
  }
  for (std::uint64_t l : {std::uint64_t{17}, std::uint64_t{37}}) {
    const auto level = profile.level_of(l);
    if (divides(l, n) && level && *level > kLargeLevel) {
      r.verdict = ScreenVerdict::ExcludedByAssumption;
      r.evidence.push_back(std::to_string(l) + "-adic level above 169 contradicts the assumed conjecture");
      return r;
    }
  }
  const auto* e37 = profile.find(37);
  if (divides(37, n) && e37 && e37->type == ImageType::borel) {
    ScreenResult b = borel37();
    b.evidence.insert(b.evidence.begin(), "assuming the conjecture: only prime levels 17 and 37 remain");
    return b;
  }
  r.verdict = ScreenVerdict::NoSporadic;
  r.evidence.push_back("assuming the conjecture: no non-CM sporadic point with rational j on X_1(" +
                       std::to_string(n) + ")");
  return r;
}

ScreenResult prime_level_screen(const GaloisProfile& profile, std::uint64_t prime) {
  validate_profile(profile);
  if (!is_prime(prime)) throw InvalidArgument(std::to_string(prime) + " is not prime");
  ScreenResult r;
  if (prime <= 13) {
    r.verdict = ScreenVerdict::NoSporadicAtPrimeLevel;
    r.evidence.push_back(prime <= 10 ? "X_1(l) has infinitely many rational points for l <= 10"
                                     : "X_1(l) has gonality 2 and no non-cuspidal rational points");
    return r;
  }
  const auto* e = profile.find(prime);
  if (!e) {
    r.verdict = ScreenVerdict::NoSporadicAtPrimeLevel;
    r.evidence.push_back("surjective mod " + std::to_string(prime));
    return r;
  }
  switch (e->type) {
    case ImageType::normalizer_nonsplit:
      r.verdict = ScreenVerdict::NoSporadicAtPrimeLevel;
      r.evidence.push_back("point degree >= (l^2-1)/6 exceeds genus >= gonality");
      return r;
    case ImageType::borel:
      if (prime == 17) {
        r.verdict = ScreenVerdict::NoSporadicAtPrimeLevel;
        r.evidence.push_back("degree >= 4 = gonality of X_1(17)");
        return r;
      }
      return borel37();
    default:
      r.verdict = ScreenVerdict::Inconclusive;
      r.evidence.push_back("image type " + to_string(e->type) + " at " + std::to_string(prime));
      return r;
  }
}

}  // namespace modcurve
