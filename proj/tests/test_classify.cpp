#include "doctest.h"

#include <algorithm>
#include <random>

#include "modcurve/classify.hpp"
#include "modcurve/errors.hpp"
#include "modcurve/levels.hpp"
#include "modcurve/tables.hpp"

using namespace modcurve;

namespace {

GaloisProfile profile(std::vector<NonsurjectivePrime> ns, bool assume_sz = false) {
  GaloisProfile p;
  p.nonsurjective = std::move(ns);
  p.flags.assume_sz = assume_sz;
  return p;
}

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

TEST_CASE("image type names round-trip") {
  for (ImageType t : {ImageType::borel, ImageType::normalizer_split, ImageType::normalizer_nonsplit,
                      ImageType::exceptional, ImageType::other, ImageType::unknown}) {
    CHECK(image_type_from_string(to_string(t)) == t);
  }
  CHECK_THROWS_AS(image_type_from_string("cartan"), InvalidArgument);
}

TEST_CASE("built-in tables") {
  CHECK(sz_table(3) == 27u);
  CHECK(sz_table(5) == 25u);
  CHECK(sz_table(7) == 7u);
  CHECK(sz_table(11) == 11u);
  CHECK(sz_table(13) == 13u);
  CHECK(sz_table(17) == 1u);
  CHECK(sz_table(37) == 1u);
  CHECK_FALSE(sz_table(19).has_value());
  CHECK(m1_table(2) == 32u);
  CHECK(m1_table(3) == 81u);
  CHECK(m1_table(5) == 125u);
  CHECK(m1_table(7) == 49u);
  CHECK(m1_table(11) == 121u);
  CHECK(m1_table(13) == 169u);
  CHECK(m1_table(17) == 17u);
  CHECK(m1_table(37) == 37u);
  CHECK(m1_primes() == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 37});
  CHECK(special_image_order(17) == 64u * 17);
  CHECK(special_image_order(37) == 16u * 27 * 37);
}

TEST_CASE("S_E") {
  GaloisProfile p = profile({{7, ImageType::borel, std::nullopt}});
  p.ladic_levels = {{5, 25}, {11, 1}};
  CHECK(p.s_set() == std::set<std::uint64_t>{2, 3, 5, 7});
  CHECK(profile({}).s_set() == std::set<std::uint64_t>{2, 3});
  CHECK(p.level_of(5) == 25u);
  CHECK_FALSE(p.level_of(7).has_value());
}

TEST_CASE("classify_profile examples") {
  SUBCASE("Borel at 37, n = 37") {
    const auto v = classify_profile(profile({{37, ImageType::borel, 37}}), 37);
    CHECK(v.case_number == 4);
    CHECK(v.p == 37);
    CHECK(v.a_p == 13);
    CHECK(v.b_p == 8);
    CHECK(v.candidates == std::vector<std::uint64_t>{1, 37});
    CHECK(v.target == 37);
    CHECK_FALSE(v.between_cases);
  }
  SUBCASE("non-split Cartan normalizer at 17") {
    const auto v = classify_profile(profile({{17, ImageType::normalizer_nonsplit, std::nullopt}}), 17);
    CHECK(v.case_number == 1);
    CHECK_FALSE(v.between_cases);
  }
  SUBCASE("non-surjective at 5 and 7") {
    const auto v = classify_profile(
        profile({{5, ImageType::borel, std::nullopt}, {7, ImageType::borel, std::nullopt}}), 35);
    CHECK(v.case_number == 2);
  }
  SUBCASE("Borel at 17 is not case 1") {
    const auto v = classify_profile(profile({{17, ImageType::borel, 17}}), 17 * 4);
    CHECK(v.case_number == 4);
    CHECK(v.p == 17);
    CHECK(v.candidates == std::vector<std::uint64_t>{1, 2, 4, 17, 34, 68});
  }
  SUBCASE("non-surjective at 19") {
    const auto v = classify_profile(profile({{19, ImageType::normalizer_nonsplit, std::nullopt}}), 19);
    CHECK(v.case_number == 1);
  }
  SUBCASE("large 5-adic level") {
    GaloisProfile p = profile({});
    p.ladic_levels = {{5, 625}};
    CHECK(classify_profile(p, 5 * 9).case_number == 3);
    CHECK(classify_profile(p, 9).case_number == 4);
  }
  SUBCASE("surjective everywhere uses the p = 1 row") {
    GaloisProfile p = profile({});
    p.ladic_levels = {{3, 27}};
    const auto v = classify_profile(p, (1ULL << 12) * 27 * 5);
    CHECK(v.case_number == 4);
    CHECK(v.p == 1);
    CHECK(v.a_p == 9);
    CHECK(v.b_p == 5);
  }
  SUBCASE("a case-1 prime outside Supp(n) is flagged") {
    const auto v = classify_profile(profile({{19, ImageType::other, std::nullopt}}), 8);
    CHECK(v.case_number == 1);
    CHECK(v.between_cases);
  }
  SUBCASE("unknown image type at 37 keeps case 1 open") {
    GaloisProfile p = profile({{37, ImageType::unknown, 37}});
    const auto v = classify_profile(p, 37);
    CHECK(v.case_number == 4);
    CHECK(contains(v.possible_cases, 1));
    CHECK(contains(v.possible_cases, 4));
  }
  SUBCASE("a non-surjective prime outside Supp(n) leaves the p = 1 row") {
    const auto v = classify_profile(profile({{37, ImageType::borel, 37}}), 1ULL << 12);
    CHECK(v.case_number == 4);
    CHECK(v.p == 1);
    CHECK(v.a_p == 9);
    CHECK(v.target == 512);
  }
  SUBCASE("undeclared 3-adic level keeps case 3 open") {
    const auto v = classify_profile(profile({}), 9);
    CHECK(v.case_number == 4);
    CHECK(contains(v.possible_cases, 3));
  }
}

TEST_CASE("inconsistent profiles are rejected") {
  CHECK_THROWS_AS(
      classify_profile(profile({{17, ImageType::borel, std::nullopt}, {37, ImageType::borel, std::nullopt}}), 17),
      InconsistentProfile);
  CHECK_THROWS_AS(classify_profile(profile({{15, ImageType::other, std::nullopt}}), 15), InconsistentProfile);
  CHECK_THROWS_AS(
      classify_profile(profile({{5, ImageType::borel, std::nullopt}, {5, ImageType::other, std::nullopt}}), 5),
      InconsistentProfile);
  CHECK_THROWS_AS(classify_profile(profile({{5, ImageType::borel, 50}}), 5), InconsistentProfile);
  CHECK_THROWS_AS(classify_profile(profile({{23, ImageType::borel, std::nullopt}}), 23), InconsistentProfile);
  CHECK_THROWS_AS(classify_profile(profile({{19, ImageType::normalizer_split, std::nullopt}}), 19),
                  InconsistentProfile);
  CHECK_THROWS_AS(classify_profile(profile({}), 0), InvalidArgument);
}

TEST_CASE("classify_profile is total and case-4 candidates obey the table") {
  std::mt19937_64 rng(8);
  const std::vector<std::uint64_t> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 37, 43};
  const std::vector<ImageType> types{ImageType::borel,       ImageType::normalizer_split,
                                     ImageType::normalizer_nonsplit, ImageType::exceptional,
                                     ImageType::other,       ImageType::unknown};
  const auto rows = classification_table();
  const std::uint64_t bound = (1ULL << 15) * 6561 * 169;
  int checked = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    GaloisProfile p;
    for (std::uint64_t q : primes) {
      if (rng() % 4 != 0) continue;
      NonsurjectivePrime e{q, types[rng() % types.size()], std::nullopt};
      if (rng() % 2 == 0) e.level = ipow(q, 1 + rng() % 3);
      p.nonsurjective.push_back(e);
    }
    if (rng() % 2 == 0) p.ladic_levels[3] = ipow(3, rng() % 6);
    if (rng() % 2 == 0) p.ladic_levels[5] = ipow(5, rng() % 5);
    std::uint64_t n = 1;
    for (std::uint64_t q : primes) {
      const std::uint64_t f = ipow(q, 1 + rng() % 2);
      if (rng() % 3 == 0 && n < (1ULL << 40)) n *= f;
    }

    ClassificationVerdict v;
    try {
      v = classify_profile(p, n);
    } catch (const InconsistentProfile&) {
      continue;
    }
    ++checked;
    CHECK(v.case_number >= 1);
    CHECK(v.case_number <= 4);
    CHECK(contains(v.possible_cases, v.case_number));
    CHECK(std::is_sorted(v.possible_cases.begin(), v.possible_cases.end()));
    if (v.case_number != 4) continue;
    REQUIRE_FALSE(v.candidates.empty());
    CHECK(v.target == v.candidates.back());
    for (std::uint64_t d : v.candidates) {
      CHECK(n % d == 0);
      CHECK(d <= bound);
      CHECK(valuation(d, 2) <= v.a_p);
      CHECK(valuation(d, 3) <= v.b_p);
      const std::uint64_t rest = d / (ipow(2, valuation(d, 2)) * ipow(3, valuation(d, 3)));
      CHECK(rest <= kMaxPrimePart);
      if (rest > 1) CHECK(rest == ipow(v.p, valuation(rest, v.p)));
    }
    bool row_found = false;
    for (const auto& r : rows) row_found |= (r.p == v.p && r.a == v.a_p && r.b == v.b_p);
    CHECK(row_found);
  }
  CHECK(checked > 500);
}

TEST_CASE("target_level") {
  const TargetLevel t = target_level(96, 24);
  CHECK(t.target == 24);
  CHECK(t.map.a == 24);
  CHECK(t.map.b == 4);
  CHECK(t.map.degree == 16);
  CHECK(target_level(25, 1).target == 1);
  CHECK(target_level(5 * 37, 37).target == 37);
  CHECK(target_level(5 * 37, 37).map.degree == 24);
  CHECK_THROWS_AS(target_level(0, 3), InvalidArgument);
}

TEST_CASE("sz_screen") {
  SUBCASE("only the 37-Borel profile survives") {
    const auto r = sz_screen(profile({{37, ImageType::borel, 37}}, true), 37);
    CHECK(r.verdict == ScreenVerdict::Borel37Sporadic);
    REQUIRE(r.frey.has_value());
    CHECK(r.frey->finitely_many);
    CHECK(sz_screen(profile({{37, ImageType::borel, 37}}, true), 37 * 17).verdict ==
          ScreenVerdict::Borel37Sporadic);
    CHECK(sz_screen(profile({{37, ImageType::borel, 37}}, true), 17).verdict == ScreenVerdict::NoSporadic);
    CHECK(sz_screen(profile({{17, ImageType::borel, 17}}, true), 17).verdict == ScreenVerdict::NoSporadic);
    CHECK(sz_screen(profile({}, true), 19 * 23).verdict == ScreenVerdict::NoSporadic);
  }
  SUBCASE("profiles contradicting the assumption") {
    CHECK(sz_screen(profile({{17, ImageType::normalizer_nonsplit, std::nullopt}}, true), 17).verdict ==
          ScreenVerdict::ExcludedByAssumption);
    CHECK(sz_screen(profile({{5, ImageType::borel, std::nullopt}, {7, ImageType::borel, std::nullopt}}, true), 37)
              .verdict == ScreenVerdict::NoSporadic);
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(sz_screen(profile({{37, ImageType::borel, 37}}, false), 37), PreconditionFailed);
    CHECK_THROWS_AS(sz_screen(profile({}, true), 13 * 37), PreconditionFailed);
    CHECK_THROWS_AS(sz_screen(profile({}, true), 1), PreconditionFailed);
  }
}

TEST_CASE("sz_screen on conjecture-compatible profiles yields 37-Borel or nothing") {
  // Under the assumption the non-surjective primes lie in {2,...,13, 17, 37},
  // with Borel images at 17 and 37.
  const std::vector<std::uint64_t> small{2, 3, 5, 7, 11, 13};
  const std::vector<std::uint64_t> support{17, 19, 23, 29, 31, 37, 41};
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    GaloisProfile p;
    p.flags.assume_sz = true;
    for (std::uint64_t q : small)
      if (rng() % 3 == 0) p.nonsurjective.push_back({q, rng() % 2 ? ImageType::borel : ImageType::other, std::nullopt});
    const int big = static_cast<int>(rng() % 3);
    if (big == 1) p.nonsurjective.push_back({17, ImageType::borel, 17});
    if (big == 2) p.nonsurjective.push_back({37, ImageType::borel, 37});
    std::uint64_t n = 1;
    for (std::uint64_t q : support)
      if (rng() % 3 == 0) n *= q;
    if (n == 1) n = 37;
    const auto r = sz_screen(p, n);
    const bool expect37 = big == 2 && n % 37 == 0;
    CHECK(r.verdict == (expect37 ? ScreenVerdict::Borel37Sporadic : ScreenVerdict::NoSporadic));
  }
}

TEST_CASE("prime_level_screen") {
  for (std::uint64_t l : {2, 3, 5, 7, 11, 13}) {
    CHECK(prime_level_screen(profile({{l, ImageType::borel, std::nullopt}}), l).verdict ==
          ScreenVerdict::NoSporadicAtPrimeLevel);
  }
  for (std::uint64_t l : {17, 19, 37, 101}) {
    CHECK(prime_level_screen(profile({}), l).verdict == ScreenVerdict::NoSporadicAtPrimeLevel);
  }
  CHECK(prime_level_screen(profile({{17, ImageType::borel, 17}}), 17).verdict ==
        ScreenVerdict::NoSporadicAtPrimeLevel);
  CHECK(prime_level_screen(profile({{37, ImageType::borel, 37}}), 37).verdict == ScreenVerdict::Borel37Sporadic);
  CHECK(prime_level_screen(profile({{19, ImageType::normalizer_nonsplit, std::nullopt}}), 19).verdict ==
        ScreenVerdict::NoSporadicAtPrimeLevel);
  CHECK(prime_level_screen(profile({{19, ImageType::other, std::nullopt}}), 19).verdict ==
        ScreenVerdict::Inconclusive);
  CHECK_THROWS_AS(prime_level_screen(profile({}), 21), InvalidArgument);
}
