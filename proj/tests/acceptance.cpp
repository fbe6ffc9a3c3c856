// Acceptance run: one PASS/FAIL line per criterion, each under its time
// limit. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "modcurve/classify.hpp"
#include "modcurve/cli.hpp"
#include "modcurve/curveinv.hpp"
#include "modcurve/io.hpp"
#include "modcurve/levels.hpp"
#include "modcurve/orbits.hpp"
#include "modcurve/sporadic.hpp"
#include "oracles.hpp"
#include "sample_groups.hpp"

using namespace modcurve;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

Check criterion1() {
  Check c;
  std::ostringstream out, err;
  const int code = cli::run({"tables", "--which", "classification"}, out, err);
  c.require(code == 0, "tables command failed: " + err.str());
  if (!c.ok) return c;
  const auto doc = nlohmann::json::parse(out.str());
  const std::map<std::uint64_t, std::pair<int, int>> published{
      {1, {9, 5}}, {5, {14, 6}}, {7, {14, 7}}, {11, {13, 6}}, {13, {14, 7}}, {17, {15, 5}}, {37, {13, 8}}};
  c.require(doc.at("rows").size() == published.size(), "row count");
  int matched = 0;
  for (const auto& row : doc.at("rows")) {
    const auto p = row.at("p").get<std::uint64_t>();
    const auto it = published.find(p);
    c.require(it != published.end(), "unexpected p = " + std::to_string(p));
    if (it == published.end()) continue;
    const int a = row.at("a_p").get<int>();
    const int b = row.at("b_p").get<int>();
    c.require(a == it->second.first, "a_p mismatch at p = " + std::to_string(p));
    c.require(b == it->second.second, "b_p mismatch at p = " + std::to_string(p));
    matched += (a == it->second.first) + (b == it->second.second);
  }
  c.require(matched == 14, std::to_string(matched) + "/14 entries match");
  return c;
}

Check criterion2() {
  Check c;
  const std::map<std::uint64_t, std::map<std::uint64_t, int>> table{
      {2, {{2, 1}, {3, 1}}},
      {3, {{2, 4}, {3, 1}}},
      {5, {{2, 5}, {3, 1}, {5, 1}}},
      {7, {{2, 5}, {3, 2}, {7, 1}}},
      {11, {{2, 4}, {3, 1}, {5, 2}, {11, 1}}},
      {13, {{2, 5}, {3, 2}, {7, 1}, {13, 1}}},
      {17, {{2, 9}, {3, 2}, {17, 1}}},
      {37, {{2, 5}, {3, 4}, {19, 1}, {37, 1}}},
  };
  for (const auto& [ell, expected] : table) {
    std::map<std::uint64_t, int> got;
    for (const auto& pp : factorize(gl2_order(ell))) got[pp.prime] = pp.exponent;
    c.require(got == expected, "factorization of #GL2(Z/" + std::to_string(ell) + ")");
  }
  return c;
}

Check criterion3() {
  Check c;
  for (std::uint64_t a = 3; a <= 60; ++a)
    for (std::uint64_t b = 1; a * b <= 60; ++b)
      c.require(map_degree(a, b).degree * psl2_index(a) == psl2_index(a * b),
                "index identity at (" + std::to_string(a) + ", " + std::to_string(b) + ")");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::uint64_t a = 1; a <= 48; ++a)
    for (std::uint64_t b = 2; a * b <= 48; ++b) pairs.emplace_back(a, b);
  std::mt19937_64 rng(20);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  pairs.resize(17);
  pairs.emplace_back(1, 7);
  pairs.emplace_back(2, 2);
  pairs.emplace_back(2, 12);
  for (const auto& [a, b] : pairs) {
    const MapDegree f = map_degree(a, b);
    const std::uint64_t factor = f.half ? 2 : 1;
    const MatGroup g = gl2(a * b);
    for (const auto& r : max_growth_check(g, b)) {
      c.require(r.fiber == factor * f.degree,
                "fiber count at (" + std::to_string(a) + ", " + std::to_string(b) + ")");
      c.require(r.growth == r.fiber, "growth under GL2 at (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
  }
  return c;
}

Check criterion4() {
  Check c;
  for (std::uint64_t n = 3; n <= 40; ++n) {
    std::uint64_t total = 0;
    for (const auto& r : degree_spectrum(gl2(n)).records) total += r.degree;
    c.require(total == psl2_index(n), "spectrum sum at n = " + std::to_string(n));
  }
  std::multiset<std::uint64_t> degrees;
  for (const auto& r : degree_spectrum(borel(7)).records) degrees.insert(r.degree);
  c.require(degrees == std::multiset<std::uint64_t>{3, 21}, "Borel mod 7 degrees");

  // Brute force: apply every element of the naive closure to every vector.
  const std::vector<MatGroup> groups{borel(7), gl2(5), split_cartan(9), borel(12), gl2(10), sl2(8)};
  for (const MatGroup& g : groups) {
    const auto n = static_cast<std::int64_t>(g.modulus());
    std::vector<oracle::M> gens;
    for (const Mat2& x : g.generators())
      gens.push_back({static_cast<std::int64_t>(x.a()), static_cast<std::int64_t>(x.b()),
                      static_cast<std::int64_t>(x.c()), static_cast<std::int64_t>(x.d())});
    const auto elems = oracle::closure(gens, n);
    const auto expected = oracle::orbits(elems, n, n);
    const DegreeSpectrum s = degree_spectrum(g);
    c.require(expected.size() == s.records.size(), "orbit count mod " + std::to_string(n));
    for (const auto& orb : expected) {
      const auto& first = *orb.begin();
      const auto& rec = s.records[s.record_of(Vec2(g.modulus(), first[0], first[1]))];
      c.require(rec.size == orb.size(), "orbit size mod " + std::to_string(n));
      for (const auto& v : orb)
        c.require(s.record_of(Vec2(g.modulus(), v[0], v[1])) == s.record_of(Vec2(g.modulus(), first[0], first[1])),
                  "orbit membership mod " + std::to_string(n));
    }
  }
  return c;
}

Check criterion5() {
  Check c;
  for (const auto& s : samples::prop_samples()) {
    const MatGroup k = kernel_of_projection(s.group, s.cofactor);
    const Mat2 t = samples::lift_with_identity(Mat2(s.ell, 1, 1, 0, 1), s.cofactor);
    const Mat2 u = samples::lift_with_identity(Mat2(s.ell, 1, 0, 1, 1), s.cofactor);
    c.require(k.contains(t) && k.contains(u), s.name);
  }
  return c;
}

Check criterion6() {
  Check c;
  struct Synthetic {
    MatGroup group;
    int stage;
    std::uint64_t level;
  };
  const std::vector<Synthetic> synthetic{
      {preimage(borel(4), 32), 2, 4},
      {preimage(borel(8), 32), 3, 8},
      {preimage(borel(3), 27), 1, 3},
      {preimage(split_cartan(9), 27), 2, 9},
      {preimage(borel(5), 25), 1, 5},
  };
  for (const auto& s : synthetic) {
    const LadicDetection d = detect_ladic_level(s.group, s.stage);
    const std::string tag = "mod " + std::to_string(s.group.modulus()) + " level " + std::to_string(s.level);
    c.require(d.certified, tag + " not certified");
    c.require(d.certificate.minimal_level == s.level, tag + " minimized to " +
                                                          std::to_string(d.certificate.minimal_level));
    c.require(minimize_level(s.group, s.group.modulus()) == s.level, tag + " direct minimization");
  }
  const std::vector<PrimeLevel> d72{{2, 2}, {3, 1}};
  const LevelCertificate c72 = compose_level(preimage(direct_product(borel(2), borel(3)), 72), d72);
  c.require(c72.minimal_level == 6, "mod 72 composed level " + std::to_string(c72.minimal_level));
  const std::vector<PrimeLevel> d100{{2, 1}, {5, 1}};
  const LevelCertificate c100 = compose_level(preimage(direct_product(borel(5), gl2(4)), 100), d100);
  c.require(c100.minimal_level == 5, "mod 100 composed level " + std::to_string(c100.minimal_level));
  return c;
}

Check criterion7() {
  Check c;
  const SporadicCertificate s229 = lifting_certificate(229, 114);
  c.require(s229.issued(), "(229, 114) not issued");
  c.require(s229.threshold == Rational(7 * 26220, 1600), "(229, 114) threshold");
  const SporadicCertificate s37 = lifting_certificate(37, 6);
  c.require(!s37.issued(), "(37, 6) should be inconclusive");
  const auto gon = known_gonality(37);
  c.require(gon && gon->gonality == 18, "gonality of X_1(37)");
  c.require(gon && frey_gonality_cert(37, 6, gon->gonality).finitely_many, "Frey certificate for (37, 6)");
  const CmThreshold t = cm_threshold(cm_order(-4));
  c.require(t.prime == 229, "CM prime for disc -4");
  const CmPointDegree p = cm_point_degree(cm_order(-4), t.prime);
  c.require(p.degree == 114, "CM degree for disc -4");
  c.require(p.certificate.issued(), "CM certificate for disc -4");
  return c;
}

Check criterion8() {
  Check c;
  const std::string dir = MODCURVE_DATA_DIR;
  const GaloisProfile b37 = io::parse_profile(io::read_json(dir + "/profile_borel37.json"));
  const GaloisProfile ns17 = io::parse_profile(io::read_json(dir + "/profile_nonsplit17.json"));
  const GaloisProfile p57 = io::parse_profile(io::read_json(dir + "/profile_5_7.json"));
  c.require(classify_profile(b37, 37).case_number == 4, "37-Borel case");
  c.require(classify_profile(ns17, 17).case_number == 1, "17-nonsplit case");
  c.require(classify_profile(p57, 35).case_number == 2, "{5,7} case");

  for (const GaloisProfile* p : {&b37, &ns17, &p57})
    c.require(p->flags.assume_sz, "profiles are expected to set assume_sz");
  int survivors = 0;
  for (std::uint64_t n : {17ULL, 37ULL, 17ULL * 37, 19ULL * 37, 37ULL * 37}) {
    survivors = 0;
    const bool has37 = n % 37 == 0;
    for (const GaloisProfile* p : {&b37, &ns17, &p57}) {
      const ScreenVerdict v = sz_screen(*p, n).verdict;
      c.require(v == ScreenVerdict::Borel37Sporadic || v == ScreenVerdict::NoSporadic ||
                    v == ScreenVerdict::ExcludedByAssumption,
                "unexpected screen verdict");
      if (v == ScreenVerdict::Borel37Sporadic) {
        ++survivors;
        c.require(p == &b37, "only the 37-Borel profile may survive");
      }
    }
    c.require(survivors == (has37 ? 1 : 0), "survivor count at n = " + std::to_string(n));
  }
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "classification table", 1, criterion1},
      {2, "GL2 cardinalities", 1, criterion2},
      {3, "degree/index consistency", 10, criterion3},
      {4, "orbit oracle equivalence", 30, criterion4},
      {5, "SL2 in the kernel at 5 and 7", 60, criterion5},
      {6, "level machinery", 60, criterion6},
      {7, "sporadic certificates", 1, criterion7},
      {8, "classification pipeline", 1, criterion8},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check result;
    try {
      result = cr.run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (result.ok && secs >= cr.limit_seconds) {
      result.ok = false;
      result.detail = "time limit exceeded";
    }
    std::ostringstream line;
    line << (result.ok ? "PASS" : "FAIL") << " criterion " << cr.id << " (" << cr.name << ") "
         << secs << "s / " << cr.limit_seconds << "s";
    if (!result.ok) line << ": " << result.detail;
    std::cout << line.str() << std::endl;
    failures += !result.ok;
  }
  return failures == 0 ? 0 : 1;
}
