#include "modcurve/io.hpp"

#include <fstream>
#include <set>

#include "modcurve/errors.hpp"

namespace modcurve::io {

namespace {

void reject_unknown_keys(const Json& doc, const std::set<std::string>& allowed,
                         const std::string& what) {
  if (!doc.is_object()) throw InvalidArgument(what + " must be a JSON object");
  for (const auto& item : doc.items()) {
    if (!allowed.contains(item.key())) {
      throw InvalidArgument(what + ": unknown key '" + item.key() + "'");
    }
  }
}

std::uint64_t positive(const Json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
    throw InvalidArgument(what + " must be a positive integer");
  }
  return v.get<std::uint64_t>();
}

MatGroup standard_group(const std::string& name, std::uint64_t n) {
  if (name == "gl2") return gl2(n);
  if (name == "sl2") return sl2(n);
  if (name == "borel") return borel(n);
  if (name == "split_cartan") return split_cartan(n);
  if (name == "trivial") return trivial_group(n);
  throw InvalidArgument("group file: unknown standard group '" + name + "'");
}

Json u64_list(const std::vector<std::uint64_t>& xs) {
  Json out = Json::array();
  for (auto x : xs) out.push_back(x);
  return out;
}

}  // namespace

MatGroup parse_group(const Json& doc) {
  reject_unknown_keys(doc, {"modulus", "generators", "standard", "name"}, "group file");
  if (!doc.contains("modulus")) throw InvalidArgument("group file: missing 'modulus'");
  const std::uint64_t n = positive(doc["modulus"], "group file: 'modulus'");
  const bool has_gens = doc.contains("generators");
  const bool has_std = doc.contains("standard");
  if (has_gens == has_std) {
    throw InvalidArgument("group file: give exactly one of 'generators' and 'standard'");
  }
  if (has_std) {
    if (!doc["standard"].is_string()) throw InvalidArgument("group file: 'standard' must be a string");
    return standard_group(doc["standard"].get<std::string>(), n);
  }
  const Json& gens = doc["generators"];
  if (!gens.is_array()) throw InvalidArgument("group file: 'generators' must be an array");
  std::vector<Mat2> out;
  for (const Json& g : gens) {
    if (!g.is_array() || g.size() != 4) {
      throw InvalidArgument("group file: each generator must be [a, b, c, d]");
    }
    std::int64_t e[4];
    for (int i = 0; i < 4; ++i) {
      if (!g[i].is_number_integer()) {
        throw InvalidArgument("group file: matrix entries must be integers");
      }
      e[i] = g[i].get<std::int64_t>();
    }
    out.emplace_back(n, e[0], e[1], e[2], e[3]);
  }
  return MatGroup(n, std::move(out));
}

GaloisProfile parse_profile(const Json& doc) {
  reject_unknown_keys(doc, {"field_degree", "nonsurjective", "ladic_levels", "flags", "name"},
                      "profile");
  GaloisProfile p;
  if (doc.contains("field_degree")) p.field_degree = positive(doc["field_degree"], "field_degree");
  if (doc.contains("nonsurjective")) {
    const Json& list = doc["nonsurjective"];
    if (!list.is_array()) throw InvalidArgument("profile: 'nonsurjective' must be an array");
    for (const Json& e : list) {
      reject_unknown_keys(e, {"prime", "type", "level"}, "profile nonsurjective entry");
      if (!e.contains("prime")) throw InvalidArgument("profile: entry without 'prime'");
      NonsurjectivePrime np;
      np.prime = positive(e["prime"], "profile: 'prime'");
      if (e.contains("type")) {
        if (!e["type"].is_string()) throw InvalidArgument("profile: 'type' must be a string");
        np.type = image_type_from_string(e["type"].get<std::string>());
      }
      if (e.contains("level")) np.level = positive(e["level"], "profile: 'level'");
      p.nonsurjective.push_back(np);
    }
  }
  if (doc.contains("ladic_levels")) {
    const Json& m = doc["ladic_levels"];
    if (!m.is_object()) throw InvalidArgument("profile: 'ladic_levels' must be an object");
    for (const auto& item : m.items()) {
      std::uint64_t prime = 0;
      try {
        std::size_t used = 0;
        prime = std::stoull(item.key(), &used);
        if (used != item.key().size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw InvalidArgument("profile: ladic_levels key '" + item.key() + "' is not a prime");
      }
      p.ladic_levels[prime] = positive(item.value(), "profile: ladic level");
    }
  }
  if (doc.contains("flags")) {
    const Json& f = doc["flags"];
    reject_unknown_keys(f, {"assume_sz"}, "profile flags");
    if (f.contains("assume_sz")) {
      if (!f["assume_sz"].is_boolean()) throw InvalidArgument("profile: assume_sz must be boolean");
      p.flags.assume_sz = f["assume_sz"].get<bool>();
    }
  }
  return p;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("malformed JSON in " + path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

Json to_json(const Rational& r) { return Json{{"num", r.numerator()}, {"den", r.denominator()}}; }

Json to_json(const Mat2& m) { return Json::array({m.a(), m.b(), m.c(), m.d()}); }

Json to_json(const Vec2& v) { return Json::array({v.x(), v.y()}); }

Json group_summary(const MatGroup& g, std::size_t cap) {
  Json gens = Json::array();
  for (const auto& m : g.generators()) gens.push_back(to_json(m));
  const std::uint64_t order = g.order(cap);
  const std::uint64_t full = gl2_order(g.modulus());
  return Json{{"modulus", g.modulus()},
              {"generators", gens},
              {"order", order},
              {"gl2_order", full},
              {"index", full / order},
              {"contains_sl2", contains_sl2(g, cap)}};
}

Json to_json(const DegreeSpectrum& s) {
  Json orbits = Json::array();
  for (const auto& r : s.records) {
    orbits.push_back(Json{{"representative", to_json(r.representative)},
                          {"size", r.size},
                          {"point_order", r.point_order},
                          {"minus_closed", r.minus_closed},
                          {"c", to_json(Rational(r.twice_c, 2))},
                          {"degree", r.degree}});
  }
  return Json{{"modulus", s.modulus},
              {"field_degree", s.field_degree},
              {"total_size", s.total_size()},
              {"orbits", orbits}};
}

Json to_json(const std::vector<GrowthRecord>& records) {
  Json out = Json::array();
  for (const auto& r : records) {
    out.push_back(Json{{"representative", to_json(r.representative)},
                       {"orbit_size", r.orbit_size},
                       {"lower_orbit_size", r.lower_orbit_size},
                       {"growth", r.growth},
                       {"fiber", r.fiber},
                       {"maximal", r.maximal},
                       {"degree", r.degree},
                       {"image_degree", r.image_degree},
                       {"map_degree", r.map_degree},
                       {"multiplicative", r.multiplicative}});
  }
  return out;
}

Json to_json(const PushforwardReport& r) {
  Json recs = Json::array();
  for (const auto& x : r.records) {
    recs.push_back(Json{{"representative", to_json(x.representative)},
                        {"degree", x.degree},
                        {"image_representative", to_json(x.image_representative)},
                        {"image_degree", x.image_degree},
                        {"transfers", x.transfers}});
  }
  return Json{{"modulus", r.modulus},
              {"image_modulus", r.image_modulus},
              {"map_degree", r.map_degree},
              {"all_transfer", r.all_transfer()},
              {"records", recs}};
}

Json to_json(const StageEvidence& e) {
  return Json{{"prime", e.prime},
              {"stage", e.stage},
              {"upper_order", e.upper_order},
              {"lower_order", e.lower_order},
              {"kernel_order", e.kernel_order},
              {"full_kernel_order", e.full_kernel_order},
              {"kernel_full", e.kernel_full}};
}

Json to_json(const PreimageCheck& c) {
  return Json{{"modulus", c.modulus},
              {"divisor", c.divisor},
              {"order", c.order},
              {"reduced_order", c.reduced_order},
              {"kernel_order", c.kernel_order},
              {"passed", c.passed}};
}

Json to_json(const LevelCertificate& c) {
  Json pp = Json::array();
  for (const auto& p : c.prime_powers) pp.push_back(Json{{"prime", p.prime}, {"exponent", p.exponent}});
  Json stages = Json::array();
  for (const auto& s : c.stages) stages.push_back(to_json(s));
  Json checks = Json::array();
  for (const auto& x : c.checks) checks.push_back(to_json(x));
  return Json{{"prime_powers", pp},
              {"level", c.level},
              {"minimal_level", c.minimal_level},
              {"stages", stages},
              {"checks", checks}};
}

Json to_json(const LadicDetection& d) {
  Json out{{"certified", d.certified}, {"evidence", to_json(d.evidence)}};
  if (d.certified) out["certificate"] = to_json(d.certificate);
  return out;
}

Json to_json(const CurveInvariants& inv) {
  Json out{{"level", inv.level},
           {"psl2_index", inv.psl2_index},
           {"cusps", inv.cusps},
           {"genus", inv.genus},
           {"gonality_lower_bound", to_json(inv.gonality_lower)}};
  if (inv.known_gonality) {
    out["known_gonality"] = Json{{"gonality", inv.known_gonality->gonality},
                                 {"source", inv.known_gonality->source}};
  } else {
    out["known_gonality"] = nullptr;
  }
  return out;
}

Json to_json(const FreyVerdict& f) {
  return Json{{"level", f.level},
              {"degree", f.degree},
              {"gonality", f.gonality},
              {"finitely_many", f.finitely_many}};
}

Json to_json(const SporadicCertificate& c) {
  Json chain = Json::array();
  for (const auto& s : c.chain) {
    chain.push_back(Json{{"multiplier", s.multiplier},
                         {"lift_level", s.lift_level},
                         {"degree_bound", s.degree_bound},
                         {"threshold", to_json(s.threshold)},
                         {"index_identity", s.index_identity},
                         {"holds", s.holds}});
  }
  return Json{{"level", c.level},
              {"degree", c.degree},
              {"psl2_index", c.psl2_index},
              {"threshold", to_json(c.threshold)},
              {"margin", to_json(c.margin)},
              {"verdict", to_string(c.verdict)},
              {"chain", chain}};
}

Json to_json(const CmThreshold& t) {
  return Json{{"discriminant", t.order.discriminant},
              {"class_number", t.order.class_number},
              {"unit_count", t.order.unit_count},
              {"threshold", to_json(t.threshold)},
              {"prime", t.prime}};
}

Json to_json(const CmPointDegree& d) {
  return Json{{"discriminant", d.order.discriminant},
              {"prime", d.prime},
              {"degree", d.degree},
              {"certificate", to_json(d.certificate)}};
}

Json to_json(const ClassificationVerdict& v) {
  Json cases = Json::array();
  for (int c : v.possible_cases) cases.push_back(c);
  Json out{{"n", v.n},
           {"case", v.case_number},
           {"possible_cases", cases},
           {"between_cases", v.between_cases},
           {"evidence", v.evidence}};
  if (v.case_number == 4) {
    out["p"] = v.p;
    out["a_p"] = v.a_p;
    out["b_p"] = v.b_p;
    out["candidates"] = u64_list(v.candidates);
    out["target"] = v.target;
  }
  return out;
}

Json to_json(const ScreenResult& r) {
  Json out{{"verdict", to_string(r.verdict)}, {"evidence", r.evidence}};
  if (r.frey) out["frey"] = to_json(*r.frey);
  return out;
}

Json to_json(const TargetLevel& t) {
  return Json{{"n", t.n},
              {"level", t.level},
              {"target", t.target},
              {"map_degree", t.map.degree},
              {"c_f", to_json(t.map.c_f())}};
}

Json to_json(const std::vector<ClassificationRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back(Json{{"p", r.p},
                       {"a_p", r.a},
                       {"b_p", r.b},
                       {"published_a_p", r.published_a},
                       {"published_b_p", r.published_b},
                       {"matches", r.matches}});
  }
  return out;
}

}  // namespace modcurve::io
