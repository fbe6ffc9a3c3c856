#include "modcurve/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "modcurve/errors.hpp"
#include "modcurve/io.hpp"
#include "modcurve/tables.hpp"

namespace modcurve::cli {

namespace {

using io::Json;

struct Table {
  std::string title;
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};

struct Output {
  Json doc;
  std::vector<Table> tables;
  int exit_code = kExitOk;
};

std::string str(std::uint64_t x) { return std::to_string(x); }
std::string str(std::int64_t x) { return std::to_string(x); }
std::string str(int x) { return std::to_string(x); }
std::string str(bool b) { return b ? "true" : "false"; }
std::string str(const Rational& r) { return to_string(r); }
std::string str(const Vec2& v) { return "(" + str(v.x()) + " " + str(v.y()) + ")"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void render(const Output& o, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << o.doc.dump(2) << "\n";
    return;
  }
  bool first = true;
  for (const Table& t : o.tables) {
    if (!first) out << "\n";
    first = false;
    if (format == "csv") {
      for (std::size_t i = 0; i < t.headers.size(); ++i) {
        out << (i ? "," : "") << csv_field(t.headers[i]);
      }
      out << "\n";
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
        out << "\n";
      }
    } else {
      if (!t.title.empty()) out << "### " << t.title << "\n\n";
      out << "|";
      for (const auto& h : t.headers) out << " " << h << " |";
      out << "\n|";
      for (std::size_t i = 0; i < t.headers.size(); ++i) out << "---|";
      out << "\n";
      for (const auto& row : t.rows) {
        out << "|";
        for (const auto& c : row) out << " " << c << " |";
        out << "\n";
      }
    }
  }
}

Table key_values(std::string title, std::vector<std::pair<std::string, std::string>> kv) {
  Table t{std::move(title), {"field", "value"}, {}};
  for (auto& [k, v] : kv) t.rows.push_back({k, v});
  return t;
}

// "2:1,3:1" -> {(2,1), (3,1)}
std::vector<std::pair<std::uint64_t, std::uint64_t>> parse_pairs(const std::string& spec,
                                                                 const std::string& what) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw InvalidArgument(what + ": expected prime:value, got '" + item + "'");
    }
    try {
      std::size_t u1 = 0;
      std::size_t u2 = 0;
      const std::string l = item.substr(0, colon);
      const std::string r = item.substr(colon + 1);
      const std::uint64_t a = std::stoull(l, &u1);
      const std::uint64_t b = std::stoull(r, &u2);
      if (u1 != l.size() || u2 != r.size()) throw std::invalid_argument("trailing");
      out.emplace_back(a, b);
    } catch (const std::exception&) {
      throw InvalidArgument(what + ": malformed entry '" + item + "'");
    }
  }
  if (out.empty()) throw InvalidArgument(what + ": empty list");
  return out;
}

std::string factor_string(std::uint64_t n) {
  std::string s;
  for (const auto& pp : factorize(n)) {
    if (!s.empty()) s += " ";
    s += str(pp.prime);
    if (pp.exponent > 1) s += "^" + str(pp.exponent);
  }
  return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------------------
// Commands

struct GroupArgs {
  std::string in;
  std::uint64_t project = 0;
  std::uint64_t kernel = 0;
  std::uint64_t goursat = 0;
};

Output cmd_group(const GroupArgs& a, std::size_t cap) {
  const MatGroup g = io::parse_group(io::read_json(a.in));
  Output o;
  o.doc = io::group_summary(g, cap);
  Table t = key_values("group", {{"modulus", str(g.modulus())},
                                 {"order", str(o.doc["order"].get<std::uint64_t>())},
                                 {"gl2_order", str(o.doc["gl2_order"].get<std::uint64_t>())},
                                 {"index", str(o.doc["index"].get<std::uint64_t>())},
                                 {"contains_sl2", str(o.doc["contains_sl2"].get<bool>())}});
  if (a.project) {
    const MatGroup p = project(g, a.project);
    o.doc["projection"] = Json{{"modulus", a.project}, {"order", p.order(cap)}};
    t.rows.push_back({"projection_order_mod_" + str(a.project), str(p.order(cap))});
  }
  if (a.kernel) {
    const MatGroup k = kernel_of_projection(g, a.kernel, cap);
    o.doc["kernel"] = Json{{"modulus", a.kernel},
                           {"order", k.order(cap)},
                           {"contains_sl2", contains_sl2(k, cap)}};
    t.rows.push_back({"kernel_order_mod_" + str(a.kernel), str(k.order(cap))});
  }
  if (a.goursat) {
    const std::uint64_t left = a.goursat;
    if (g.modulus() % left != 0) throw InvalidArgument("--goursat must divide the modulus");
    const GoursatData d = goursat(g, left, g.modulus() / left, cap);
    o.doc["goursat"] = Json{{"left_modulus", d.left_modulus},
                            {"right_modulus", d.right_modulus},
                            {"left_image_order", d.left_image.order(cap)},
                            {"right_image_order", d.right_image.order(cap)},
                            {"left_kernel_order", d.left_kernel.order(cap)},
                            {"right_kernel_order", d.right_kernel.order(cap)},
                            {"common_quotient_order", d.common_quotient_order}};
    t.rows.push_back({"goursat_common_quotient_order", str(d.common_quotient_order)});
  }
  o.tables.push_back(std::move(t));
  return o;
}

Output cmd_orbits(const std::string& in) {
  const MatGroup g = io::parse_group(io::read_json(in));
  const OrbitPartition part(g);
  struct Row {
    std::uint64_t point_order;
    Vec2 rep;
    std::uint64_t size;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < part.orbit_count(); ++i) {
    const Vec2 rep = part.representative(i);
    rows.push_back({order(rep), rep, part.size(i)});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    return std::tie(x.point_order, x.rep) < std::tie(y.point_order, y.rep);
  });
  Output o;
  Json list = Json::array();
  Table t{"orbits on (Z/" + str(g.modulus()) + ")^2", {"point_order", "representative", "size"}, {}};
  for (const Row& r : rows) {
    list.push_back(Json{{"point_order", r.point_order},
                        {"representative", io::to_json(r.rep)},
                        {"size", r.size}});
    t.rows.push_back({str(r.point_order), str(r.rep), str(r.size)});
  }
  o.doc = Json{{"modulus", g.modulus()}, {"orbit_count", rows.size()}, {"orbits", list}};
  o.tables.push_back(std::move(t));
  return o;
}

struct DegreeArgs {
  std::string in;
  std::uint64_t field_degree = 1;
  std::uint64_t growth = 0;
  std::uint64_t pushforward = 0;
};

Output cmd_degrees(const DegreeArgs& a) {
  const MatGroup g = io::parse_group(io::read_json(a.in));
  const DegreeSpectrum s = degree_spectrum(g, a.field_degree);
  Output o;
  o.doc = io::to_json(s);
  Table t{"degree spectrum", {"representative", "size", "minus_closed", "c", "degree"}, {}};
  for (const auto& r : s.records) {
    t.rows.push_back({str(r.representative), str(r.size), str(r.minus_closed),
                      str(Rational(r.twice_c, 2)), str(r.degree)});
  }
  o.tables.push_back(std::move(t));
  if (a.growth) {
    const auto recs = max_growth_check(g, a.growth, a.field_degree);
    o.doc["growth"] = Json{{"b", a.growth}, {"records", io::to_json(recs)}};
    Table gt{"growth against X_1(" + str(g.modulus()) + ") -> X_1(" + str(g.modulus() / a.growth) + ")",
             {"representative", "growth", "fiber", "maximal", "degree", "image_degree",
              "map_degree", "multiplicative"},
             {}};
    for (const auto& r : recs) {
      gt.rows.push_back({str(r.representative), str(r.growth), str(r.fiber), str(r.maximal),
                         str(r.degree), str(r.image_degree), str(r.map_degree),
                         str(r.multiplicative)});
    }
    o.tables.push_back(std::move(gt));
  }
  if (a.pushforward) {
    const PushforwardReport r = pushforward_degree_check(g, a.pushforward, a.field_degree);
    o.doc["pushforward"] = io::to_json(r);
    Table pt{"pushforward to X_1(" + str(a.pushforward) + ")",
             {"representative", "degree", "image_representative", "image_degree", "transfers"},
             {}};
    for (const auto& x : r.records) {
      pt.rows.push_back({str(x.representative), str(x.degree), str(x.image_representative),
                         str(x.image_degree), str(x.transfers)});
    }
    o.tables.push_back(std::move(pt));
  }
  return o;
}

Table level_table(const LevelCertificate& c) {
  Table t{"full-preimage checks", {"modulus", "divisor", "order", "reduced_order", "kernel_order", "passed"}, {}};
  for (const auto& x : c.checks) {
    t.rows.push_back({str(x.modulus), str(x.divisor), str(x.order), str(x.reduced_order),
                      str(x.kernel_order), str(x.passed)});
  }
  return t;
}

Output cmd_level(const std::string& in, int stage, const std::string& compose, std::size_t cap) {
  const MatGroup g = io::parse_group(io::read_json(in));
  Output o;
  if (!compose.empty()) {
    std::vector<PrimeLevel> data;
    for (auto [p, t] : parse_pairs(compose, "--compose")) data.push_back({p, static_cast<int>(t)});
    try {
      const LevelCertificate c = compose_level(g, data, cap);
      o.doc = Json{{"certified", true}, {"certificate", io::to_json(c)}};
      o.tables.push_back(key_values("level certificate", {{"level", str(c.level)},
                                                          {"minimal_level", str(c.minimal_level)}}));
      o.tables.push_back(level_table(c));
    } catch (const HypothesisFailed& e) {
      o.doc = Json{{"certified", false}, {"failed_prime", e.prime()}, {"reason", e.what()}};
      o.tables.push_back(key_values("level certificate", {{"certified", "false"},
                                                          {"failed_prime", str(e.prime())},
                                                          {"reason", e.what()}}));
      o.exit_code = kExitNotIssued;
    }
    return o;
  }
  const LadicDetection d = detect_ladic_level(g, stage, cap);
  o.doc = io::to_json(d);
  o.tables.push_back(key_values(
      "l-adic level detection",
      {{"prime", str(d.evidence.prime)},
       {"stage", str(d.evidence.stage)},
       {"kernel_order", str(d.evidence.kernel_order)},
       {"full_kernel_order", str(d.evidence.full_kernel_order)},
       {"certified", str(d.certified)},
       {"level", d.certified ? str(d.certificate.level) : "-"},
       {"minimal_level", d.certified ? str(d.certificate.minimal_level) : "-"}}));
  if (d.certified) {
    o.tables.push_back(level_table(d.certificate));
  } else {
    o.exit_code = kExitNotIssued;
  }
  return o;
}

struct BoundArgs {
  std::vector<std::uint64_t> primes;
  std::uint64_t ell = 0;
  std::string image_order;
  std::string m1;
  std::string tau;
};

Output cmd_level_bound(const BoundArgs& a) {
  BoundInput in;
  in.primes = a.primes;
  if (!a.image_order.empty()) {
    for (auto [p, v] : parse_pairs(a.image_order, "--image-order")) in.image_order[p] = v;
  }
  if (!a.m1.empty()) {
    for (auto [p, v] : parse_pairs(a.m1, "--m1")) in.single_prime_level[p] = v;
  }
  if (!a.tau.empty()) {
    for (auto [p, v] : parse_pairs(a.tau, "--tau")) in.tau[p] = static_cast<int>(v);
  }
  std::vector<std::uint64_t> targets = a.ell ? std::vector<std::uint64_t>{a.ell} : a.primes;
  std::sort(targets.begin(), targets.end());
  Output o;
  Json rows = Json::array();
  Table t{"valuation bounds", {"prime", "tau", "tau_cap", "bound"}, {}};
  for (std::uint64_t l : targets) {
    const int bound = level_bound(in, l);
    const int tau = in.tau.contains(l) ? in.tau.at(l) : default_tau(in, l);
    const int cap = tau_cap(in.primes, l);
    rows.push_back(Json{{"prime", l}, {"tau", tau}, {"tau_cap", cap}, {"bound", bound}});
    t.rows.push_back({str(l), str(tau), str(cap), str(bound)});
  }
  std::vector<std::uint64_t> sorted = a.primes;
  std::sort(sorted.begin(), sorted.end());
  o.doc = Json{{"primes", sorted}, {"bounds", rows}};
  o.tables.push_back(std::move(t));
  return o;
}

Output cmd_curve(std::uint64_t n) {
  const CurveInvariants inv = curve_invariants(n);
  Output o;
  o.doc = io::to_json(inv);
  o.tables.push_back(key_values(
      "X_1(" + str(n) + ")",
      {{"psl2_index", str(inv.psl2_index)},
       {"cusps", str(inv.cusps)},
       {"genus", str(inv.genus)},
       {"gonality_lower_bound", str(inv.gonality_lower)},
       {"known_gonality", inv.known_gonality ? str(inv.known_gonality->gonality) : "-"}}));
  return o;
}

Output cmd_sporadic(std::uint64_t n, std::uint64_t d, std::uint64_t gonality,
                    std::uint64_t lifts) {
  const SporadicCertificate c = lifting_certificate(n, d, lifts);
  Output o;
  o.doc = Json{{"lifting", io::to_json(c)}};
  Table t = key_values("sporadic check", {{"level", str(n)},
                                          {"degree", str(d)},
                                          {"threshold", str(c.threshold)},
                                          {"margin", str(c.margin)},
                                          {"verdict", to_string(c.verdict)}});
  bool proved = c.issued();
  if (gonality) {
    const FreyVerdict f = frey_gonality_cert(n, d, gonality);
    o.doc["frey"] = io::to_json(f);
    t.rows.push_back({"gonality", str(gonality)});
    t.rows.push_back({"finitely_many_of_degree_le_d", str(f.finitely_many)});
    proved = proved || f.finitely_many;
  }
  o.doc["sporadic"] = proved;
  t.rows.push_back({"sporadic", str(proved)});
  o.tables.push_back(std::move(t));
  if (c.issued()) {
    Table chain{"lift chain", {"m", "lift_level", "degree_bound", "threshold", "holds"}, {}};
    for (const auto& s : c.chain) {
      chain.rows.push_back({str(s.multiplier), str(s.lift_level), str(s.degree_bound),
                            str(s.threshold), str(s.holds)});
    }
    o.tables.push_back(std::move(chain));
  }
  o.exit_code = proved ? kExitOk : kExitNotIssued;
  return o;
}

Output cmd_cm(std::int64_t disc, std::uint64_t h, std::uint64_t w, std::uint64_t prime) {
  CmOrder order = h ? make_cm_order(disc, h, w ? w : (disc == -4 ? 4 : disc == -3 ? 6 : 2))
                    : cm_order(disc);
  if (!h && w && w != order.unit_count) {
    throw InvalidArgument("unit count " + str(w) + " does not match discriminant " + str(disc));
  }
  const CmThreshold t = cm_threshold(order);
  const CmPointDegree d = cm_point_degree(order, prime ? prime : t.prime);
  Output o;
  o.doc = Json{{"threshold", io::to_json(t)}, {"point", io::to_json(d)}};
  o.tables.push_back(key_values("CM construction",
                                {{"discriminant", str(disc)},
                                 {"class_number", str(order.class_number)},
                                 {"unit_count", str(order.unit_count)},
                                 {"threshold", str(t.threshold)},
                                 {"smallest_split_prime", str(t.prime)},
                                 {"prime", str(d.prime)},
                                 {"degree", str(d.degree)},
                                 {"lifting_threshold", str(d.certificate.threshold)},
                                 {"verdict", to_string(d.certificate.verdict)}}));
  o.exit_code = d.certificate.issued() ? kExitOk : kExitNotIssued;
  return o;
}

Output cmd_classify(const std::string& in, std::uint64_t n, const std::string& screen,
                    std::uint64_t level) {
  const GaloisProfile p = io::parse_profile(io::read_json(in));
  const ClassificationVerdict v = classify_profile(p, n);
  Output o;
  o.doc = Json{{"verdict", io::to_json(v)}};
  std::vector<std::pair<std::string, std::string>> kv{{"n", str(n)}, {"case", str(v.case_number)}};
  std::string possible;
  for (int c : v.possible_cases) possible += (possible.empty() ? "" : " ") + str(c);
  kv.emplace_back("possible_cases", possible);
  if (v.case_number == 4) {
    std::string cands;
    for (auto c : v.candidates) cands += (cands.empty() ? "" : " ") + str(c);
    kv.emplace_back("p", str(v.p));
    kv.emplace_back("a_p", str(v.a_p));
    kv.emplace_back("b_p", str(v.b_p));
    kv.emplace_back("candidates", cands);
    kv.emplace_back("target", str(v.target));
  }
  if (level) {
    const TargetLevel t = target_level(n, level);
    o.doc["target_level"] = io::to_json(t);
    kv.emplace_back("gcd(n, M)", str(t.target));
    kv.emplace_back("map_degree", str(t.map.degree));
  }
  if (screen == "sz") {
    const ScreenResult r = sz_screen(p, n);
    o.doc["screen"] = io::to_json(r);
    kv.emplace_back("sz_screen", to_string(r.verdict));
  } else if (screen == "prime") {
    if (!is_prime(n)) throw InvalidArgument("--screen prime needs a prime n");
    const ScreenResult r = prime_level_screen(p, n);
    o.doc["screen"] = io::to_json(r);
    kv.emplace_back("prime_level_screen", to_string(r.verdict));
  }
  o.tables.push_back(key_values("classification", kv));
  Table ev{"evidence", {"evidence"}, {}};
  for (const auto& e : v.evidence) ev.rows.push_back({e});
  o.tables.push_back(std::move(ev));
  return o;
}

Output cmd_tables(const std::string& which) {
  Output o;
  if (which == "classification") {
    const auto rows = classification_table();
    o.doc = Json{{"table", "classification"}, {"rows", io::to_json(rows)}};
    Table t{"(p, a_p, b_p)", {"p", "a_p", "b_p", "published_a_p", "published_b_p", "matches"}, {}};
    bool all = true;
    for (const auto& r : rows) {
      t.rows.push_back({str(r.p), str(r.a), str(r.b), str(r.published_a), str(r.published_b),
                        str(r.matches)});
      all = all && r.matches;
    }
    o.doc["all_match"] = all;
    o.tables.push_back(std::move(t));
  } else if (which == "gl2") {
    Json rows = Json::array();
    Table t{"#GL_2(Z/lZ)", {"prime", "order", "factorization"}, {}};
    for (std::uint64_t p : m1_primes()) {
      const std::uint64_t ord = gl2_order(p);
      rows.push_back(Json{{"prime", p}, {"order", ord}, {"factorization", factor_string(ord)}});
      t.rows.push_back({str(p), str(ord), factor_string(ord)});
    }
    o.doc = Json{{"table", "gl2"}, {"rows", rows}};
    o.tables.push_back(std::move(t));
  } else if (which == "sz" || which == "m1") {
    Json rows = Json::array();
    Table t{which == "sz" ? "maximal prime-power level with infinitely many rational points"
                          : "single-prime level bound M_1",
            {"prime", "level"},
            {}};
    for (std::uint64_t p : m1_primes()) {
      const auto v = which == "sz" ? sz_table(p) : m1_table(p);
      if (!v) continue;
      rows.push_back(Json{{"prime", p}, {"level", *v}});
      t.rows.push_back({str(p), str(*v)});
    }
    o.doc = Json{{"table", which}, {"rows", rows}};
    o.tables.push_back(std::move(t));
  } else {
    throw InvalidArgument("unknown table '" + which + "'");
  }
  return o;
}

std::size_t resolve_cap(std::optional<std::int64_t> flag) {
  std::int64_t cap = static_cast<std::int64_t>(kDefaultCap);
  if (flag) {
    cap = *flag;
  } else if (const char* env = std::getenv("MODCURVE_CAP"); env && *env) {
    try {
      std::size_t used = 0;
      cap = std::stoll(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InvalidArgument("MODCURVE_CAP is not an integer: " + std::string(env));
    }
  }
  if (cap < 1) throw InvalidArgument("cap must be at least 1");
  return static_cast<std::size_t>(cap);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite GL_2(Z/nZ) group computations for modular curves X_1(n)", "modcurve"};
  // -h stays free for the cm subcommand's --h option.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::optional<std::int64_t> cap_flag;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "markdown"}));
  app.add_option("--cap", cap_flag, "Maximum number of elements materialized per group");

  GroupArgs group_args;
  auto* group = app.add_subcommand("group", "Order, projections, kernels and Goursat data");
  group->add_option("--in", group_args.in, "Group file")->required();
  group->add_option("--project", group_args.project, "Report the image mod m");
  group->add_option("--kernel", group_args.kernel, "Report the kernel of reduction mod m");
  group->add_option("--goursat", group_args.goursat, "Goursat data for modulus = a * (n/a)");

  std::string orbits_in;
  auto* orbits = app.add_subcommand("orbits", "Orbits on (Z/nZ)^2");
  orbits->add_option("--in", orbits_in, "Group file")->required();

  DegreeArgs degree_args;
  auto* degrees = app.add_subcommand("degrees", "Degrees of points above the j-invariant");
  degrees->add_option("--in", degree_args.in, "Group file")->required();
  degrees->add_option("--field-degree", degree_args.field_degree, "[k:Q]")
      ->check(CLI::PositiveNumber);
  degrees->add_option("--growth", degree_args.growth, "Compare growth along X_1(n) -> X_1(n/b)");
  degrees->add_option("--pushforward", degree_args.pushforward,
                      "Degree bookkeeping along X_1(n) -> X_1(a)");

  std::string level_in;
  int stage = 0;
  std::string compose;
  auto* level = app.add_subcommand("level", "Certify the level of a group");
  level->add_option("--in", level_in, "Group file")->required();
  auto* stage_opt = level->add_option("--stage", stage, "Stage s for l-adic detection");
  auto* compose_opt =
      level->add_option("--compose", compose, "Per-prime data, e.g. 2:1,3:1");
  stage_opt->excludes(compose_opt);

  BoundArgs bound_args;
  auto* bound = app.add_subcommand("level-bound", "Valuation bound on the level of S-adic images");
  bound->add_option("--primes", bound_args.primes, "The prime set S")->required()->delimiter(',');
  bound->add_option("--ell", bound_args.ell, "Only this prime");
  bound->add_option("--image-order", bound_args.image_order, "Mod-p image orders, p:order,...");
  bound->add_option("--m1", bound_args.m1, "Single-prime levels, p:M,...");
  bound->add_option("--tau", bound_args.tau, "Explicit tau, p:t,...");

  std::uint64_t curve_n = 0;
  auto* curve = app.add_subcommand("curve", "Invariants of X_1(N)");
  curve->add_option("N", curve_n, "Level")->required()->check(CLI::PositiveNumber);

  std::uint64_t sp_level = 0;
  std::uint64_t sp_degree = 0;
  std::uint64_t sp_gonality = 0;
  std::uint64_t sp_lifts = kDefaultLiftSteps;
  auto* sporadic = app.add_subcommand("sporadic-check", "Sporadic-point certificates");
  sporadic->add_option("--level", sp_level, "N")->required()->check(CLI::PositiveNumber);
  sporadic->add_option("--degree", sp_degree, "d")->required()->check(CLI::PositiveNumber);
  sporadic->add_option("--gonality", sp_gonality, "Known gonality of X_1(N)")
      ->check(CLI::PositiveNumber);
  sporadic->add_option("--lifts", sp_lifts, "Number of lift steps m = 1..k to record");

  std::int64_t disc = 0;
  std::uint64_t cm_h = 0;
  std::uint64_t cm_w = 0;
  std::uint64_t cm_prime = 0;
  auto* cm = app.add_subcommand("cm", "CM threshold and sporadic CM point degree");
  cm->add_option("--disc", disc, "Discriminant D < 0")->required();
  cm->add_option("--h", cm_h, "Class number h (default: shipped table)");
  cm->add_option("--w", cm_w, "Number of units w");
  cm->add_option("--prime", cm_prime, "Use this split prime instead of the smallest");

  std::string profile_in;
  std::uint64_t classify_n = 0;
  std::string screen = "none";
  std::uint64_t classify_level = 0;
  auto* classify = app.add_subcommand("classify", "Case analysis for a Galois-image profile");
  classify->add_option("--in", profile_in, "Profile file")->required();
  classify->add_option("--n", classify_n, "Level n of X_1(n)")->required()->check(CLI::PositiveNumber);
  classify->add_option("--screen", screen, "Additional screen")
      ->check(CLI::IsMember({"none", "sz", "prime"}));
  classify->add_option("--level", classify_level, "Certified level M for the target gcd(n, M)");

  std::string which;
  auto* tables = app.add_subcommand("tables", "Built-in tables");
  tables->add_option("--which", which, "Table name")
      ->required()
      ->check(CLI::IsMember({"classification", "gl2", "sz", "m1"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    const std::size_t cap = resolve_cap(cap_flag);
    Output o;
    if (group->parsed()) {
      o = cmd_group(group_args, cap);
    } else if (orbits->parsed()) {
      o = cmd_orbits(orbits_in);
    } else if (degrees->parsed()) {
      o = cmd_degrees(degree_args);
    } else if (level->parsed()) {
      if (stage_opt->count() + compose_opt->count() != 1) {
        err << "error: level needs exactly one of --stage or --compose\n";
        return kExitInputError;
      }
      o = cmd_level(level_in, stage, compose, cap);
    } else if (bound->parsed()) {
      o = cmd_level_bound(bound_args);
    } else if (curve->parsed()) {
      o = cmd_curve(curve_n);
    } else if (sporadic->parsed()) {
      o = cmd_sporadic(sp_level, sp_degree, sp_gonality, sp_lifts);
    } else if (cm->parsed()) {
      o = cmd_cm(disc, cm_h, cm_w, cm_prime);
    } else if (classify->parsed()) {
      o = cmd_classify(profile_in, classify_n, screen, classify_level);
    } else {
      o = cmd_tables(which);
    }
    render(o, format, out);
    return o.exit_code;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << " (raise --cap or MODCURVE_CAP)\n";
  } catch (const PreconditionFailed& e) {
    err << "error: precondition failed: " << e.what() << "\n";
  } catch (const InconsistentProfile& e) {
    err << "error: inconsistent profile: " << e.what() << "\n";
  } catch (const NotInvertible& e) {
    err << "error: not invertible: " << e.what() << "\n";
  } catch (const StageTooLow& e) {
    err << "error: stage too low: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitInputError;
}

}  // namespace modcurve::cli
