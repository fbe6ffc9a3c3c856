#pragma once

// JSON ingestion of group and profile files, and JSON views of every
// library result. Rationals are written as {"num": p, "den": q}.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "modcurve/classify.hpp"
#include "modcurve/curveinv.hpp"
#include "modcurve/levels.hpp"
#include "modcurve/orbits.hpp"
#include "modcurve/sporadic.hpp"

namespace modcurve::io {

using Json = nlohmann::ordered_json;

/// {"modulus": n, "generators": [[a,b,c,d], ...]} or
/// {"modulus": n, "standard": "gl2" | "sl2" | "borel" | "split_cartan" | "trivial"}.
MatGroup parse_group(const Json& doc);
GaloisProfile parse_profile(const Json& doc);

/// Reads and parses a JSON file; throws InvalidArgument naming the path on failure.
Json read_json(const std::filesystem::path& path);

Json to_json(const Rational& r);
Json to_json(const Mat2& m);
Json to_json(const Vec2& v);
Json group_summary(const MatGroup& g, std::size_t cap);
Json to_json(const DegreeSpectrum& s);
Json to_json(const std::vector<GrowthRecord>& records);
Json to_json(const PushforwardReport& r);
Json to_json(const StageEvidence& e);
Json to_json(const PreimageCheck& c);
Json to_json(const LevelCertificate& c);
Json to_json(const LadicDetection& d);
Json to_json(const CurveInvariants& inv);
Json to_json(const FreyVerdict& f);
Json to_json(const SporadicCertificate& c);
Json to_json(const CmThreshold& t);
Json to_json(const CmPointDegree& d);
Json to_json(const ClassificationVerdict& v);
Json to_json(const ScreenResult& r);
Json to_json(const TargetLevel& t);
Json to_json(const std::vector<ClassificationRow>& rows);

}  // namespace modcurve::io
