#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "hulldev/deviation.hpp"
#include "hulldev/inequalities.hpp"
#include "hulldev/nerve.hpp"

namespace hulldev::io {

using json = nlohmann::json;

json to_json(const Vec& v);
Vec vec_from_json(const json& j);

/// Exponents serialize as numbers, with "inf" for infinity.
json to_json(const Exponent& p);
Exponent exponent_from_json(const json& j);

/// {"norm":"lp","p":1.5} or {"norm":"polyhedral","functionals":[[...],...]}
json to_json(const NormSpec& spec);
NormSpec norm_from_json(const json& j);

/// Parses a --norm argument: l1, l2, linf, lp:<value> or poly:<file>.
NormSpec parse_norm_arg(const std::string& arg);

/// {"points":[[...],...], "norm":{...}, "radius_bound":R}; norm and
/// radius_bound are optional. A bare array of points is also accepted.
PointConfig config_from_json(const json& j, const NormSpec& fallback_norm);
json to_json(const PointConfig& cfg);

/// {"radius":r, "norm":{...}, "centers":[[...],...]}
BallSystem balls_from_json(const json& j);
json to_json(const BallSystem& sys);

json to_json(const BoundResult& b);
json to_json(const DeviationReport& r);
json to_json(const XiEstimate& e);
json to_json(const InequalityMargin& m);
json to_json(const WeightedFamily& f);
WeightedFamily family_from_json(const json& j);
/// One replay line: the inequality, the families and the recorded margin.
json to_json(const FuzzCase& c);
FuzzCase fuzz_case_from_json(const json& j);
json to_json(const FuzzSummary& s);
json to_json(const FeasibilityVerdict& v);
json to_json(const NerveComplex& k);
json to_json(const BettiProfile& b);
json to_json(const AdmissibilityReport& a);
json to_json(const ExampleReport& r);
json to_json(const SectionCoverReport& r);

/// Reads a whole file as JSON; throws InvalidInput on I/O or parse errors.
json read_json_file(const std::string& path);

}  // namespace hulldev::io
