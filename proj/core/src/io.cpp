#include "hulldev/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hulldev/errors.hpp"

namespace hulldev::io {

namespace {

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double as_double(const json& j, const char* what) {
  if (!j.is_number()) throw InvalidInput(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<Vec> vecs_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array of vectors");
  std::vector<Vec> out;
  for (const auto& e : j) out.push_back(vec_from_json(e));
  return out;
}

json vecs_to_json(const std::vector<Vec>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

json simplex_list(const std::vector<Simplex>& level) {
  json a = json::array();
  for (const auto& s : level) a.push_back(s);
  return a;
}

}  // namespace

json to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v[i]));
  return a;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("a vector must be a nonempty array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = as_double(j[i], "vector entry");
    if (!std::isfinite(v[static_cast<Eigen::Index>(i)])) throw InvalidInput("vector entries must be finite");
  }
  return v;
}

json to_json(const Exponent& p) { return p.is_infinite() ? json("inf") : json(p.value()); }

Exponent exponent_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return Exponent::infinity();
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size()) return Exponent::finite(v);
    } catch (const std::exception&) {
    }
    throw InvalidInput("invalid exponent \"" + s + "\"");
  }
  return Exponent::finite(as_double(j, "p"));
}

json to_json(const NormSpec& spec) {
  if (spec.is_lp()) return json{{"norm", "lp"}, {"p", to_json(spec.exponent())}};
  return json{{"norm", "polyhedral"}, {"functionals", vecs_to_json(spec.functionals())}};
}

NormSpec norm_from_json(const json& j) {
  if (j.is_string()) return parse_norm_arg(j.get<std::string>());
  const auto kind = require(j, "norm");
  if (!kind.is_string()) throw InvalidInput("\"norm\" must be a string");
  const auto name = kind.get<std::string>();
  if (name == "lp") return NormSpec::lp(exponent_from_json(require(j, "p")));
  if (name == "polyhedral") return NormSpec::polyhedral(vecs_from_json(require(j, "functionals"), "functionals"));
  if (name == "l1" || name == "l2" || name == "linf") return parse_norm_arg(name);
  throw InvalidInput("unknown norm \"" + name + "\"");
}

NormSpec parse_norm_arg(const std::string& arg) {
  if (arg == "l1") return NormSpec::l1();
  if (arg == "l2") return NormSpec::l2();
  if (arg == "linf") return NormSpec::linf();
  if (arg.rfind("lp:", 0) == 0) return NormSpec::lp(exponent_from_json(json(arg.substr(3))));
  if (arg.rfind("poly:", 0) == 0) {
    const json j = read_json_file(arg.substr(5));
    if (j.is_array()) return NormSpec::polyhedral(vecs_from_json(j, "functionals"));
    if (j.contains("functionals") && !j.contains("norm"))
      return NormSpec::polyhedral(vecs_from_json(j.at("functionals"), "functionals"));
    return norm_from_json(j);
  }
  throw InvalidInput("unknown norm \"" + arg + "\" (expected l1, l2, linf, lp:<p> or poly:<file>)");
}

PointConfig config_from_json(const json& j, const NormSpec& fallback_norm) {
  if (j.is_array()) return PointConfig::make(vecs_from_json(j, "points"), fallback_norm);
  const auto points = vecs_from_json(require(j, "points"), "points");
  const NormSpec spec = j.contains("norm") ? norm_from_json(j.at("norm")) : fallback_norm;
  std::optional<double> radius;
  if (j.contains("radius_bound")) radius = as_double(j.at("radius_bound"), "radius_bound");
  return PointConfig::make(points, spec, radius);
}

json to_json(const PointConfig& cfg) {
  return json{{"points", vecs_to_json(cfg.points)}, {"norm", to_json(cfg.spec)}, {"radius_bound", cfg.radius_bound}};
}

BallSystem balls_from_json(const json& j) {
  return BallSystem::make(vecs_from_json(require(j, "centers"), "centers"), as_double(require(j, "radius"), "radius"),
                          norm_from_json(require(j, "norm")));
}

json to_json(const BallSystem& sys) {
  return json{{"radius", sys.radius}, {"norm", to_json(sys.spec)}, {"centers", vecs_to_json(sys.centers)}};
}

json to_json(const BoundResult& b) {
  json terms = json::array();
  for (const auto& t : b.terms) terms.push_back({{"source", to_string(t.source)}, {"value", t.value}});
  return json{{"upper", b.upper}, {"source", to_string(b.source)}, {"terms", terms}};
}

json to_json(const DeviationReport& r) {
  return json{{"lower", r.lower},
              {"upper", r.upper},
              {"upper_source", to_string(r.upper_source)},
              {"witness", {{"weights", to_json(r.witness.weights.alphas)}, {"point", to_json(r.witness.point)}}},
              {"restarts_used", r.restarts_used},
              {"seed", r.seed}};
}

json to_json(const XiEstimate& e) {
  return json{{"value", e.value},
              {"x", to_json(e.x)},
              {"y", to_json(e.y)},
              {"functional", to_json(e.functional.coeffs)},
              {"method", to_string(e.method)}};
}

json to_json(const InequalityMargin& m) {
  return json{{"inequality", to_string(m.id)}, {"lhs", m.lhs}, {"rhs", m.rhs}, {"margin", m.margin}};
}

json to_json(const WeightedFamily& f) {
  return json{{"points", vecs_to_json(f.points)}, {"weights", to_json(f.weights.alphas)}, {"p", to_json(f.p)}};
}

WeightedFamily family_from_json(const json& j) {
  return WeightedFamily::make(vecs_from_json(require(j, "points"), "points"), vec_from_json(require(j, "weights")),
                              exponent_from_json(require(j, "p")));
}

json to_json(const FuzzCase& c) {
  json j{{"inequality", to_string(c.id)}, {"f", to_json(c.f)}, {"margin", to_json(c.margin)}};
  if (c.g) j["g"] = to_json(*c.g);
  return j;
}

FuzzCase fuzz_case_from_json(const json& j) {
  const auto name = require(j, "inequality").get<std::string>();
  FuzzCase c{InequalityId::centered, family_from_json(require(j, "f")), std::nullopt, {}};
  if (name == "centered") c.id = InequalityId::centered;
  else if (name == "schoenberg") c.id = InequalityId::schoenberg;
  else if (name == "refined") c.id = InequalityId::refined;
  else if (name == "two_family") c.id = InequalityId::two_family;
  else throw InvalidInput("unknown inequality \"" + name + "\"");
  if (j.contains("g")) c.g = family_from_json(j.at("g"));
  if (j.contains("margin")) {
    const auto& m = j.at("margin");
    c.margin = {as_double(require(m, "lhs"), "lhs"), as_double(require(m, "rhs"), "rhs"),
                as_double(require(m, "margin"), "margin"), c.id};
  }
  return c;
}

json to_json(const FuzzSummary& s) {
  json worst = json::object();
  for (int i = 0; i < 4; ++i) worst[to_string(static_cast<InequalityId>(i + 1))] = number(s.worst_margin[i]);
  return json{{"p", to_json(s.p)},
              {"checks", s.checks},
              {"worst_margin", worst},
              {"violations", static_cast<long>(s.violations.size())}};
}

json to_json(const FeasibilityVerdict& v) {
  json j{{"status", to_string(v.status)}, {"margin", v.margin}, {"lower", v.lower}, {"upper", v.upper}};
  if (v.witness) j["witness"] = to_json(*v.witness);
  return j;
}

json to_json(const NerveComplex& k) {
  json levels = json::array();
  for (const auto& level : k.simplices) levels.push_back(simplex_list(level));
  return json{{"vertex_count", k.vertex_count},
              {"max_dim", k.max_dim},
              {"truncated", k.truncated},
              {"counts", k.counts()},
              {"euler_characteristic", k.euler_characteristic()},
              {"simplices", levels}};
}

json to_json(const BettiProfile& b) { return json{{"betti", b.betti}, {"reduced", b.reduced()}}; }

json to_json(const AdmissibilityReport& a) {
  json j{{"admissible", a.admissible},
         {"worst_excess", number(a.worst_excess)},
         {"samples", a.samples},
         {"grid_steps", a.grid_steps},
         {"random_samples", a.random_samples}};
  if (a.uncovered) j["uncovered"] = to_json(*a.uncovered);
  return j;
}

json to_json(const ExampleReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return json{{"passed", r.passed()},
              {"system", to_json(r.system)},
              {"checks", checks},
              {"nerve", to_json(r.nerve)},
              {"betti", to_json(r.betti)}};
}

json to_json(const SectionCoverReport& r) {
  return json{{"eta", r.eta},
              {"worst_gauge", r.worst_gauge},
              {"lower_bound", r.lower_bound},
              {"translate", to_json(r.translate)},
              {"functional", to_json(r.functional.coeffs)},
              {"offset", r.offset},
              {"samples", r.samples},
              {"tol", r.tol},
              {"passed", r.passed}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open \"" + path + "\"");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::exception& e) {
    throw InvalidInput("\"" + path + "\" is not valid JSON: " + e.what());
  }
}

}  // namespace hulldev::io
