#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "hulldev/deviation.hpp"
#include "hulldev/errors.hpp"
#include "hulldev/inequalities.hpp"
#include "hulldev/io.hpp"
#include "hulldev/nerve.hpp"
#include "hulldev/parallel.hpp"
#include "hulldev/random.hpp"

namespace hulldev::cli {

namespace {

using io::json;

constexpr const char* kVersion = "0.1.0";

struct Globals {
  std::uint64_t seed = 0;
  int threads = default_threads();
  std::optional<double> tol;
  std::string out;
};

/// What a command produced: echoed inputs, deterministic results, and
/// whether every asserted property held.
struct Outcome {
  json inputs = json::object();
  json results = json::object();
  bool ok = true;
  std::string cause;

  void violate(std::string why) {
    if (ok) cause = std::move(why);
    ok = false;
  }
};

double tolerance(const Globals& g, double fallback) {
  const double t = g.tol.value_or(fallback);
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("--tol must be positive");
  return t;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// ---- chd -----------------------------------------------------------------------

struct ChdComputeArgs {
  std::string norm = "l2";
  std::string points_file;
  int extremal_basis = 0;
  int extremal_signs = 0;
  int restarts = 32;
  std::optional<double> radius_bound;
  CLI::Option* norm_opt = nullptr;
};

std::vector<Vec> basis_points(int n) {
  std::vector<Vec> pts;
  for (int i = 0; i < n; ++i) pts.push_back(Vec::Unit(n, i));
  return pts;
}

std::vector<Vec> sign_points(int n) {
  std::vector<Vec> pts;
  for (int i = 0; i < n; ++i) {
    Vec a = Vec::Ones(n);
    a[i] = -1.0;
    pts.push_back(a);
  }
  return pts;
}

PointConfig load_config(const ChdComputeArgs& a) {
  const NormSpec spec = io::parse_norm_arg(a.norm);
  const int sources = !a.points_file.empty() + (a.extremal_basis > 0) + (a.extremal_signs > 0);
  if (sources != 1) throw InvalidInput("give exactly one of --points-file, --extremal-basis, --extremal-signs");
  if (!a.points_file.empty()) {
    auto cfg = io::config_from_json(io::read_json_file(a.points_file), spec);
    if (a.norm_opt->count() > 0) cfg = PointConfig::make(cfg.points, spec, a.radius_bound);
    else if (a.radius_bound) cfg = PointConfig::make(cfg.points, cfg.spec, a.radius_bound);
    return cfg;
  }
  const int n = a.extremal_basis > 0 ? a.extremal_basis : a.extremal_signs;
  if (n < 2) throw InvalidInput("extremal configurations need n >= 2");
  return PointConfig::make(a.extremal_basis > 0 ? basis_points(n) : sign_points(n), spec, a.radius_bound);
}

Outcome chd_compute(const ChdComputeArgs& a, const Globals& g) {
  const auto cfg = load_config(a);
  if (a.restarts < 1) throw InvalidInput("--restarts must be >= 1");
  Outcome o;
  o.inputs = {{"config", io::to_json(cfg)}, {"restarts", a.restarts}};
  AscentOptions opts;
  opts.threads = g.threads;
  const double slack = tolerance(g, 1e-6);
  const auto rep = deviation_lower(cfg, a.restarts, g.seed, opts);
  o.results = {{"report", io::to_json(rep)}, {"bounds", io::to_json(theoretical_bounds(cfg))}};
  if (rep.lower > rep.upper + slack)
    o.violate("deviation lower bound " + fmt(rep.lower) + " exceeds the proven upper bound " + fmt(rep.upper));
  return o;
}

struct ChdSearchArgs {
  std::string norm = "l2";
  int dim = 3;
  int points = 3;
  long budget = 10000;
  int inner_restarts = 2;
  int final_restarts = 32;
  double t0 = 0.5;
  double cooling = 0.0;
  double move_scale = 1.0;
};

Outcome chd_search(const ChdSearchArgs& a, const Globals& g) {
  const NormSpec spec = io::parse_norm_arg(a.norm);
  SearchOptions opts;
  opts.budget = a.budget;
  opts.seed = g.seed;
  opts.inner_restarts = a.inner_restarts;
  opts.final_restarts = a.final_restarts;
  opts.initial_temperature = a.t0;
  opts.cooling = a.cooling;
  opts.move_scale = a.move_scale;
  opts.threads = g.threads;
  if (a.inner_restarts < 1 || a.final_restarts < 1) throw InvalidInput("restart counts must be >= 1");
  if (!(a.cooling >= 0.0 && a.cooling <= 1.0)) throw InvalidInput("--cooling must lie in [0, 1]");
  Outcome o;
  o.inputs = {{"norm", io::to_json(spec)},   {"dim", a.dim},          {"points", a.points},
              {"budget", a.budget},          {"inner_restarts", a.inner_restarts},
              {"final_restarts", a.final_restarts}, {"t0", a.t0}, {"cooling", a.cooling},
              {"move_scale", a.move_scale}};
  const double slack = tolerance(g, 1e-6);
  const auto res = extremal_search(spec, a.dim, a.points, opts);
  o.results = {{"best", io::to_json(res.best)},
               {"report", io::to_json(res.report)},
               {"accepted_moves", res.accepted_moves}};
  if (res.report.lower > res.report.upper + slack) o.violate("search result exceeds the proven upper bound");
  return o;
}

struct ChdBoundsArgs {
  std::string norm = "l2";
  std::string points_file;
  int dim_min = 2;
  int dim_max = 6;
  std::string csv;
};

Outcome chd_bounds(const ChdBoundsArgs& a, const Globals&) {
  const NormSpec spec = io::parse_norm_arg(a.norm);
  Outcome o;
  if (!a.points_file.empty()) {
    const auto cfg = io::config_from_json(io::read_json_file(a.points_file), spec);
    o.inputs = {{"config", io::to_json(cfg)}};
    o.results = {{"bounds", io::to_json(theoretical_bounds(cfg))}};
    return o;
  }
  if (a.dim_min < 1 || a.dim_max < a.dim_min) throw InvalidInput("need 1 <= --dim-min <= --dim-max");
  o.inputs = {{"norm", io::to_json(spec)}, {"dim_min", a.dim_min}, {"dim_max", a.dim_max}};
  json rows = json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "dim,upper,source\n";
  for (int n = a.dim_min; n <= a.dim_max; ++n) {
    const auto b = space_bounds(spec, n);
    json row = io::to_json(b);
    row["dim"] = n;
    rows.push_back(row);
    csv << n << "," << b.upper << "," << to_string(b.source) << "\n";
  }
  o.results = {{"sweep", rows}};
  if (!a.csv.empty()) {
    std::ofstream f(a.csv);
    if (!f) throw InvalidInput("cannot write \"" + a.csv + "\"");
    f << csv.str();
  }
  return o;
}

struct ChdOracleArgs {
  std::string norm = "l2";
  std::string points_file;
  int grid = 200;
  int restarts = 32;
};

Outcome chd_oracle(const ChdOracleArgs& a, const Globals& g) {
  const auto cfg = io::config_from_json(io::read_json_file(a.points_file), io::parse_norm_arg(a.norm));
  Outcome o;
  o.inputs = {{"config", io::to_json(cfg)}, {"grid_steps", a.grid}, {"restarts", a.restarts}};
  const double oracle = deviation_oracle(cfg, a.grid);
  AscentOptions opts;
  opts.threads = g.threads;
  const auto rep = deviation_lower(cfg, a.restarts, g.seed, opts);
  double diam = 0.0;
  for (const auto& p : cfg.points)
    for (const auto& q : cfg.points) diam = std::max(diam, norm_of(p - q, cfg.spec));
  const double allowed = std::max(tolerance(g, 1e-3), 4.0 * diam / a.grid);
  o.results = {{"oracle", oracle}, {"lower", rep.lower}, {"difference", rep.lower - oracle}, {"allowed", allowed}};
  if (std::abs(rep.lower - oracle) > allowed) o.violate("ascent and grid oracle disagree by " + fmt(rep.lower - oracle));
  return o;
}

// ---- xi ------------------------------------------------------------------------

struct XiArgs {
  std::string norm = "l2";
  int dim = 2;
  long budget = 200000;
};

Outcome xi_cmd(const XiArgs& a, const Globals& g) {
  const NormSpec spec = io::parse_norm_arg(a.norm);
  Outcome o;
  o.inputs = {{"norm", io::to_json(spec)}, {"dim", a.dim}, {"budget", a.budget}};
  const auto est = xi_estimate(spec, a.dim, a.budget, g.seed);
  o.results = {{"estimate", io::to_json(est)}};
  return o;
}

// ---- inequalities ----------------------------------------------------------------

struct IneqFuzzArgs {
  std::vector<std::string> ps = {"1", "1.5", "2", "3", "inf"};
  int families = 1000;
  int max_points = 8;
  int max_dim = 6;
  std::string replay;
};

Outcome ineq_fuzz(const IneqFuzzArgs& a, const Globals& g) {
  FuzzOptions opts;
  opts.families = a.families;
  opts.max_points = a.max_points;
  opts.max_dim = a.max_dim;
  opts.seed = g.seed;
  opts.threads = g.threads;
  opts.tolerance = tolerance(g, 1e-9);
  Outcome o;
  json ps = json::array();
  json summaries = json::array();
  std::vector<FuzzCase> violations;
  for (const auto& text : a.ps) {
    const Exponent p = io::exponent_from_json(json(text));
    ps.push_back(io::to_json(p));
    auto s = fuzz_inequalities(p, opts);
    summaries.push_back(io::to_json(s));
    for (auto& v : s.violations) violations.push_back(std::move(v));
  }
  o.inputs = {{"p", ps}, {"families", a.families}, {"max_points", a.max_points}, {"max_dim", a.max_dim},
              {"tolerance", opts.tolerance}};
  o.results = {{"summaries", summaries}, {"violations", static_cast<long>(violations.size())}};
  if (!a.replay.empty() && !violations.empty()) {
    std::ofstream f(a.replay);
    if (!f) throw InvalidInput("cannot write \"" + a.replay + "\"");
    for (const auto& v : violations) f << io::to_json(v).dump() << "\n";
  }
  if (!violations.empty()) o.violate(std::to_string(violations.size()) + " inequality violations");
  return o;
}

struct IneqReplayArgs {
  std::string replay;
};

Outcome ineq_replay(const IneqReplayArgs& a, const Globals& g) {
  std::ifstream in(a.replay);
  if (!in) throw InvalidInput("cannot open \"" + a.replay + "\"");
  const double tol = tolerance(g, 1e-9);
  Outcome o;
  o.inputs = {{"replay", a.replay}, {"tolerance", tol}};
  json cases = json::array();
  std::string line;
  long failing = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw InvalidInput(std::string("bad replay line: ") + e.what());
    }
    const auto c = io::fuzz_case_from_json(j);
    const auto m = recheck(c);
    const bool bad = m.margin < -tol * std::max(1.0, m.rhs);
    failing += bad;
    cases.push_back({{"margin", io::to_json(m)}, {"violated", bad}});
  }
  o.results = {{"cases", cases}, {"violations", failing}};
  if (failing > 0) o.violate(std::to_string(failing) + " replayed cases still violate their inequality");
  return o;
}

// ---- nerve -----------------------------------------------------------------------

struct NerveAnalyzeArgs {
  std::string balls_file;
  int max_dim = -1;
  int grid = 20;
  int random_samples = 1000;
};

json nerve_summary(const BallSystem& sys, int max_dim, int threads) {
  NerveOptions opts;
  opts.threads = threads;
  const auto k = build_nerve(sys, max_dim, opts);
  return {{"nerve", io::to_json(k)}, {"betti", io::to_json(betti_numbers(k))}};
}

int default_max_dim(const BallSystem& sys) { return std::min(sys.size() - 1, sys.dim() + 1); }

Outcome nerve_analyze(const NerveAnalyzeArgs& a, const Globals& g) {
  const auto sys = io::balls_from_json(io::read_json_file(a.balls_file));
  const int max_dim = a.max_dim >= 0 ? a.max_dim : default_max_dim(sys);
  Outcome o;
  o.inputs = {{"system", io::to_json(sys)}, {"max_dim", max_dim}, {"grid_steps", a.grid},
              {"random_samples", a.random_samples}};
  const auto adm = check_admissible(sys, a.grid, a.random_samples, g.seed);
  o.results = nerve_summary(sys, max_dim, g.threads);
  o.results["admissibility"] = io::to_json(adm);
  return o;
}

Outcome nerve_example(const Globals&) {
  Outcome o;
  const auto rep = verify_example_l1();
  o.results = io::to_json(rep);
  for (const auto& c : rep.checks)
    if (!c.passed) o.violate("sub-check " + c.name + " failed: " + c.detail);
  return o;
}

struct NerveSuiteArgs {
  std::string norm = "l2";
  int dim = 2;
  int count = 10;
  int systems = 50;
};

Outcome nerve_suite(const NerveSuiteArgs& a, const Globals& g) {
  const NormSpec spec = io::parse_norm_arg(a.norm);
  if (a.systems < 1) throw InvalidInput("--systems must be >= 1");
  Outcome o;
  o.inputs = {{"norm", io::to_json(spec)}, {"dim", a.dim}, {"count", a.count}, {"systems", a.systems}};
  // Homology vanishes for admissible coverings in the plane and in Euclidean space.
  const bool asserted = a.dim == 2 || (spec.is_lp() && spec.exponent().is_two());
  json rows = json::array();
  long nontrivial = 0;
  for (int i = 0; i < a.systems; ++i) {
    const std::uint64_t seed = mix_seed(g.seed, static_cast<std::uint64_t>(i));
    const auto sys = random_admissible(spec, a.dim, a.count, seed);
    NerveOptions opts;
    opts.threads = g.threads;
    const auto k = build_nerve(sys, default_max_dim(sys), opts);
    const auto b = betti_numbers(k);
    nontrivial += !b.reduced_trivial();
    rows.push_back({{"seed", seed}, {"radius", sys.radius}, {"counts", k.counts()}, {"betti", b.betti}});
  }
  o.results = {{"systems", rows}, {"nontrivial", nontrivial}, {"asserted", asserted}};
  if (asserted && nontrivial > 0) o.violate(std::to_string(nontrivial) + " admissible systems with nontrivial homology");
  return o;
}

// ---- section ---------------------------------------------------------------------

struct SectionArgs {
  std::string norm = "linf";
  int dim = 3;
  int k = -1;
  std::vector<double> functional;
  double offset = 0.5;
  int random = 0;
  int samples = 2000;
};

Outcome section_cover(const SectionArgs& a, const Globals& g) {
  const NormSpec spec = io::parse_norm_arg(a.norm);
  const int k = a.k >= 0 ? a.k : a.dim - 1;
  const double tol = tolerance(g, 1e-4);
  Outcome o;
  o.inputs = {{"norm", io::to_json(spec)}, {"dim", a.dim}, {"k", k}, {"samples", a.samples}, {"tol", tol}};
  std::vector<std::pair<Functional, double>> instances;
  if (a.random > 0) {
    o.inputs["random"] = a.random;
    Rng rng = make_rng(g.seed, 0x5ec);
    for (int i = 0; i < a.random; ++i) {
      Functional f{gaussian_direction(rng, a.dim)};
      instances.emplace_back(f, uniform(rng, -0.95, 0.95));
    }
  } else {
    if (static_cast<int>(a.functional.size()) != a.dim) throw InvalidInput("--functional needs --dim entries");
    Vec f(a.dim);
    for (int i = 0; i < a.dim; ++i) f[i] = a.functional[static_cast<std::size_t>(i)];
    instances.emplace_back(Functional{f}, a.offset);
    o.inputs["functional"] = io::to_json(f);
    o.inputs["offset"] = a.offset;
  }
  json rows = json::array();
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto rep = section_cover_check(spec, a.dim, instances[i].first, instances[i].second, k, a.samples,
                                         mix_seed(g.seed, i), tol);
    rows.push_back(io::to_json(rep));
    if (!rep.passed) o.violate("section instance " + std::to_string(i) + " has worst gauge " + fmt(rep.worst_gauge));
  }
  o.results = {{"instances", rows}};
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convex hull deviation, CHD bounds, inequality checks and ball-covering nerves", "hulldev"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  Globals g;
  app.add_option("--seed", g.seed, "64-bit seed for every random choice")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--tol", g.tol, "property tolerance (command-specific default)");
  app.add_option("--out", g.out, "write the JSON report to this file");

  std::function<Outcome()> action;
  std::string command;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::string full,
                  std::function<Outcome()> fn) {
    auto* sub = parent->add_subcommand(name, help);
    sub->callback([&command, &action, full, fn] {
      command = full;
      action = fn;
    });
    return sub;
  };

  auto* chd = app.add_subcommand("chd", "convex hull deviation")->require_subcommand(1);
  ChdComputeArgs compute;
  auto* c = leaf(chd, "compute", "lower bound and proven upper bound for one configuration", "chd compute",
                 [&] { return chd_compute(compute, g); });
  compute.norm_opt = c->add_option("--norm", compute.norm, "l1, l2, linf, lp:<p> or poly:<file>")->capture_default_str();
  c->add_option("--points-file", compute.points_file, "JSON configuration file");
  c->add_option("--extremal-basis", compute.extremal_basis, "use the standard basis of R^n");
  c->add_option("--extremal-signs", compute.extremal_signs, "use the points a_ij = (-1)^delta_ij in R^n");
  c->add_option("--restarts", compute.restarts, "ascent restarts")->capture_default_str();
  c->add_option("--radius-bound", compute.radius_bound, "radius R with every point in B_R(0)");

  ChdSearchArgs search;
  auto* s = leaf(chd, "search", "simulated annealing for extremal configurations", "chd search",
                 [&] { return chd_search(search, g); });
  s->add_option("--norm", search.norm)->capture_default_str();
  s->add_option("--dim", search.dim)->capture_default_str();
  s->add_option("--points", search.points, "number of points k")->capture_default_str();
  s->add_option("--budget", search.budget, "annealing steps")->capture_default_str();
  s->add_option("--inner-restarts", search.inner_restarts)->capture_default_str();
  s->add_option("--final-restarts", search.final_restarts)->capture_default_str();
  s->add_option("--t0", search.t0, "initial temperature")->capture_default_str();
  s->add_option("--cooling", search.cooling, "geometric cooling factor (0: span the budget)")->capture_default_str();
  s->add_option("--move-scale", search.move_scale, "perturbation scale factor")->capture_default_str();

  ChdBoundsArgs bounds;
  auto* b = leaf(chd, "bounds", "known bounds on the CHD constant", "chd bounds", [&] { return chd_bounds(bounds, g); });
  b->add_option("--norm", bounds.norm)->capture_default_str();
  b->add_option("--points-file", bounds.points_file, "bounds for one configuration instead of a sweep");
  b->add_option("--dim-min", bounds.dim_min)->capture_default_str();
  b->add_option("--dim-max", bounds.dim_max)->capture_default_str();
  b->add_option("--csv", bounds.csv, "write the sweep as CSV");

  ChdOracleArgs oracle;
  auto* orc = leaf(chd, "oracle", "compare local ascent with the barycentric grid", "chd oracle",
                   [&] { return chd_oracle(oracle, g); });
  orc->add_option("--norm", oracle.norm)->capture_default_str();
  orc->add_option("--points-file", oracle.points_file)->required();
  orc->add_option("--grid", oracle.grid, "grid steps")->capture_default_str();
  orc->add_option("--restarts", oracle.restarts)->capture_default_str();

  auto* xi = app.add_subcommand("xi", "projection constant estimates")->require_subcommand(1);
  XiArgs xia;
  auto* xe = leaf(xi, "estimate", "lower bound on xi_X", "xi estimate", [&] { return xi_cmd(xia, g); });
  xe->add_option("--norm", xia.norm)->capture_default_str();
  xe->add_option("--dim", xia.dim)->capture_default_str();
  xe->add_option("--budget", xia.budget)->capture_default_str();

  auto* ineq = app.add_subcommand("ineq", "weighted energy inequalities")->require_subcommand(1);
  IneqFuzzArgs fuzz;
  auto* fz = leaf(ineq, "fuzz", "random families against every inequality", "ineq fuzz",
                  [&] { return ineq_fuzz(fuzz, g); });
  fz->add_option("--p", fuzz.ps, "exponents (numbers or inf)")->capture_default_str();
  fz->add_option("--families", fuzz.families)->capture_default_str();
  fz->add_option("--max-points", fuzz.max_points)->capture_default_str();
  fz->add_option("--max-dim", fuzz.max_dim)->capture_default_str();
  fz->add_option("--replay", fuzz.replay, "write violating cases here, one JSON document per line");
  IneqReplayArgs replay;
  auto* rp = leaf(ineq, "replay", "recheck stored cases", "ineq replay", [&] { return ineq_replay(replay, g); });
  rp->add_option("--replay", replay.replay)->required();

  auto* nerve = app.add_subcommand("nerve", "ball coverings and their nerves")->require_subcommand(1);
  NerveAnalyzeArgs analyze;
  auto* na = leaf(nerve, "analyze", "admissibility, nerve and Betti numbers of a ball system", "nerve analyze",
                  [&] { return nerve_analyze(analyze, g); });
  na->add_option("--balls-file", analyze.balls_file)->required();
  na->add_option("--max-dim", analyze.max_dim, "default: min(count - 1, dim + 1)");
  na->add_option("--grid", analyze.grid)->capture_default_str();
  na->add_option("--random-samples", analyze.random_samples)->capture_default_str();
  leaf(nerve, "example-l1", "verify the four-ball l_1^3 example", "nerve example-l1", [&] { return nerve_example(g); });
  NerveSuiteArgs suite;
  auto* ns = leaf(nerve, "random-suite", "homology of random admissible coverings", "nerve random-suite",
                  [&] { return nerve_suite(suite, g); });
  ns->add_option("--norm", suite.norm)->capture_default_str();
  ns->add_option("--dim", suite.dim)->capture_default_str();
  ns->add_option("--count", suite.count, "balls per system")->capture_default_str();
  ns->add_option("--systems", suite.systems)->capture_default_str();

  auto* section = app.add_subcommand("section", "hyperplane section coverings")->require_subcommand(1);
  SectionArgs sec;
  auto* sc = leaf(section, "cover", "cover a section by a translate of the scaled central section", "section cover",
                  [&] { return section_cover(sec, g); });
  sc->add_option("--norm", sec.norm)->capture_default_str();
  sc->add_option("--dim", sec.dim)->capture_default_str();
  sc->add_option("--k", sec.k, "section dimension (default dim - 1)");
  sc->add_option("--functional", sec.functional, "functional coefficients")->delimiter(',');
  sc->add_option("--offset", sec.offset)->capture_default_str();
  sc->add_option("--random", sec.random, "check this many random (functional, offset) instances");
  sc->add_option("--samples", sec.samples)->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = action();
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const MarginalIntersection& e) {
    err << "violation: " << e.what() << "\n";
    return kViolation;
  } catch (const ConsistencyError& e) {
    err << "violation: " << e.what() << "\n";
    return kViolation;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json inputs = outcome.inputs;
  inputs["seed"] = g.seed;
  inputs["threads"] = g.threads;
  if (g.tol) inputs["tol"] = *g.tol;
  const json report{{"command", command},
                    {"version", kVersion},
                    {"inputs", inputs},
                    {"results", outcome.results},
                    {"ok", outcome.ok},
                    {"wall_time_seconds", wall}};
  const std::string text = report.dump(2) + "\n";
  if (g.out.empty()) {
    out << text;
  } else {
    std::ofstream f(g.out);
    if (!f) {
      err << "error: cannot write \"" << g.out << "\"\n";
      return kUsage;
    }
    f << text;
  }
  if (!outcome.ok) {
    err << "violation: " << outcome.cause << "\n";
    return kViolation;
  }
  return kOk;
}

}  // namespace hulldev::cli
