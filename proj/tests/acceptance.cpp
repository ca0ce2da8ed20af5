// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "hulldev/deviation.hpp"
#include "hulldev/inequalities.hpp"
#include "hulldev/nerve.hpp"
#include "hulldev/random.hpp"
#include "test_support.hpp"

namespace {

using namespace hulldev;
using nlohmann::json;

struct CliRun {
  int code = -1;
  json report;
  std::string err;
  double seconds = 0.0;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hulldev");
  std::ostringstream out, err;
  CliRun r;
  const auto start = std::chrono::steady_clock::now();
  r.code = cli::run(args, out, err);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.err = err.str();
  if (r.code == 0) r.report = json::parse(out.str());
  return r;
}

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::vector<Vec> points_in_ball(Rng& rng, int k, int dim, const NormSpec& spec) {
  std::vector<Vec> pts;
  for (int i = 0; i < k; ++i) pts.push_back(testing::random_in_unit_ball(rng, dim, spec));
  return pts;
}

AscentOptions single_thread() {
  AscentOptions o;
  o.threads = 1;
  return o;
}

// ---- criteria ---------------------------------------------------------------------

std::vector<std::vector<std::string>> extremal_commands() {
  std::vector<std::vector<std::string>> cmds;
  for (int n = 2; n <= 6; ++n) {
    cmds.push_back({"chd", "compute", "--norm", "l1", "--extremal-basis", std::to_string(n), "--seed", "1"});
    cmds.push_back({"chd", "compute", "--norm", "linf", "--extremal-signs", std::to_string(n), "--seed", "1"});
  }
  return cmds;
}

Verdict c1_extremal() {
  Verdict v;
  double slowest = 0.0, worst_gap = 0.0;
  for (const auto& cmd : extremal_commands()) {
    const auto r = cli(cmd);
    const int n = std::stoi(cmd[5]);
    const double target = 2.0 * (n - 1) / n;
    if (r.code != 0) return {false, cmd[3] + " n=" + cmd[5] + " exit " + std::to_string(r.code) + ": " + r.err};
    const double lower = r.report["results"]["report"]["lower"];
    const double upper = r.report["results"]["report"]["upper"];
    slowest = std::max(slowest, r.seconds);
    worst_gap = std::max(worst_gap, target - lower);
    if (lower < target - 1e-6 || upper != target || r.seconds >= 10.0) {
      v.pass = false;
      v.detail = cmd[3] + " n=" + cmd[5] + " lower=" + num(lower) + " upper=" + num(upper);
    }
  }
  if (v.pass) v.detail = "10 runs, max(2(n-1)/n - lower)=" + num(worst_gap) + ", slowest " + num(slowest) + " s";
  return v;
}

Verdict c2_soundness() {
  Rng rng = make_rng(2002);
  const auto norms = testing::test_norms();
  double worst = -1e300;
  for (int trial = 0; trial < 500; ++trial) {
    const auto& spec = norms[static_cast<std::size_t>(trial) % norms.size()];
    const int dim = 2 + trial % 3;
    const int k = 2 + static_cast<int>(rng() % 5);
    const auto cfg = PointConfig::make(points_in_ball(rng, k, dim, spec), spec, 1.0);
    const double lower = deviation_lower(cfg, 8, static_cast<std::uint64_t>(trial), single_thread()).lower;
    const double excess = lower - theoretical_bounds(cfg).upper;
    worst = std::max(worst, excess);
    if (excess > 1e-6) return {false, "trial " + std::to_string(trial) + " exceeds bound by " + num(excess)};
  }
  return {true, "500 configs, max(lower - bound)=" + num(worst)};
}

Verdict c3_ceilings() {
  Rng rng = make_rng(3003);
  double worst_h = 0.0, worst_2d = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 3 + trial % 3;
    const int k = 2 + static_cast<int>(rng() % 5);
    const auto cfg = PointConfig::make(points_in_ball(rng, k, dim, NormSpec::l2()), NormSpec::l2(), 1.0);
    worst_h = std::max(worst_h, deviation_lower(cfg, 8, static_cast<std::uint64_t>(trial), single_thread()).lower);
  }
  const auto norms = testing::test_norms();
  for (int trial = 0; trial < 200; ++trial) {
    const auto& spec = norms[static_cast<std::size_t>(trial) % norms.size()];
    const int k = 2 + static_cast<int>(rng() % 5);
    const auto cfg = PointConfig::make(points_in_ball(rng, k, 2, spec), spec, 1.0);
    worst_2d = std::max(worst_2d, deviation_lower(cfg, 8, static_cast<std::uint64_t>(trial), single_thread()).lower);
  }
  return {worst_h <= 1.0 + 1e-6 && worst_2d <= 1.0 + 1e-6,
          "max Euclidean " + num(worst_h) + ", max planar " + num(worst_2d)};
}

Verdict c4_oracle() {
  Rng rng = make_rng(4004);
  const auto norms = testing::test_norms();
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto& spec = norms[static_cast<std::size_t>(trial) % norms.size()];
    const auto cfg = PointConfig::make(points_in_ball(rng, 3, 2, spec), spec, 1.0);
    const double lower = deviation_lower(cfg, 16, static_cast<std::uint64_t>(trial), single_thread()).lower;
    worst = std::max(worst, std::abs(lower - deviation_oracle(cfg, 500)));
  }
  return {worst <= 1e-3, "100 configs, max |lower - oracle|=" + num(worst)};
}

Verdict c5_two_point() {
  Rng rng = make_rng(5005);
  double worst = 0.0;
  for (const auto& spec : testing::test_norms()) {
    for (int trial = 0; trial < 100; ++trial) {
      const int dim = 1 + trial % 5;
      const auto pts = testing::random_points(rng, 2, dim, 2.0);
      const auto cfg = PointConfig::make(pts, spec);
      const double lower = deviation_lower(cfg, 4, static_cast<std::uint64_t>(trial), single_thread()).lower;
      worst = std::max(worst, std::abs(lower - norm_of(pts[0] - pts[1], spec) / 2.0));
    }
  }
  return {worst <= 1e-9, "500 pairs, max error " + num(worst)};
}

Verdict c6_inequalities() {
  const std::vector<Exponent> ps = {Exponent::finite(1), Exponent::finite(1.5), Exponent::finite(2),
                                    Exponent::finite(3), Exponent::infinity()};
  FuzzOptions opts;
  opts.families = 1000;
  opts.seed = 6006;
  double worst = 1e300;
  long violations = 0, checks = 0;
  for (const auto& p : ps) {
    const auto s = fuzz_inequalities(p, opts);
    violations += static_cast<long>(s.violations.size());
    checks += s.checks;
    for (double m : s.worst_margin)
      if (std::isfinite(m)) worst = std::min(worst, m);
  }
  Rng rng = make_rng(6007);
  double reduction = 0.0;
  for (const auto& p : ps) {
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + trial % 5, k = 1 + trial % 7;
      const auto f = WeightedFamily::make(testing::random_points(rng, k, n, 3.0), dirichlet_flat(rng, k), p);
      const auto m1 = check_ineq1(f);
      const auto m4 = check_ineq4(f, WeightedFamily::uniform({Vec::Zero(n)}, p));
      reduction = std::max({reduction, std::abs(m1.lhs - m4.lhs) / std::max(1.0, m1.lhs),
                            std::abs(m1.rhs - m4.rhs) / std::max(1.0, m1.rhs)});
    }
  }
  return {violations == 0 && reduction <= 1e-12,
          std::to_string(checks) + " checks, " + std::to_string(violations) + " violations, min margin " + num(worst) +
              ", reduction gap " + num(reduction)};
}

Verdict c7_example() {
  const auto r = cli({"nerve", "example-l1"});
  if (r.code != 0) return {false, "exit " + std::to_string(r.code) + ": " + r.err};
  int passed = 0;
  for (const auto& c : r.report["results"]["checks"]) passed += c["passed"].get<bool>();
  const bool betti = r.report["results"]["betti"]["betti"] == json({1, 0, 1});
  return {passed == 5 && betti && r.seconds < 60.0,
          std::to_string(passed) + "/5 sub-checks, Betti " + r.report["results"]["betti"]["betti"].dump() + ", " +
              num(r.seconds) + " s"};
}

Verdict c8_contractible() {
  long systems = 0, nontrivial = 0;
  const std::vector<NormSpec> planar = {NormSpec::l1(), NormSpec::l2(), NormSpec::linf()};
  auto check = [&](const NormSpec& spec, int dim, int i) {
    const int count = 4 + i % 9;
    const auto sys = random_admissible(spec, dim, count, mix_seed(8008, static_cast<std::uint64_t>(i)));
    const auto k = build_nerve(sys, std::min(count - 1, dim + 1));
    ++systems;
    nontrivial += !betti_numbers(k).reduced_trivial();
  };
  for (int i = 0; i < 50; ++i) check(planar[static_cast<std::size_t>(i) % 3], 2, i);
  for (int i = 0; i < 50; ++i) check(NormSpec::l2(), 3, 100 + i);
  return {nontrivial == 0, std::to_string(systems) + " systems, " + std::to_string(nontrivial) + " nontrivial"};
}

std::vector<std::vector<std::string>> search_commands() {
  return {{"chd", "search", "--norm", "l1", "--dim", "3", "--points", "3", "--budget", "10000", "--seed", "9"},
          {"chd", "search", "--norm", "linf", "--dim", "3", "--points", "3", "--budget", "10000", "--seed", "9"}};
}

Verdict c9_non_hilbert() {
  Verdict v;
  for (const auto& cmd : search_commands()) {
    const auto r = cli(cmd);
    if (r.code != 0) return {false, cmd[3] + " exit " + std::to_string(r.code) + ": " + r.err};
    const double lower = r.report["results"]["report"]["lower"];
    v.pass = v.pass && lower > 1.3;
    v.detail += (v.detail.empty() ? "" : ", ") + cmd[3] + " " + num(lower);
  }
  return v;
}

Verdict c10_sections() {
  Verdict v;
  for (const std::string norm : {"linf", "l1"}) {
    const auto r = cli({"section", "cover", "--norm", norm, "--dim", "3", "--k", "2", "--random", "10", "--seed", "10"});
    if (r.code != 0 && r.code != 2) return {false, norm + " exit " + std::to_string(r.code) + ": " + r.err};
    double worst = 0.0;
    if (r.code == 0)
      for (const auto& inst : r.report["results"]["instances"]) worst = std::max(worst, inst["worst_gauge"].get<double>());
    v.pass = v.pass && r.code == 0 && worst <= 1.0 + 1e-4;
    v.detail += (v.detail.empty() ? "" : ", ") + norm + " worst gauge " + (r.code == 0 ? num(worst) : r.err);
  }
  return v;
}

Verdict c11_determinism() {
  std::vector<std::vector<std::string>> cmds = extremal_commands();
  cmds.push_back({"nerve", "example-l1"});
  for (const auto& c : search_commands()) cmds.push_back(c);
  int identical = 0;
  for (const auto& cmd : cmds) {
    const auto a = cli(cmd), b = cli(cmd);
    if (a.code == 0 && b.code == 0 && a.report["results"].dump() == b.report["results"].dump()) ++identical;
  }
  return {identical == static_cast<int>(cmds.size()),
          std::to_string(identical) + "/" + std::to_string(cmds.size()) + " result sections byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"extremal exactness", c1_extremal},    {"upper-bound soundness", c2_soundness},
      {"Hilbert and planar ceiling", c3_ceilings}, {"oracle agreement", c4_oracle},
      {"two-point closed form", c5_two_point}, {"inequality fuzz", c6_inequalities},
      {"l1 example end-to-end", c7_example},  {"contractible coverings", c8_contractible},
      {"non-Hilbert evidence", c9_non_hilbert}, {"section covering", c10_sections},
      {"determinism", c11_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << v.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
