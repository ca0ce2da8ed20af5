#include <gtest/gtest.h>

#include <cmath>

#include "hulldev/errors.hpp"
#include "hulldev/space.hpp"
#include "test_support.hpp"

namespace hulldev {
namespace {

using testing::make_vec;

NormSpec hexagon() {
  // +-(1,0), +-(0,1), +-(1,1)
  return NormSpec::polyhedral({make_vec({1, 0}), make_vec({-1, 0}), make_vec({0, 1}), make_vec({0, -1}),
                               make_vec({1, 1}), make_vec({-1, -1})});
}

TEST(NormOf, Examples) {
  EXPECT_DOUBLE_EQ(norm_of(make_vec({1, 1}), NormSpec::l1()), 2.0);
  EXPECT_DOUBLE_EQ(norm_of(make_vec({3, -4}), NormSpec::linf()), 4.0);
  // Six functionals evaluated by hand at (1,0): {1, -1, 0, 0, 1, -1} -> max 1.
  EXPECT_DOUBLE_EQ(norm_of(make_vec({1, 0}), hexagon()), 1.0);
  EXPECT_DOUBLE_EQ(norm_of(make_vec({3, 4}), NormSpec::l2()), 5.0);
}

TEST(NormOf, PolyhedralDimensionMismatch) {
  EXPECT_THROW(norm_of(make_vec({1, 0, 0}), hexagon()), InvalidInput);
}

TEST(NormSpec, PolyhedralValidation) {
  EXPECT_THROW(NormSpec::polyhedral({make_vec({1, 0}), make_vec({0, 1}), make_vec({-1, 0})}), InvalidInput);
  // symmetric but only spans one direction
  EXPECT_THROW(NormSpec::polyhedral({make_vec({1, 1}), make_vec({-1, -1})}), InvalidInput);
  EXPECT_THROW(NormSpec::polyhedral({}), InvalidInput);
  EXPECT_NO_THROW(hexagon());
}

TEST(Exponent, RejectsBelowOne) {
  EXPECT_THROW(Exponent::finite(0.5), InvalidInput);
  EXPECT_THROW(dual_exponent(Exponent::finite(0.99)), InvalidInput);
  EXPECT_THROW(Exponent::finite(INFINITY), InvalidInput);
}

TEST(DualExponent, Examples) {
  auto d = dual_exponent(Exponent::finite(2));
  EXPECT_EQ(d.p_dual, Exponent::finite(2));
  EXPECT_EQ(d.r, Exponent::finite(2));
  EXPECT_EQ(d.r_dual, Exponent::finite(2));

  d = dual_exponent(Exponent::finite(1));
  EXPECT_TRUE(d.p_dual.is_infinite());
  EXPECT_EQ(d.r, Exponent::finite(1));
  EXPECT_TRUE(d.r_dual.is_infinite());

  d = dual_exponent(Exponent::finite(4));
  EXPECT_DOUBLE_EQ(d.p_dual.value(), 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(d.r.value(), 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(d.r_dual.value(), 4.0);

  d = dual_exponent(Exponent::infinity());
  EXPECT_EQ(d.p_dual, Exponent::finite(1));
  EXPECT_EQ(d.r, Exponent::finite(1));
}

TEST(DualExponent, ConjugacyAndOrdering) {
  for (double p : {1.0, 1.1, 1.5, 2.0, 2.5, 3.0, 7.0}) {
    const auto d = dual_exponent(Exponent::finite(p));
    EXPECT_NEAR(d.p.reciprocal() + d.p_dual.reciprocal(), 1.0, 1e-15);
    EXPECT_FALSE(Exponent::finite(2) < d.r);
    EXPECT_FALSE(d.r_dual < Exponent::finite(2));
  }
}

TEST(NormingFunctional, Examples) {
  auto f = norming_functional(make_vec({1, 0}), NormSpec::l2());
  EXPECT_NEAR((f.coeffs - make_vec({1, 0})).norm(), 0.0, 1e-15);

  const Vec diag = make_vec({1, 1}) / std::sqrt(2.0);
  f = norming_functional(diag, NormSpec::l2());
  EXPECT_NEAR((f.coeffs - diag).norm(), 0.0, 1e-15);

  // Sign vector attains the l1 norm: <(1,1),(1,1)> = 2 = ||(1,1)||_1.
  f = norming_functional(make_vec({1, 1}), NormSpec::l1());
  EXPECT_EQ(f.coeffs, make_vec({1, 1}));
  EXPECT_DOUBLE_EQ(f(make_vec({1, 1})), 2.0);
  EXPECT_DOUBLE_EQ(dual_norm(f.coeffs, NormSpec::l1()), 1.0);
}

TEST(NormingFunctional, DeterministicTieBreaks) {
  EXPECT_EQ(norming_functional(make_vec({0, -2, 0}), NormSpec::l1()).coeffs, make_vec({1, -1, 1}));
  EXPECT_EQ(norming_functional(make_vec({-3, 1, 3}), NormSpec::linf()).coeffs, make_vec({-1, 0, 0}));
  // (1,0) and (1,1) both attain the gauge at (1,0); the lexicographically smaller wins.
  EXPECT_EQ(norming_functional(make_vec({1, 0}), hexagon()).coeffs, make_vec({1, 0}));
  EXPECT_THROW(norming_functional(make_vec({0, 0}), NormSpec::l2()), InvalidInput);
}

TEST(NormingFunctional, SatisfiesDefiningIdentities) {
  Rng rng = make_rng(11);
  std::vector<NormSpec> specs = testing::test_norms();
  specs.push_back(hexagon());
  for (const auto& spec : specs) {
    for (int trial = 0; trial < 300; ++trial) {
      const int dim = spec.is_polyhedral() ? 2 : 1 + trial % 5;
      Vec y = testing::random_in_box(rng, dim);
      if (trial % 7 == 0) y[0] = 0.0;  // exercise multivalued J_1
      if (y.isZero()) continue;
      const auto p = norming_functional(y, spec);
      const double ny = norm_of(y, spec);
      EXPECT_NEAR(p(y / ny), 1.0, kNormingTol) << spec.to_string();
      EXPECT_NEAR(dual_norm(p.coeffs, spec), 1.0, kNormingTol) << spec.to_string();
    }
  }
}

TEST(NormAxioms, RandomPairs) {
  Rng rng = make_rng(7);
  std::vector<NormSpec> specs = testing::test_norms();
  specs.push_back(hexagon());
  for (const auto& spec : specs) {
    for (int trial = 0; trial < 1000; ++trial) {
      const int dim = spec.is_polyhedral() ? 2 : 1 + trial % 6;
      const Vec x = testing::random_in_box(rng, dim, 3.0);
      const Vec y = testing::random_in_box(rng, dim, 3.0);
      const double lambda = uniform(rng, -5, 5);
      const double nx = norm_of(x, spec);
      EXPECT_NEAR(norm_of(lambda * x, spec), std::abs(lambda) * nx, 1e-12 * std::max(1.0, std::abs(lambda) * nx));
      EXPECT_LE(norm_of(x + y, spec), nx + norm_of(y, spec) + 1e-12);
      EXPECT_GT(nx, 0.0);
    }
    EXPECT_EQ(norm_of(Vec::Zero(2), spec), 0.0);
  }
}

TEST(NormAxioms, MonotoneInExponent) {
  Rng rng = make_rng(8);
  const std::vector<Exponent> ps = {Exponent::finite(1), Exponent::finite(1.25), Exponent::finite(1.5),
                                    Exponent::finite(2),  Exponent::finite(3),    Exponent::finite(10),
                                    Exponent::infinity()};
  for (int trial = 0; trial < 500; ++trial) {
    const Vec x = testing::random_in_box(rng, 1 + trial % 6, 2.0);
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
      EXPECT_LE(lp_norm(x, ps[i + 1]), lp_norm(x, ps[i]) + 1e-12);
    }
  }
}

TEST(PolyhedralApprox, EuclideanPlaneFan) {
  const double eps = 0.05;
  const auto approx = polyhedral_approx(NormSpec::l2(), 2, eps);
  const auto& fs = approx.spec.functionals();
  EXPECT_EQ(fs.size() % 2, 0U);
  // Angular step of the fan is within the circumscribed-polygon bound.
  std::vector<double> angles;
  for (const auto& f : fs) angles.push_back(std::atan2(f[1], f[0]));
  std::sort(angles.begin(), angles.end());
  double max_step = 2 * M_PI - (angles.back() - angles.front());
  for (std::size_t i = 0; i + 1 < angles.size(); ++i) max_step = std::max(max_step, angles[i + 1] - angles[i]);
  EXPECT_LE(max_step, 2 * std::acos(1 / (1 + eps)) + 1e-12);
  // Sample the unit circle: gauge <= ||.|| and gauge >= ||.|| / (1 + eps).
  for (int i = 0; i < 10000; ++i) {
    const double t = 2 * M_PI * i / 10000;
    const Vec u = testing::make_vec({std::cos(t), std::sin(t)});
    const double g = norm_of(u, approx.spec);
    EXPECT_LE(g, 1.0 + 1e-12);
    EXPECT_GE(g, 1.0 / (1.0 + eps) - 1e-12);
  }
}

TEST(PolyhedralApprox, PolytopeNormsAreExact) {
  for (int dim = 2; dim <= 5; ++dim) {
    const auto l1 = polyhedral_approx(NormSpec::l1(), dim, 0.1);
    EXPECT_EQ(l1.functional_count, std::size_t{1} << dim);
    const auto linf = polyhedral_approx(NormSpec::linf(), dim, 0.1);
    EXPECT_EQ(linf.functional_count, static_cast<std::size_t>(2 * dim));
    Rng rng = make_rng(dim);
    for (int i = 0; i < 200; ++i) {
      const Vec x = testing::random_in_box(rng, dim);
      EXPECT_NEAR(norm_of(x, l1.spec), norm_of(x, NormSpec::l1()), 1e-14);
      EXPECT_NEAR(norm_of(x, linf.spec), norm_of(x, NormSpec::linf()), 1e-14);
    }
  }
}

TEST(PolyhedralApprox, ContainsBallAndStaysClose) {
  struct Case {
    NormSpec spec;
    int dim;
    double eps;
  };
  const std::vector<Case> cases = {{NormSpec::lp(1.5), 2, 0.01}, {NormSpec::lp(3.0), 2, 0.02},
                                   {NormSpec::l2(), 3, 0.05},    {NormSpec::lp(1.5), 3, 0.05}};
  for (const auto& c : cases) {
    const auto approx = polyhedral_approx(c.spec, c.dim, c.eps);
    Rng rng = make_rng(99, static_cast<std::uint64_t>(c.dim));
    for (int i = 0; i < 10000; ++i) {
      Vec u = gaussian_direction(rng, c.dim);
      u /= norm_of(u, c.spec);
      const double g = norm_of(u, approx.spec);
      EXPECT_LE(g, 1.0 + 1e-12);
      EXPECT_GE(g, 1.0 / (1.0 + c.eps) - 1e-12);
    }
  }
}

TEST(PolyhedralApprox, Errors) {
  EXPECT_THROW(polyhedral_approx(NormSpec::l2(), 1, 0.1), InvalidInput);
  EXPECT_THROW(polyhedral_approx(NormSpec::l2(), 2, 0.0), InvalidInput);
  EXPECT_THROW(polyhedral_approx(NormSpec::l2(), 3, 1e-6, 1000), BudgetExceeded);
}

TEST(DualNorm, PolyhedralMatchesClosedForm) {
  const auto cube = polyhedral_approx(NormSpec::linf(), 3, 0.1).spec;
  Rng rng = make_rng(5);
  for (int i = 0; i < 100; ++i) {
    const Vec q = testing::random_in_box(rng, 3);
    EXPECT_NEAR(dual_norm(q, cube), q.cwiseAbs().sum(), 1e-10);
    const Vec x = dual_attainer(q, cube);
    EXPECT_NEAR(q.dot(x), q.cwiseAbs().sum(), 1e-10);
    EXPECT_LE(norm_of(x, cube), 1.0 + 1e-10);
  }
}

TEST(DualAttainer, LpClosedForms) {
  Rng rng = make_rng(6);
  for (const auto& spec : testing::test_norms()) {
    for (int i = 0; i < 100; ++i) {
      const Vec q = testing::random_in_box(rng, 1 + i % 4);
      const Vec x = dual_attainer(q, spec);
      EXPECT_NEAR(norm_of(x, spec), 1.0, 1e-12);
      EXPECT_NEAR(q.dot(x), dual_norm(q, spec), 1e-12);
    }
  }
}

}  // namespace
}  // namespace hulldev
