#include "rateregion/explorer.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "rateregion/errors.hpp"

namespace rateregion {
namespace {

using Eigen::Vector3d;

GaussianChannelSpec table_spec(ModelVariant variant) {
  GaussianChannelSpec spec;
  spec.p1 = 10.0;
  spec.p2 = 10.0;
  spec.p3 = 10.0;
  spec.a12 = 0.55;
  spec.a13 = 0.55;
  spec.a21 = 0.55;
  spec.a23 = 0.55;
  spec.a31 = 0.55;
  spec.a32 = 0.55;
  spec.variant = variant;
  return spec;
}

bool same_points(const std::vector<Vector3d>& a, const std::vector<Vector3d>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

TEST(Explore, SingleDrawMatchesDirectPipeline) {
  const auto spec = table_spec(kCms2);
  const std::uint64_t seed = 5;
  const auto est = explore(spec, 1, seed);
  ASSERT_EQ(est.draws_total, 1u);

  // Replay draw 0 by hand through the same stages.
  CounterRng rng(seed, 0);
  const SplittingParams params = sample_params(spec, rng);
  const auto model = build_covariance(spec, params);
  const auto cat = catalog_for(spec.variant);
  const auto poly = instantiate(cat, model.sigma, theta_names());
  std::vector<Vector3d> pts;
  pts.emplace_back(Vector3d::Zero());
  if (poly) {
    const auto totals = project_sums(
        poly->sys, resolve_catalog(cat, theta_names()).groups);
    for (const auto& v : enumerate_vertices(totals)) {
      Vector3d p = Vector3d::Zero();
      for (int i = 0; i < 3; ++i) p[i] = std::max(0.0, v[i]);
      pts.push_back(p);
    }
  }
  EXPECT_TRUE(same_points(est.pareto, exact_maxima3(std::move(pts))));
}

TEST(Explore, MetricsMatchParetoExtrema) {
  const auto est = explore(table_spec(kPms2), 300, 11);
  ASSERT_FALSE(est.pareto.empty());
  double r1 = 0, r2 = 0, r3 = 0, sum = 0;
  for (const auto& p : est.pareto) {
    r1 = std::max(r1, p.x());
    r2 = std::max(r2, p.y());
    r3 = std::max(r3, p.z());
    sum = std::max(sum, p.sum());
    EXPECT_GE(p.minCoeff(), 0.0);
  }
  EXPECT_NEAR(est.max_r1, r1, 1e-12);
  EXPECT_NEAR(est.max_r2, r2, 1e-12);
  EXPECT_NEAR(est.max_r3, r3, 1e-12);
  EXPECT_NEAR(est.max_sum, sum, 1e-12);
}

TEST(Explore, MoreDrawsOnlyGrowTheRegion) {
  const auto spec = table_spec(kCms2);
  const auto small = explore(spec, 400, 3);
  const auto large = explore(spec, 800, 3);
  EXPECT_LE(small.max_r1, large.max_r1 + 1e-15);
  EXPECT_LE(small.max_r2, large.max_r2 + 1e-15);
  EXPECT_LE(small.max_r3, large.max_r3 + 1e-15);
  EXPECT_LE(small.max_sum, large.max_sum + 1e-15);
  // The first 400 draws are a prefix of the 800, so exact dominance holds.
  EXPECT_TRUE(pareto_dominated_by(small.pareto, large.pareto, 0.0));
}

TEST(Explore, DeterministicAcrossRunsAndThreads) {
  const auto spec = table_spec(kCms2);
  const auto a = explore(spec, 600, 13, {.threads = 1});
  const auto b = explore(spec, 600, 13, {.threads = 1});
  const auto c = explore(spec, 600, 13, {.threads = 4});
  EXPECT_TRUE(same_points(a.pareto, b.pareto));
  EXPECT_TRUE(same_points(a.pareto, c.pareto));
  EXPECT_EQ(a.max_sum, c.max_sum);
  EXPECT_EQ(a.draws_vacuous, c.draws_vacuous);
}

TEST(Explore, CoupledSharingLawsNest) {
  // With the betas forced to zero on the CMS side, each draw produces the
  // same polytope under both sharing laws, so the PMS region cannot poke out.
  const std::uint64_t draws = 2000, seed = 21;
  ExploreOptions cms_opts;
  cms_opts.param_hook = [](std::uint64_t, SplittingParams& p) {
    p.beta1 = 0.0;
    p.beta2 = 0.0;
  };
  const auto cms = explore(table_spec(kCms2), draws, seed, cms_opts);
  const auto pms = explore(table_spec(kPms2), draws, seed);
  EXPECT_TRUE(pareto_dominated_by(pms.pareto, cms.pareto, 1e-9));
}

TEST(Explore, AllVacuousFallsBackToOrigin) {
  auto spec = table_spec(kCms2);
  spec.a21 = 0.0;
  ExploreOptions opts;
  opts.param_hook = [](std::uint64_t, SplittingParams& p) { p.alpha1 = 30.0; };
  const auto est = explore(spec, 50, 9, opts);
  EXPECT_EQ(est.draws_vacuous, 50u);
  ASSERT_EQ(est.pareto.size(), 1u);
  EXPECT_EQ(est.pareto[0], Vector3d::Zero());
  EXPECT_EQ(est.max_sum, 0.0);
}

TEST(Explore, RejectsExternalCovarianceVariants) {
  EXPECT_THROW(explore(table_spec(kCms1), 10, 1), VariantUnsupported);
}

TEST(EstimateSupport, HandcraftedValues) {
  RegionEstimate est;
  est.pareto = {Vector3d(1.0, 2.0, 0.5)};
  EXPECT_NEAR(estimate_support(est, Vector3d(1, 1, 1)), 3.5, 1e-12);
  // Negative components clip to zero: the region is downward closed.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(estimate_support(est, Vector3d(-inv_sqrt2, inv_sqrt2, 0.0)),
              2.0 * inv_sqrt2, 1e-12);
  EXPECT_NEAR(estimate_support(est, Vector3d(-1, -1, -1)), 0.0, 1e-12);
}

TEST(GridDirections, TwentySixUnitVectors) {
  const auto dirs = grid_directions();
  ASSERT_EQ(dirs.size(), 26u);
  for (const auto& d : dirs) EXPECT_NEAR(d.norm(), 1.0, 1e-12);
  EXPECT_EQ(dirs.front(), Vector3d(-1, -1, -1).normalized());
  bool has_x = false;
  for (const auto& d : dirs) has_x = has_x || d == Vector3d(1, 0, 0);
  EXPECT_TRUE(has_x);
}

TEST(Compare, RegionAgainstItself) {
  const auto est = explore(table_spec(kPms2), 200, 2);
  const auto report = compare({&est, &est}, grid_directions());
  for (std::size_t d = 0; d < report.directions.size(); ++d)
    EXPECT_EQ(report.support[d][0], report.support[d][1]);
  EXPECT_TRUE(report.includes[0][1]);
  EXPECT_TRUE(report.includes[1][0]);
  EXPECT_THROW(compare({&est}, grid_directions()), Error);
}

TEST(ParetoDominatedBy, StaircaseAgreesWithBruteForce) {
  CounterRng rng(55, 0);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Vector3d> covered, covering;
    for (int i = 0; i < 30; ++i)
      covered.emplace_back(rng.uniform01(), rng.uniform01(), rng.uniform01());
    for (int i = 0; i < 35; ++i)
      covering.emplace_back(rng.uniform01(), rng.uniform01(), rng.uniform01());
    const double tol = 0.05;
    bool brute = true;
    for (const auto& p : covered) {
      bool hit = false;
      for (const auto& q : covering)
        hit = hit || (q.x() >= p.x() - tol && q.y() >= p.y() - tol &&
                      q.z() >= p.z() - tol);
      brute = brute && hit;
    }
    EXPECT_EQ(pareto_dominated_by(covered, covering, tol), brute)
        << "trial " << trial;
  }
}

TEST(Slice2d, BandFilterAndHull) {
  RegionEstimate est;
  est.pareto = {Vector3d(0.0, 1.0, 0.2), Vector3d(0.0, 0.2, 1.0),
                Vector3d(0.5, 0.8, 0.8)};
  const auto slice = slice2d(est, 0, 0.0);
  ASSERT_EQ(slice.size(), 2u);
  EXPECT_EQ(slice[0], Eigen::Vector2d(0.2, 1.0));
  EXPECT_EQ(slice[1], Eigen::Vector2d(1.0, 0.2));
  EXPECT_THROW(slice2d(est, 2, 9.0), EmptySlice);
  EXPECT_THROW(slice2d(est, 3, 0.0), Error);
}

}  // namespace
}  // namespace rateregion
