#include "rateregion/covariance.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "rateregion/errors.hpp"

namespace rateregion {
namespace {

GaussianChannelSpec asymmetric_spec(ModelVariant variant) {
  GaussianChannelSpec spec;
  spec.p1 = 10.0;
  spec.p2 = 4.0;
  spec.p3 = 7.0;
  spec.q1 = 1.0;
  spec.q2 = 2.0;
  spec.q3 = 0.5;
  spec.a12 = 0.3;
  spec.a13 = 0.6;
  spec.a21 = 0.4;
  spec.a23 = 0.2;
  spec.a31 = 0.7;
  spec.a32 = 0.1;
  spec.variant = variant;
  return spec;
}

SplittingParams handmade_params() {
  SplittingParams p;
  p.lambda = 0.5;
  p.tau = 0.25;
  p.kappa = 0.75;
  p.alpha1 = 2.0;
  p.alpha2 = -1.0;
  p.alpha3 = 0.5;
  p.alpha4 = 1.5;
  p.beta1 = -0.25;
  p.beta2 = 0.75;
  return p;
}

TEST(BuildCovariance, DirectEntries) {
  const auto spec = asymmetric_spec(kCms2);
  const auto p = handmade_params();
  const CovarianceModel model = build_covariance(spec, p);

  // W is the primary codeword scaled to power lambda * p1.
  EXPECT_NEAR(model.sigma(kW, kW), 0.5 * 10.0, 1e-12);
  // Y1 = W~ + a12 X2 + a13 X3 + Z1 against W = W~:
  EXPECT_NEAR(model.sigma(kY1, kW), 5.0, 1e-12);
  // U1 = alpha1 W~ + U~1, so cov(Y1, U1) = alpha1*lambda*p1 + a12*tau*p2.
  EXPECT_NEAR(model.sigma(kY1, kU1), 2.0 * 5.0 + 0.3 * 1.0, 1e-12);
  // var(U1) = alpha1^2 * lambda * p1 + tau * p2.
  EXPECT_NEAR(model.sigma(kU1, kU1), 4.0 * 5.0 + 1.0, 1e-12);
}

TEST(BuildCovariance, TransmitPowersAddUp) {
  const auto model =
      build_covariance(asymmetric_spec(kCms2), handmade_params());
  EXPECT_NEAR(model.source_variances[1] + model.source_variances[2], 4.0,
              1e-13);
  EXPECT_NEAR(model.source_variances[3] + model.source_variances[4], 7.0,
              1e-13);
}

TEST(BuildCovariance, SymmetricAndPositiveSemidefinite) {
  for (const ModelVariant v : {kCms2, kPms2}) {
    const auto model = build_covariance(asymmetric_spec(v), handmade_params());
    EXPECT_LE((model.sigma - model.sigma.transpose()).cwiseAbs().maxCoeff(),
              1e-12);
    Eigen::SelfAdjointEigenSolver<Matrix8d> eig(model.sigma);
    ASSERT_EQ(eig.info(), Eigen::Success);
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-9 * model.sigma.trace());
  }
}

TEST(BuildCovariance, PmsIgnoresBetas) {
  auto p = handmade_params();
  const auto pms = build_covariance(asymmetric_spec(kPms2), p);
  p.beta1 = 0.0;
  p.beta2 = 0.0;
  const auto cms_beta0 = build_covariance(asymmetric_spec(kCms2), p);
  EXPECT_LE((pms.sigma - cms_beta0.sigma).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(BuildCovariance, RejectsBadParams) {
  const auto spec = asymmetric_spec(kCms2);
  auto p = handmade_params();
  p.lambda = 0.0;
  EXPECT_THROW(build_covariance(spec, p), Error);
  p = handmade_params();
  p.tau = 1.0;
  EXPECT_THROW(build_covariance(spec, p), Error);
  p = handmade_params();
  p.alpha2 = std::numeric_limits<double>::infinity();
  EXPECT_THROW(build_covariance(spec, p), Error);
}

TEST(BuildCovariance, RejectsVariant1) {
  EXPECT_THROW(build_covariance(asymmetric_spec(kCms1), handmade_params()),
               VariantUnsupported);
  EXPECT_THROW(build_covariance(asymmetric_spec(kPms1), handmade_params()),
               VariantUnsupported);
}

TEST(EntryFormulas, CleanOnRandomDraws) {
  for (const ModelVariant v : {kCms2, kPms2}) {
    GaussianChannelSpec spec = asymmetric_spec(v);
    for (std::uint64_t d = 0; d < 200; ++d) {
      CounterRng rng(31, d);
      const SplittingParams p = sample_params(spec, rng);
      const auto mismatches =
          check_entry_formulas(build_covariance(spec, p));
      ASSERT_TRUE(mismatches.empty())
          << model_name(v) << " draw " << d << ": first mismatch at ("
          << mismatches.front().row << "," << mismatches.front().col << ")";
    }
  }
}

TEST(EntryFormulas, DetectsInjectedPerturbation) {
  auto model = build_covariance(asymmetric_spec(kCms2), handmade_params());
  model.sigma(kU1, kU1) += 1e-3;
  const auto mismatches = check_entry_formulas(model);
  ASSERT_EQ(mismatches.size(), 1u);
  EXPECT_EQ(mismatches.front().row, 5);
  EXPECT_EQ(mismatches.front().col, 5);
  EXPECT_GT(mismatches.front().rel_err, 1e-10);
}

TEST(SampleTheta, DeterministicInSeed) {
  const auto model =
      build_covariance(asymmetric_spec(kPms2), handmade_params());
  CounterRng a(7, 0), b(7, 0);
  const Matrix8d ta = sample_theta(model, 1000, a);
  const Matrix8d tb = sample_theta(model, 1000, b);
  EXPECT_EQ((ta - tb).cwiseAbs().maxCoeff(), 0.0);
}

TEST(SampleTheta, MatchesSigmaWithinSamplingError) {
  const auto model =
      build_covariance(asymmetric_spec(kCms2), handmade_params());
  CounterRng rng(12345, 0);
  const std::int64_t n = 200000;
  const Matrix8d emp = sample_theta(model, n, rng);
  for (int i = 0; i < kNumTheta; ++i) {
    for (int j = 0; j < kNumTheta; ++j) {
      const double se =
          std::sqrt((model.sigma(i, i) * model.sigma(j, j) +
                     model.sigma(i, j) * model.sigma(i, j)) /
                    static_cast<double>(n));
      EXPECT_NEAR(emp(i, j), model.sigma(i, j), 5.0 * se)
          << "entry (" << i << "," << j << ")";
    }
  }
}

TEST(SampleTheta, RejectsTinySampleCount) {
  const auto model =
      build_covariance(asymmetric_spec(kCms2), handmade_params());
  CounterRng rng(1, 0);
  EXPECT_THROW(sample_theta(model, 1, rng), Error);
}

}  // namespace
}  // namespace rateregion
