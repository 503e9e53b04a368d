#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rateregion/channel.hpp"
#include "rateregion/rng.hpp"

namespace rateregion {

// Fixed ordering of the jointly Gaussian components
// (Y1, Y2, Y3, W, U1, U2, V1, V3).
inline constexpr int kNumTheta = 8;
enum ThetaIndex : int { kY1 = 0, kY2, kY3, kW, kU1, kU2, kV1, kV3 };

const std::vector<std::string>& theta_names();

using Matrix8d = Eigen::Matrix<double, 8, 8>;
using Mixing8x9 = Eigen::Matrix<double, 8, 9>;

// Joint second-moment description of (Y1,Y2,Y3,W,U1,U2,V1,V3) as linear
// mixtures of the independent zero-mean sources
// (W~, U~1, U~2, V~1, V~3, Z1, Z2, Z3) plus one spare zero column kept for
// layout stability: sigma = mixing * diag(source_variances, 0) * mixing^T.
struct CovarianceModel {
  std::array<std::string, kNumTheta> variable_names;
  Mixing8x9 mixing;
  std::array<double, kNumTheta> source_variances;
  Matrix8d sigma;
  // Inputs retained so cross-validation can recompute entries independently.
  GaussianChannelSpec spec;
  SplittingParams params;
};

// Builds the joint covariance for a Variant2 model. The transmitted signals
// are X1 = W~, X2 = U~1 + U~2, X3 = V~1 + V~3 with source variances
// (lambda*p1, tau*p2, (1-tau)*p2, kappa*p3, (1-kappa)*p3); the auxiliaries
// precode against X1 (and against X2 too under CMS, where the betas act).
// Throws VariantUnsupported for Variant1, whose covariance is supplied
// externally, and Error(Config) for out-of-range params.
CovarianceModel build_covariance(const GaussianChannelSpec& spec,
                                 const SplittingParams& params);

struct EntryMismatch {
  int row = 0, col = 0;  // 1-based positions in the 8-variable ordering
  double expected = 0.0;
  double actual = 0.0;
  double rel_err = 0.0;
};

// Cross-checks sigma against closed-form expressions derived independently
// from the construction equations, entry by entry. Entries that have no
// closed form in the sharing variant's table (cross-receiver covariances and
// a handful of variant-specific holes) are skipped. An entry mismatches when
// |expected - actual| / max(1, |expected|, |actual|) exceeds 1e-10.
std::vector<EntryMismatch> check_entry_formulas(const CovarianceModel& model);

// Empirical second-moment matrix of n source draws pushed through the mixing
// matrix (components are zero-mean, so no centering). Monte-Carlo oracle for
// build_covariance. Requires n >= 2; bit-deterministic in (rng state, n).
Matrix8d sample_theta(const CovarianceModel& model, std::int64_t n,
                      CounterRng& rng);

}  // namespace rateregion
