#include "rateregion/covariance.hpp"

#include <cmath>
#include <optional>

#include "rateregion/errors.hpp"

namespace rateregion {

const std::vector<std::string>& theta_names() {
  static const std::vector<std::string> names = {"Y1", "Y2", "Y3", "W",
                                                 "U1", "U2", "V1", "V3"};
  return names;
}

namespace {

void validate_params(const GaussianChannelSpec& spec,
                     const SplittingParams& p) {
  if (!std::isfinite(p.lambda) || !(p.lambda > 0.0) || p.lambda > 1.0)
    throw Error(ErrorKind::Config, "lambda must lie in (0, 1]");
  if (!std::isfinite(p.tau) || !(p.tau > 0.0) || !(p.tau < 1.0))
    throw Error(ErrorKind::Config, "tau must lie in (0, 1)");
  if (!std::isfinite(p.kappa) || !(p.kappa > 0.0) || !(p.kappa < 1.0))
    throw Error(ErrorKind::Config, "kappa must lie in (0, 1)");
  const double coeffs[] = {p.alpha1, p.alpha2, p.alpha3,
                           p.alpha4, p.beta1,  p.beta2};
  for (double c : coeffs)
    if (!std::isfinite(c))
      throw Error(ErrorKind::Config, "precoding coefficient must be finite");
  if (spec.variant.decoding == Decoding::Variant1)
    throw VariantUnsupported(
        "no analytic covariance for this decoding variant; supply one "
        "externally");
}

}  // namespace

CovarianceModel build_covariance(const GaussianChannelSpec& spec,
                                 const SplittingParams& params) {
  validate_params(spec, params);

  CovarianceModel model;
  for (int i = 0; i < kNumTheta; ++i)
    model.variable_names[static_cast<std::size_t>(i)] =
        theta_names()[static_cast<std::size_t>(i)];
  model.spec = spec;
  model.params = params;

  const double lp1 = params.lambda * spec.p1;
  model.source_variances = {lp1,
                            params.tau * spec.p2,
                            (1.0 - params.tau) * spec.p2,
                            params.kappa * spec.p3,
                            (1.0 - params.kappa) * spec.p3,
                            spec.q1,
                            spec.q2,
                            spec.q3};

  // The betas act only under CMS; the PMS construction omits the X2 component
  // of the auxiliaries regardless of what the params carry.
  const bool cms = spec.variant.sharing == Sharing::CMS;
  const double b1 = cms ? params.beta1 : 0.0;
  const double b2 = cms ? params.beta2 : 0.0;

  // Source order: W~, U~1, U~2, V~1, V~3, Z1, Z2, Z3, spare zero column.
  // X1 = W~, X2 = U~1 + U~2, X3 = V~1 + V~3.
  Mixing8x9 m = Mixing8x9::Zero();
  const auto& s = spec;
  m.row(kY1) << 1.0, s.a12, s.a12, s.a13, s.a13, 1.0, 0.0, 0.0, 0.0;
  m.row(kY2) << s.a21, 1.0, 1.0, s.a23, s.a23, 0.0, 1.0, 0.0, 0.0;
  m.row(kY3) << s.a31, s.a32, s.a32, 1.0, 1.0, 0.0, 0.0, 1.0, 0.0;
  m.row(kW) << 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0;
  m.row(kU1) << params.alpha1, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0;
  m.row(kU2) << params.alpha2, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0;
  m.row(kV1) << params.alpha3, b1, b1, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0;
  m.row(kV3) << params.alpha4, b2, b2, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0;
  model.mixing = m;

  Eigen::Matrix<double, 9, 1> d = Eigen::Matrix<double, 9, 1>::Zero();
  for (int j = 0; j < kNumTheta; ++j)
    d[j] = model.source_variances[static_cast<std::size_t>(j)];

  Matrix8d sigma = m * d.asDiagonal() * m.transpose();
  model.sigma = 0.5 * (sigma + sigma.transpose());
  return model;
}

namespace {

// Closed-form second moments of the construction, upper triangle, 0-based.
// Entries left unset have no closed form in the variant's reference table.
using EntryTable =
    std::array<std::array<std::optional<double>, kNumTheta>, kNumTheta>;

EntryTable reference_entries(const GaussianChannelSpec& s,
                             const SplittingParams& p) {
  const bool cms = s.variant.sharing == Sharing::CMS;
  const double L = p.lambda * s.p1;
  const double t = p.tau * s.p2;
  const double tb = (1.0 - p.tau) * s.p2;
  const double k = p.kappa * s.p3;
  const double kb = (1.0 - p.kappa) * s.p3;
  const double a1 = p.alpha1, a2 = p.alpha2, a3 = p.alpha3, a4 = p.alpha4;
  const double b1 = cms ? p.beta1 : 0.0;
  const double b2 = cms ? p.beta2 : 0.0;

  EntryTable e;
  auto set = [&e](int i, int j, double v) {
    e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
  };

  set(kY1, kY1, L + s.a12 * s.a12 * s.p2 + s.a13 * s.a13 * s.p3 + s.q1);
  set(kY1, kW, L);
  set(kY1, kU1, a1 * L + s.a12 * t);
  set(kY1, kU2, a2 * L + s.a12 * tb);
  set(kY1, kV1, a3 * L + s.a12 * b1 * s.p2 + s.a13 * k);
  set(kY1, kV3, a4 * L + s.a12 * b2 * s.p2 + s.a13 * kb);

  set(kY2, kY2, s.a21 * s.a21 * L + s.p2 + s.a23 * s.a23 * s.p3 + s.q2);
  if (!cms) set(kY2, kW, s.a21 * L);
  set(kY2, kU1, s.a21 * a1 * L + t);
  set(kY2, kU2, s.a21 * a2 * L + tb);
  set(kY2, kV1, s.a21 * a3 * L + b1 * s.p2 + s.a23 * k);

  set(kY3, kY3, s.a31 * s.a31 * L + s.a32 * s.a32 * s.p2 + s.p3 + s.q3);
  set(kY3, kW, s.a31 * L);
  set(kY3, kU1, s.a31 * a1 * L + s.a32 * t);
  set(kY3, kU2, s.a31 * a2 * L + s.a32 * tb);
  set(kY3, kV1, s.a31 * a3 * L + s.a32 * b1 * s.p2 + k);
  set(kY3, kV3, s.a31 * a4 * L + s.a32 * b2 * s.p2 + kb);

  set(kW, kW, L);
  set(kW, kU1, a1 * L);
  set(kW, kU2, a2 * L);
  set(kW, kV1, a3 * L);
  set(kW, kV3, a4 * L);

  set(kU1, kU1, a1 * a1 * L + t);
  set(kU1, kU2, a1 * a2 * L);
  set(kU1, kV1, a1 * a3 * L + b1 * t);
  set(kU1, kV3, a1 * a4 * L + b2 * t);

  set(kU2, kU2, a2 * a2 * L + tb);
  set(kU2, kV1, a2 * a3 * L + b1 * tb);
  set(kU2, kV3, a2 * a4 * L + b2 * tb);

  set(kV1, kV1, a3 * a3 * L + b1 * b1 * s.p2 + k);
  set(kV1, kV3, a3 * a4 * L + b1 * b2 * s.p2);

  set(kV3, kV3, a4 * a4 * L + b2 * b2 * s.p2 + kb);

  return e;
}

}  // namespace

std::vector<EntryMismatch> check_entry_formulas(const CovarianceModel& model) {
  const EntryTable table = reference_entries(model.spec, model.params);
  std::vector<EntryMismatch> mismatches;
  for (int i = 0; i < kNumTheta; ++i) {
    for (int j = i; j < kNumTheta; ++j) {
      const auto& expected =
          table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (!expected) continue;
      auto check = [&](int r, int c) {
        const double actual = model.sigma(r, c);
        const double denom =
            std::max({1.0, std::abs(*expected), std::abs(actual)});
        const double rel = std::abs(*expected - actual) / denom;
        if (!(rel <= 1e-10))
          mismatches.push_back({r + 1, c + 1, *expected, actual, rel});
      };
      check(i, j);
      if (i != j) check(j, i);
    }
  }
  return mismatches;
}

Matrix8d sample_theta(const CovarianceModel& model, std::int64_t n,
                      CounterRng& rng) {
  if (n < 2) throw Error(ErrorKind::Config, "sample_theta requires n >= 2");

  const Eigen::Matrix<double, 8, 8> mix =
      model.mixing.template leftCols<8>();
  Eigen::Matrix<double, 8, 1> scale;
  for (int j = 0; j < kNumTheta; ++j)
    scale[j] = std::sqrt(model.source_variances[static_cast<std::size_t>(j)]);

  Matrix8d acc = Matrix8d::Zero();
  Eigen::Matrix<double, 8, 1> g, th;
  for (std::int64_t i = 0; i < n; ++i) {
    for (int j = 0; j < kNumTheta; ++j) g[j] = scale[j] * rng.normal();
    th.noalias() = mix * g;
    acc.template selfadjointView<Eigen::Lower>().rankUpdate(th);
  }
  Matrix8d out = acc.template selfadjointView<Eigen::Lower>();
  return out / static_cast<double>(n);
}

}  // namespace rateregion
