#include "rateregion/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rateregion/covariance.hpp"
#include "rateregion/explorer.hpp"

namespace rateregion {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

GaussianChannelSpec with_variant(GaussianChannelSpec spec, ModelVariant v) {
  spec.variant = v;
  return spec;
}

}  // namespace

HalfspaceSystem random_bounded_system(int dim, CounterRng& rng) {
  HalfspaceSystem sys;
  sys.dim = dim;
  for (int i = 0; i < dim; ++i) {
    Halfspace cap;
    cap.a = Eigen::VectorXd::Zero(dim);
    cap.a[i] = 1.0;
    cap.b = rng.uniform(0.5, 2.0);
    sys.rows.push_back(std::move(cap));
  }
  for (int i = 0; i < dim; ++i) {
    Halfspace nonneg;
    nonneg.a = Eigen::VectorXd::Zero(dim);
    nonneg.a[i] = -1.0;
    nonneg.b = 0.0;
    sys.rows.push_back(std::move(nonneg));
  }
  const int slanted = 4 + static_cast<int>(rng.uniform01() * 7.0);  // 4..10
  for (int r = 0; r < slanted; ++r) {
    Halfspace row;
    row.a = Eigen::VectorXd(dim);
    for (int i = 0; i < dim; ++i) row.a[i] = rng.uniform(-0.25, 1.0);
    row.b = rng.uniform(0.3, 2.5);
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

SuiteResult verify_entry_formulas(const GaussianChannelSpec& base, int draws,
                                  std::uint64_t seed) {
  SuiteResult result{"entry-formulas", true, ""};
  double max_rel = 0.0;
  std::int64_t mismatches = 0;
  for (ModelVariant variant : {kCms2, kPms2}) {
    const GaussianChannelSpec spec = with_variant(base, variant);
    for (int d = 0; d < draws; ++d) {
      CounterRng rng(seed, static_cast<std::uint64_t>(d));
      const SplittingParams params = sample_params(spec, rng);
      const CovarianceModel model = build_covariance(spec, params);
      const auto bad = check_entry_formulas(model);
      mismatches += static_cast<std::int64_t>(bad.size());
      for (const auto& m : bad) max_rel = std::max(max_rel, m.rel_err);
    }
  }
  result.pass = mismatches == 0;
  result.detail = std::to_string(mismatches) + " mismatching entries over " +
                  std::to_string(2 * draws) + " draws";
  if (mismatches > 0) result.detail += ", worst rel err " + fmt(max_rel);
  return result;
}

SuiteResult verify_sampled_covariance(const GaussianChannelSpec& base,
                                      int draws, std::int64_t samples,
                                      std::uint64_t seed) {
  SuiteResult result{"sampled-covariance", true, ""};
  std::int64_t total = 0, outside = 0;
  for (int d = 0; d < draws; ++d) {
    const ModelVariant variant = d % 2 == 0 ? kCms2 : kPms2;
    const GaussianChannelSpec spec = with_variant(base, variant);
    CounterRng rng(seed, static_cast<std::uint64_t>(d));
    const SplittingParams params = sample_params(spec, rng);
    const CovarianceModel model = build_covariance(spec, params);
    const Matrix8d empirical = sample_theta(model, samples, rng);
    for (int i = 0; i < kNumTheta; ++i) {
      for (int j = 0; j < kNumTheta; ++j) {
        const double se =
            std::sqrt((model.sigma(i, i) * model.sigma(j, j) +
                       model.sigma(i, j) * model.sigma(i, j)) /
                      static_cast<double>(samples));
        ++total;
        if (std::abs(empirical(i, j) - model.sigma(i, j)) > 3.0 * se)
          ++outside;
      }
    }
  }
  const double within = 1.0 - static_cast<double>(outside) /
                                  static_cast<double>(total);
  result.pass = within >= 0.99;
  result.detail = std::to_string(outside) + "/" + std::to_string(total) +
                  " entries beyond 3 standard errors";
  return result;
}

SuiteResult verify_projection_oracle(int systems, std::uint64_t seed) {
  SuiteResult result{"projection-oracle", true, ""};
  const std::vector<std::vector<int>> groups = {{0}, {1, 2}, {3, 4}};
  const auto directions = grid_directions();
  double worst = 0.0;
  for (int s = 0; s < systems; ++s) {
    CounterRng rng(seed, static_cast<std::uint64_t>(s));
    const HalfspaceSystem sys = random_bounded_system(5, rng);
    const auto vertices5 = enumerate_vertices(sys);
    if (vertices5.empty()) {
      result.pass = false;
      result.detail = "generated system unexpectedly empty";
      return result;
    }
    std::vector<Eigen::Vector3d> mapped;
    mapped.reserve(vertices5.size());
    for (const auto& v : vertices5)
      mapped.emplace_back(v[0], v[1] + v[2], v[3] + v[4]);

    const HalfspaceSystem projected = project_sums(sys, groups);
    const auto vertices3 = enumerate_vertices(projected);
    if (vertices3.empty()) {
      result.pass = false;
      result.detail = "projection unexpectedly empty";
      return result;
    }
    for (const auto& dir : directions) {
      double oracle = -1e300, fm = -1e300;
      for (const auto& m : mapped) oracle = std::max(oracle, dir.dot(m));
      for (const auto& v : vertices3)
        fm = std::max(fm, dir.dot(Eigen::Vector3d(v[0], v[1], v[2])));
      worst = std::max(worst, std::abs(oracle - fm));
    }
  }
  result.pass = worst <= 1e-9;
  result.detail = "max support deviation " + fmt(worst) + " over " +
                  std::to_string(systems) + " systems";
  return result;
}

SuiteResult verify_coupled_inclusion(const GaussianChannelSpec& base,
                                     std::uint64_t draws, std::uint64_t seed,
                                     int threads) {
  SuiteResult result{"coupled-inclusion", true, ""};
  ExploreOptions cms_opts;
  cms_opts.threads = threads;
  cms_opts.param_hook = [](std::uint64_t, SplittingParams& p) {
    p.beta1 = 0.0;
    p.beta2 = 0.0;
  };
  ExploreOptions pms_opts;
  pms_opts.threads = threads;

  const RegionEstimate cms =
      explore(with_variant(base, kCms2), draws, seed, cms_opts);
  const RegionEstimate pms =
      explore(with_variant(base, kPms2), draws, seed, pms_opts);

  result.pass = pareto_dominated_by(pms.pareto, cms.pareto, 1e-9);
  result.detail = "pms pareto " + std::to_string(pms.pareto.size()) +
                  " points vs cms " + std::to_string(cms.pareto.size()) +
                  (result.pass ? ", dominated within 1e-9"
                               : ", NOT dominated within 1e-9");
  return result;
}

std::vector<SuiteResult> run_verification(const GaussianChannelSpec& base,
                                          std::uint64_t seed, int threads) {
  std::vector<SuiteResult> results;
  results.push_back(verify_entry_formulas(base, 1000, seed));
  results.push_back(verify_sampled_covariance(base, 20, 1000000, seed));
  results.push_back(verify_projection_oracle(200, seed));
  results.push_back(verify_coupled_inclusion(base, 10000, seed, threads));
  return results;
}

}  // namespace rateregion
