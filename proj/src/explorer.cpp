#include "rateregion/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

namespace rateregion {

namespace {

using Eigen::Vector2d;
using Eigen::Vector3d;

struct BlockResult {
  std::vector<Vector3d> maxima;
  std::uint64_t vacuous = 0;
};

BlockResult run_block(const GaussianChannelSpec& spec,
                      const ResolvedCatalog& rc, std::uint64_t seed,
                      std::uint64_t begin, std::uint64_t end,
                      const ExploreOptions& options) {
  BlockResult result;
  std::vector<Vector3d> pts;
  const int totals = static_cast<int>(rc.groups.size());
  for (std::uint64_t draw = begin; draw < end; ++draw) {
    CounterRng rng(seed, draw);
    SplittingParams params = sample_params(spec, rng);
    if (options.param_hook) options.param_hook(draw, params);
    const CovarianceModel model = build_covariance(spec, params);
    const Eigen::MatrixXd sigma = model.sigma;
    MIEvaluator ev(sigma, default_ridge(sigma));
    auto poly = instantiate_resolved(rc, ev);
    if (!poly) {
      ++result.vacuous;
      continue;
    }
    const HalfspaceSystem projected = project_sums(poly->sys, rc.groups);
    const auto vertices = enumerate_vertices(projected);
    if (vertices.empty()) {
      ++result.vacuous;
      continue;
    }
    for (const auto& v : vertices) {
      Vector3d p = Vector3d::Zero();
      for (int i = 0; i < totals && i < 3; ++i) p[i] = std::max(0.0, v[i]);
      pts.push_back(p);
    }
  }
  result.maxima = exact_maxima3(std::move(pts));
  return result;
}

}  // namespace

RegionEstimate explore(const GaussianChannelSpec& spec, std::uint64_t draws,
                       std::uint64_t seed, const ExploreOptions& options) {
  validate_spec(spec);
  if (spec.variant.decoding != Decoding::Variant2)
    throw VariantUnsupported(
        "exploration needs the analytic covariance, which this decoding "
        "variant does not have; evaluate an external covariance instead");

  const BoundCatalog catalog = options.catalog_override
                                   ? *options.catalog_override
                                   : catalog_for(spec.variant);
  const ResolvedCatalog rc = resolve_catalog(catalog, theta_names());
  if (rc.groups.empty() || rc.groups.size() > 3)
    throw Error(ErrorKind::Config, "catalog must recombine into 1 to 3 totals");

  const std::uint64_t block_size = std::max<std::uint64_t>(1, options.block_size);
  const std::uint64_t blocks = (draws + block_size - 1) / block_size;
  std::vector<BlockResult> results(blocks);

  const int threads = std::clamp(
      options.threads, 1,
      static_cast<int>(std::min<std::uint64_t>(blocks > 0 ? blocks : 1, 64)));

  if (blocks > 0) {
    std::atomic<std::uint64_t> next_block{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::atomic<bool> abort{false};

    auto worker = [&] {
      while (!abort.load(std::memory_order_relaxed)) {
        const std::uint64_t b = next_block.fetch_add(1);
        if (b >= blocks) return;
        try {
          const std::uint64_t begin = b * block_size;
          const std::uint64_t end = std::min(draws, begin + block_size);
          results[b] = run_block(spec, rc, seed, begin, end, options);
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          abort.store(true, std::memory_order_relaxed);
          return;
        }
      }
    };

    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(threads));
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);
  }

  RegionEstimate est;
  est.variant = spec.variant;
  est.draws_total = draws;
  est.seed = seed;

  std::vector<Vector3d> all;
  all.emplace_back(Vector3d::Zero());
  for (const auto& block : results) {
    est.draws_vacuous += block.vacuous;
    all.insert(all.end(), block.maxima.begin(), block.maxima.end());
  }
  est.pareto = exact_maxima3(std::move(all));

  for (const auto& p : est.pareto) {
    est.max_r1 = std::max(est.max_r1, p.x());
    est.max_r2 = std::max(est.max_r2, p.y());
    est.max_r3 = std::max(est.max_r3, p.z());
    est.max_sum = std::max(est.max_sum, p.sum());
  }
  return est;
}

double estimate_support(const RegionEstimate& estimate,
                        const Vector3d& direction) {
  double best = 0.0;  // the origin always belongs to the region
  for (const auto& p : estimate.pareto) {
    double score = 0.0;
    for (int i = 0; i < 3; ++i) score += std::max(direction[i], 0.0) * p[i];
    best = std::max(best, score);
  }
  return best;
}

std::vector<Vector3d> grid_directions() {
  std::vector<Vector3d> dirs;
  dirs.reserve(26);
  for (int x = -1; x <= 1; ++x)
    for (int y = -1; y <= 1; ++y)
      for (int z = -1; z <= 1; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        dirs.emplace_back(Vector3d(x, y, z).normalized());
      }
  return dirs;
}

InclusionReport compare(const std::vector<const RegionEstimate*>& regions,
                        const std::vector<Vector3d>& directions, double tol) {
  if (regions.size() < 2)
    throw Error(ErrorKind::Config, "comparison needs at least two regions");
  for (const auto* r : regions)
    if (!r) throw Error(ErrorKind::Config, "null region in comparison");

  InclusionReport report;
  report.directions = directions;
  report.tol = tol;
  report.support.resize(directions.size());
  for (std::size_t d = 0; d < directions.size(); ++d) {
    report.support[d].reserve(regions.size());
    for (const auto* r : regions)
      report.support[d].push_back(estimate_support(*r, directions[d]));
  }
  report.includes.assign(regions.size(),
                         std::vector<bool>(regions.size(), true));
  for (std::size_t i = 0; i < regions.size(); ++i)
    for (std::size_t j = 0; j < regions.size(); ++j)
      for (std::size_t d = 0; d < directions.size() && report.includes[i][j];
           ++d)
        if (report.support[d][i] < report.support[d][j] - tol)
          report.includes[i][j] = false;
  return report;
}

bool pareto_dominated_by(const std::vector<Vector3d>& covered,
                         const std::vector<Vector3d>& covering, double tol) {
  if (covered.empty()) return true;
  if (covering.empty()) return false;

  auto by_x_desc = [](const Vector3d& a, const Vector3d& b) {
    return a.x() > b.x();
  };
  std::vector<Vector3d> cov = covering;
  std::vector<Vector3d> qry = covered;
  std::sort(cov.begin(), cov.end(), by_x_desc);
  std::sort(qry.begin(), qry.end(), by_x_desc);

  // Staircase of inserted covering points: y descending, best z per y,
  // z strictly increasing as y falls.
  std::map<double, double, std::greater<double>> stair;
  auto insert_point = [&stair](const Vector3d& q) {
    auto after = stair.upper_bound(q.y());
    if (after != stair.begin() && std::prev(after)->second >= q.z()) return;
    auto pos = stair.insert_or_assign(q.y(), q.z()).first;
    auto next = std::next(pos);
    while (next != stair.end() && next->second <= q.z())
      next = stair.erase(next);
  };

  std::size_t ptr = 0;
  for (const auto& p : qry) {
    while (ptr < cov.size() && cov[ptr].x() >= p.x() - tol)
      insert_point(cov[ptr++]);
    auto after = stair.upper_bound(p.y() - tol);
    if (after == stair.begin()) return false;
    if (std::prev(after)->second < p.z() - tol) return false;
  }
  return true;
}

std::vector<Vector2d> slice2d(const RegionEstimate& estimate, int fixed_axis,
                              double fixed_value, double tol) {
  if (fixed_axis < 0 || fixed_axis > 2)
    throw Error(ErrorKind::Config, "slice axis must be 0, 1 or 2");
  std::vector<Vector2d> pts;
  for (const auto& p : estimate.pareto) {
    if (std::abs(p[fixed_axis] - fixed_value) > tol) continue;
    Vector2d q;
    int at = 0;
    for (int i = 0; i < 3; ++i)
      if (i != fixed_axis) q[at++] = p[i];
    pts.push_back(q);
  }
  if (pts.empty())
    throw EmptySlice("no Pareto point within the slice tolerance band");
  return hull2d(std::move(pts));
}

}  // namespace rateregion
