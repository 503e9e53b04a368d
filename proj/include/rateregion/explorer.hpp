#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "rateregion/catalog.hpp"
#include "rateregion/covariance.hpp"

namespace rateregion {

// Monte-Carlo union of projected rate polytopes over random coding
// parameters. The region it stands for is the downward closure of the Pareto
// set (total rates below an achievable point are achievable).
struct RegionEstimate {
  ModelVariant variant{};
  std::uint64_t draws_total = 0;
  // Draws contributing nothing: a single-rate bound came out negative, or
  // the instantiated system had no basic feasible point (negative combined
  // bound). Such draws contribute the origin only.
  std::uint64_t draws_vacuous = 0;
  std::vector<Eigen::Vector3d> pareto;  // exact maxima, ascending lexicographic
  double max_r1 = 0.0, max_r2 = 0.0, max_r3 = 0.0, max_sum = 0.0;
  std::uint64_t seed = 0;
};

struct ExploreOptions {
  int threads = 1;
  std::uint64_t block_size = 512;
  // Test hook: adjust the sampled parameters of a draw before the covariance
  // is built (for example forcing coefficients to zero).
  std::function<void(std::uint64_t, SplittingParams&)> param_hook;
  // Evaluate these bounds instead of catalog_for(spec.variant); the two-user
  // degeneration checks pass the reduced catalog here.
  const BoundCatalog* catalog_override = nullptr;
};

// Runs `draws` independent draws (draw i uses stream (seed, i)), projects
// each instantiated polytope onto the totals, and accumulates the exact
// Pareto maxima of all projected vertices plus the origin. Work is split
// into fixed blocks merged in block order, so the result is byte-identical
// for any thread count. Requires an analytic-covariance variant.
RegionEstimate explore(const GaussianChannelSpec& spec, std::uint64_t draws,
                       std::uint64_t seed, const ExploreOptions& options = {});

// Support function of the downward-closed region the estimate stands for:
// max over pareto (and the origin) of sum_i max(direction_i, 0) * p_i.
double estimate_support(const RegionEstimate& estimate,
                        const Eigen::Vector3d& direction);

// The 26 unit directions with components in {-1, 0, 1}, fixed order.
std::vector<Eigen::Vector3d> grid_directions();

struct InclusionReport {
  std::vector<Eigen::Vector3d> directions;
  std::vector<std::vector<double>> support;  // [direction][region]
  std::vector<std::vector<bool>> includes;   // [i][j]: i covers j within tol
  double tol = 1e-6;
};

// Pairwise dominance of two or more estimates by support-function comparison
// over the given directions.
InclusionReport compare(const std::vector<const RegionEstimate*>& regions,
                        const std::vector<Eigen::Vector3d>& directions,
                        double tol = 1e-6);

// True when every point of `covered` is coordinatewise dominated within tol
// by some point of `covering`. O((m+n) log n) staircase sweep.
bool pareto_dominated_by(const std::vector<Eigen::Vector3d>& covered,
                         const std::vector<Eigen::Vector3d>& covering,
                         double tol);

// 2D hull of the Pareto points whose fixed-axis coordinate lies within tol
// of fixed_value, projected onto the two free axes in ascending axis order.
// Throws EmptySlice when no point falls in the band.
std::vector<Eigen::Vector2d> slice2d(const RegionEstimate& estimate,
                                     int fixed_axis, double fixed_value,
                                     double tol = 0.02);

}  // namespace rateregion
