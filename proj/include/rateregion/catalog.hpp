#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rateregion/channel.hpp"
#include "rateregion/info.hpp"
#include "rateregion/polytope.hpp"

namespace rateregion {

// One inequality: the sum of the flagged split rates is bounded by a signed
// sum of mutual-information terms.
struct RateBound {
  std::vector<int> coeffs;  // 0/1 per split rate, catalog order
  std::vector<MITerm> rhs_terms;
};

struct BoundCatalog {
  ModelVariant variant{};
  std::vector<std::string> split_rates;
  std::vector<RateBound> bounds;
  // Total-rate name -> split rates summed into it, in output axis order.
  std::vector<std::pair<std::string, std::vector<std::string>>> recombination;
};

// The bound system of one of the four models, receiver 1 block first, then
// receivers 2 and 3. Variant2 catalogs have 10 bounds over
// (R11, R21, R22, R31, R33); Variant1 catalogs have 36 bounds over
// (R10, R11, R20, R22, R30, R33), twelve per receiver.
BoundCatalog catalog_for(ModelVariant variant);

// Two-user degeneration: drops the split rates recombining into R3 and the
// third user's auxiliary variables. Terms that lose one side entirely are
// removed (they vanish with the third user's power), and bounds that lose
// all their rates are dropped.
BoundCatalog remove_user3(const BoundCatalog& catalog);

// One human-readable line per bound, catalog order.
std::vector<std::string> describe_catalog(const BoundCatalog& catalog);

// Numeric image of a catalog under one covariance. Nonnegativity rows follow
// the catalog bounds.
struct RatePolytope {
  std::vector<std::string> rate_names;
  HalfspaceSystem sys;
};

// Catalog with names resolved to bitmasks over a fixed covariance ordering,
// for repeated numeric evaluation.
struct ResolvedTerm {
  std::uint32_t left = 0, right = 0;
  int sign = 1;
};
struct ResolvedBound {
  std::vector<int> coeffs;
  std::vector<ResolvedTerm> terms;
  bool single_rate = false;
};
struct ResolvedCatalog {
  std::vector<std::string> split_rates;
  std::vector<ResolvedBound> bounds;
  std::vector<std::string> total_names;
  std::vector<std::vector<int>> groups;  // recombination as split indices
};

ResolvedCatalog resolve_catalog(const BoundCatalog& catalog,
                                const std::vector<std::string>& ordering);

// nullopt marks a vacuous evaluation: some single-rate bound came out
// negative. Bounds over several rates can still be negative in a returned
// polytope, leaving it infeasible; callers treat a vertexless system as
// vacuous as well.
std::optional<RatePolytope> instantiate_resolved(const ResolvedCatalog& rc,
                                                 MIEvaluator& ev);
std::optional<RatePolytope> instantiate(
    const BoundCatalog& catalog, const Eigen::MatrixXd& sigma,
    const std::vector<std::string>& ordering);

// Fourier-Motzkin projection of a split-rate polytope onto the totals named
// by the recombination, pruned to an irredundant description.
RatePolytope project_to_totals(
    const RatePolytope& poly,
    const std::vector<std::pair<std::string, std::vector<std::string>>>&
        recombination);

}  // namespace rateregion
