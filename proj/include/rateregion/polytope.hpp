#pragma once

#include <vector>

#include <Eigen/Dense>

#include "rateregion/errors.hpp"

namespace rateregion {

// Linear inequality a . x <= b.
struct Halfspace {
  Eigen::VectorXd a;
  double b = 0.0;
};

struct HalfspaceSystem {
  int dim = 0;
  std::vector<Halfspace> rows;
  // Variables whose elimination found constraints on one side only; recorded
  // by the dimension index they had when eliminated. The projection is then
  // just the rows that never mentioned the variable.
  std::vector<int> unbounded_eliminations;
};

inline constexpr double kRowDedupTol = 1e-12;    // coefficient dedup margin
inline constexpr double kFeasTol = 1e-9;         // vertex feasibility slack
inline constexpr double kVertexDedupTol = 1e-8;  // vertex clustering radius
inline constexpr double kParetoTol = 1e-9;       // dominance margin

// Projects out one variable by combining every upper-bounding row with every
// lower-bounding row (coefficient sign threshold 1e-12 after sup-norm row
// normalization). The variable's column is removed, so the result has
// dim - 1. Rows that become 0 <= b with b >= -1e-12 are dropped; ones with
// b < -1e-12 are kept as infeasibility markers. Output rows are normalized,
// sorted and deduplicated (coefficient distance <= 1e-12 keeps the smaller
// offset), making the result deterministic.
HalfspaceSystem fm_eliminate(const HalfspaceSystem& sys, int var_index);

// All basic feasible points of the system: every dim-subset of rows is
// solved, solutions violating some row by more than 1e-9 are discarded,
// near-singular subsets are skipped, and survivors are clustered at 1e-8
// (sup-norm against the cluster representative, lexicographically smallest
// representative kept). Sorted lexicographically. Requires dim <= 6 and
// a region bounded below by nonnegativity rows; an empty result means no
// basic feasible point exists.
std::vector<Eigen::VectorXd> enumerate_vertices(const HalfspaceSystem& sys);

// max over the enumerated vertices of direction . x. Throws Unbounded when
// no vertex exists to take the maximum over.
double support(const HalfspaceSystem& sys, const Eigen::VectorXd& direction);

// Drops every row whose bound is slack against all vertices by more than
// 1e-9 (plus exact duplicate rows); the enumerated vertex set is the oracle.
HalfspaceSystem prune_redundant(const HalfspaceSystem& sys);
HalfspaceSystem prune_redundant(const HalfspaceSystem& sys,
                                const std::vector<Eigen::VectorXd>& vertices);

// Substitutes grouped-sum coordinates: new variables are one total per group
// followed by one slack per group member beyond the first, total
// nonnegativity rows are appended, and the slacks are eliminated last index
// first. Returns the system over the totals (dimension = groups.size()).
// Every input variable must appear in exactly one group. Sound only for
// regions contained in the nonnegative orthant, which is also what licenses
// the cheap row-domination pruning applied between eliminations.
HalfspaceSystem project_sums(const HalfspaceSystem& sys,
                             const std::vector<std::vector<int>>& groups);

// Strictly convex counterclockwise hull (collinear inputs collapse to their
// two extreme points); single point allowed.
std::vector<Eigen::Vector2d> hull2d(std::vector<Eigen::Vector2d> points);

// Points not coordinatewise dominated by any other input point, where q
// dominates p when q >= p in every coordinate and q exceeds p by more than
// tol in at least one. Input order is preserved.
std::vector<Eigen::Vector3d> pareto3d(const std::vector<Eigen::Vector3d>& points,
                                      double tol = kParetoTol);

// Exact coordinatewise maxima with duplicates removed, O(n log n) via a
// descending sweep over x with a y/z staircase. Returns ascending
// lexicographic order. Exactness makes unions monotone: adding points never
// shrinks the maxima set's coverage.
std::vector<Eigen::Vector3d> exact_maxima3(std::vector<Eigen::Vector3d> points);

}  // namespace rateregion
