#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rateregion/errors.hpp"

namespace rateregion {

// Nonempty, duplicate-free set of variable names out of a covariance's
// ordering.
struct VarSet {
  std::vector<std::string> names;
};

// One signed mutual-information term sign * I(left; right).
struct MITerm {
  VarSet left;
  VarSet right;
  int sign = 1;
};

// Ridge added to principal-submatrix diagonals before any determinant work;
// proportional to the mean diagonal so it is scale-free.
double default_ridge(const Eigen::MatrixXd& sigma);

// Resolves names against the covariance ordering (MissingVariable if absent,
// Error(Config) on duplicates or empty sets).
std::vector<int> resolve_names(const std::vector<std::string>& ordering,
                               const VarSet& set);

// Differential entropy in bits of the named jointly Gaussian subset:
// |S|/2 * log2(2*pi*e) + log2(det sigma_S)/2, with the ridge applied at
// factorization time. Throws SingularSubmatrix when the (ridged) determinant
// is not positive or falls below 1e-300.
double entropy(const Eigen::MatrixXd& sigma,
               const std::vector<std::string>& ordering, const VarSet& set);

// I(left; right) in bits. Throws OverlappingSets when the sets intersect.
double mutual_information(const Eigen::MatrixXd& sigma,
                          const std::vector<std::string>& ordering,
                          const VarSet& left, const VarSet& right);

// Signed sum of the terms; empty list evaluates to 0.
double evaluate_terms(const Eigen::MatrixXd& sigma,
                      const std::vector<std::string>& ordering,
                      const std::vector<MITerm>& terms);

// Resolved fast path over one covariance: variable subsets as bitmasks over
// the matrix rows, log-determinants cached per mask. Supports up to 16
// variables. The matrix is copied, so the evaluator owns what it needs.
class MIEvaluator {
 public:
  MIEvaluator(const Eigen::MatrixXd& sigma, double ridge);

  int dim() const { return static_cast<int>(sigma_.rows()); }

  // log2 det of the principal submatrix selected by the mask, ridged.
  double log2_det(std::uint32_t mask);

  // 0.5 * (log2 det_L + log2 det_R - log2 det_{L|R}) for disjoint masks.
  double mi_bits(std::uint32_t left_mask, std::uint32_t right_mask);

 private:
  Eigen::MatrixXd sigma_;
  double ridge_;
  std::vector<double> cache_;  // indexed by mask; NaN marks unfilled slots
};

}  // namespace rateregion
