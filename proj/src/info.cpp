#include "rateregion/info.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

namespace rateregion {

namespace {

constexpr double kLog2E = std::numbers::log2e;

// log2(det) of the masked principal submatrix of sigma with `ridge` added to
// its diagonal, accumulated in log space through a pivoted LDLT.
double log2_det_masked(const Eigen::MatrixXd& sigma, std::uint32_t mask,
                       double ridge) {
  const int k = std::popcount(mask);
  Eigen::MatrixXd sub(k, k);
  int r = 0;
  for (int i = 0; i < sigma.rows(); ++i) {
    if (!(mask & (1u << i))) continue;
    int c = 0;
    for (int j = 0; j < sigma.rows(); ++j) {
      if (!(mask & (1u << j))) continue;
      sub(r, c++) = sigma(i, j);
    }
    sub.diagonal()[r] += ridge;
    ++r;
  }

  Eigen::LDLT<Eigen::MatrixXd> ldlt(sub);
  if (ldlt.info() != Eigen::Success)
    throw SingularSubmatrix("factorization failed on principal submatrix");

  // det <= 1e-300 in log2 terms; any nonpositive pivot lands below this too.
  constexpr double kFloorLog2 = -996.578428466209;
  double log2det = 0.0;
  for (int i = 0; i < k; ++i) {
    const double d = ldlt.vectorD()[i];
    if (!(d > 0.0))
      throw SingularSubmatrix("nonpositive pivot in principal submatrix");
    log2det += std::log(d) * kLog2E;
  }
  if (!(log2det > kFloorLog2))
    throw SingularSubmatrix("principal submatrix determinant underflow");
  return log2det;
}

std::uint32_t mask_of(const std::vector<int>& idx) {
  std::uint32_t m = 0;
  for (int i : idx) m |= (1u << i);
  return m;
}

}  // namespace

double default_ridge(const Eigen::MatrixXd& sigma) {
  return 1e-12 * sigma.trace() / static_cast<double>(sigma.rows());
}

std::vector<int> resolve_names(const std::vector<std::string>& ordering,
                               const VarSet& set) {
  if (set.names.empty())
    throw Error(ErrorKind::Config, "variable set must be nonempty");
  std::vector<int> idx;
  idx.reserve(set.names.size());
  for (const auto& name : set.names) {
    auto it = std::find(ordering.begin(), ordering.end(), name);
    if (it == ordering.end()) throw MissingVariable(name);
    idx.push_back(static_cast<int>(it - ordering.begin()));
  }
  std::vector<int> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorKind::Config, "variable set contains duplicates");
  return idx;
}

double entropy(const Eigen::MatrixXd& sigma,
               const std::vector<std::string>& ordering, const VarSet& set) {
  const std::vector<int> idx = resolve_names(ordering, set);
  const double bits_per_var = 0.5 * std::log2(2.0 * std::numbers::pi *
                                              std::numbers::e);
  const double logdet =
      log2_det_masked(sigma, mask_of(idx), default_ridge(sigma));
  return static_cast<double>(idx.size()) * bits_per_var + 0.5 * logdet;
}

double mutual_information(const Eigen::MatrixXd& sigma,
                          const std::vector<std::string>& ordering,
                          const VarSet& left, const VarSet& right) {
  MIEvaluator ev(sigma, default_ridge(sigma));
  const std::uint32_t lm = mask_of(resolve_names(ordering, left));
  const std::uint32_t rm = mask_of(resolve_names(ordering, right));
  return ev.mi_bits(lm, rm);
}

double evaluate_terms(const Eigen::MatrixXd& sigma,
                      const std::vector<std::string>& ordering,
                      const std::vector<MITerm>& terms) {
  MIEvaluator ev(sigma, default_ridge(sigma));
  double total = 0.0;
  for (const auto& term : terms) {
    const std::uint32_t lm = mask_of(resolve_names(ordering, term.left));
    const std::uint32_t rm = mask_of(resolve_names(ordering, term.right));
    total += static_cast<double>(term.sign) * ev.mi_bits(lm, rm);
  }
  return total;
}

MIEvaluator::MIEvaluator(const Eigen::MatrixXd& sigma, double ridge)
    : sigma_(sigma), ridge_(ridge) {
  if (sigma.rows() != sigma.cols())
    throw Error(ErrorKind::Config, "covariance must be square");
  if (sigma.rows() > 16)
    throw Error(ErrorKind::Config, "covariance larger than 16 variables");
  cache_.assign(std::size_t{1} << sigma.rows(),
                std::numeric_limits<double>::quiet_NaN());
}

double MIEvaluator::log2_det(std::uint32_t mask) {
  if (mask == 0 || mask >= cache_.size())
    throw Error(ErrorKind::Config, "variable mask out of range");
  double& slot = cache_[mask];
  if (std::isnan(slot)) slot = log2_det_masked(sigma_, mask, ridge_);
  return slot;
}

double MIEvaluator::mi_bits(std::uint32_t left_mask, std::uint32_t right_mask) {
  if (left_mask & right_mask)
    throw OverlappingSets("mutual information requires disjoint sets");
  return 0.5 * (log2_det(left_mask) + log2_det(right_mask) -
                log2_det(left_mask | right_mask));
}

}  // namespace rateregion
