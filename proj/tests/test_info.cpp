#include "rateregion/info.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "rateregion/errors.hpp"
#include "rateregion/rng.hpp"

namespace rateregion {
namespace {

const std::vector<std::string> kAbcd{"A", "B", "C", "D"};

Eigen::MatrixXd random_psd(int dim, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  Eigen::MatrixXd a(dim, dim + 2);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim + 2; ++j) a(i, j) = rng.normal();
  Eigen::MatrixXd s = a * a.transpose();
  s.diagonal().array() += 1e-6;
  return s;
}

TEST(Entropy, FrozenScalarValues) {
  Eigen::MatrixXd one(1, 1);
  one << 1.0;
  EXPECT_NEAR(entropy(one, {"A"}, {{"A"}}), 2.047095585180641, 1e-11);

  Eigen::MatrixXd five(1, 1);
  five << 5.0;
  EXPECT_NEAR(entropy(five, {"A"}, {{"A"}}), 3.2080596326243223, 1e-11);
}

TEST(Entropy, FrozenJointValues) {
  EXPECT_NEAR(entropy(Eigen::MatrixXd::Identity(2, 2), {"A", "B"},
                      {{"A", "B"}}),
              2.0 * 2.047095585180641, 1e-11);

  Eigen::MatrixXd s(3, 3);
  s << 2.0, 1.0, 0.5,  //
      1.0, 3.0, 1.0,   //
      0.5, 1.0, 1.5;
  EXPECT_NEAR(entropy(s, {"A", "B", "C"}, {{"A", "B", "C"}}),
              7.403067733570429, 1e-10);
}

TEST(MutualInformation, IndependentIsZero) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2, 2);
  s(0, 0) = 2.0;
  s(1, 1) = 3.0;
  EXPECT_NEAR(mutual_information(s, {"A", "B"}, {{"A"}}, {{"B"}}), 0.0, 1e-9);
}

TEST(MutualInformation, FrozenHalfBit) {
  Eigen::MatrixXd s(2, 2);
  s << 1.0, 1.0, 1.0, 2.0;
  EXPECT_NEAR(mutual_information(s, {"A", "B"}, {{"A"}}, {{"B"}}), 0.5, 1e-9);
}

TEST(MutualInformation, SymmetricNonnegativeAndConsistent) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Eigen::MatrixXd s = random_psd(4, seed);
    const double iab = mutual_information(s, kAbcd, {{"A", "C"}}, {{"B"}});
    const double iba = mutual_information(s, kAbcd, {{"B"}}, {{"A", "C"}});
    EXPECT_NEAR(iab, iba, 1e-9);
    EXPECT_GE(iab, -1e-9);

    const double by_entropies = entropy(s, kAbcd, {{"A", "C"}}) +
                                entropy(s, kAbcd, {{"B"}}) -
                                entropy(s, kAbcd, {{"A", "C", "B"}});
    EXPECT_NEAR(iab, by_entropies, 1e-9);
  }
}

TEST(MutualInformation, ConditionalFormIsNonnegative) {
  // I(A; C | B) written with four entropies stays nonnegative.
  for (std::uint64_t seed = 21; seed <= 40; ++seed) {
    const Eigen::MatrixXd s = random_psd(3, seed);
    const std::vector<std::string> abc{"A", "B", "C"};
    const double cond = entropy(s, abc, {{"A", "B"}}) +
                        entropy(s, abc, {{"C", "B"}}) -
                        entropy(s, abc, {{"B"}}) -
                        entropy(s, abc, {{"A", "B", "C"}});
    EXPECT_GE(cond, -1e-9) << "seed " << seed;
  }
}

TEST(MutualInformation, MonotoneInRightSet) {
  for (std::uint64_t seed = 41; seed <= 60; ++seed) {
    const Eigen::MatrixXd s = random_psd(4, seed);
    const double small = mutual_information(s, kAbcd, {{"A"}}, {{"B"}});
    const double large = mutual_information(s, kAbcd, {{"A"}}, {{"B", "C"}});
    EXPECT_GE(large, small - 1e-9) << "seed " << seed;
  }
}

TEST(EvaluateTerms, SignedSum) {
  const Eigen::MatrixXd s = random_psd(4, 99);
  const MITerm plus{{{"A"}}, {{"B", "C"}}, 1};
  const MITerm minus{{{"A"}}, {{"D"}}, -1};
  const double expected =
      mutual_information(s, kAbcd, {{"A"}}, {{"B", "C"}}) -
      mutual_information(s, kAbcd, {{"A"}}, {{"D"}});
  EXPECT_NEAR(evaluate_terms(s, kAbcd, {plus, minus}), expected, 1e-12);
  EXPECT_EQ(evaluate_terms(s, kAbcd, {}), 0.0);
}

TEST(Errors, OverlappingSetsThrow) {
  const Eigen::MatrixXd s = random_psd(3, 5);
  EXPECT_THROW(mutual_information(s, {"A", "B", "C"}, {{"A", "B"}}, {{"B"}}),
               OverlappingSets);
}

TEST(Errors, SingularMatrixThrows) {
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(1, 1);
  EXPECT_THROW(entropy(zero, {"A"}, {{"A"}}), SingularSubmatrix);
}

TEST(Errors, BadNameSetsThrow) {
  const Eigen::MatrixXd s = random_psd(2, 6);
  EXPECT_THROW(entropy(s, {"A", "B"}, {{"Q"}}), MissingVariable);
  EXPECT_THROW(entropy(s, {"A", "B"}, {{"A", "A"}}), Error);
  EXPECT_THROW(entropy(s, {"A", "B"}, {{}}), Error);
}

TEST(Evaluator, MatchesFreeFunctions) {
  const Eigen::MatrixXd s = random_psd(4, 77);
  MIEvaluator ev(s, default_ridge(s));
  // Masks follow the ordering A=bit0 .. D=bit3.
  const double direct = mutual_information(s, kAbcd, {{"A", "B"}}, {{"C"}});
  EXPECT_NEAR(ev.mi_bits(0b0011, 0b0100), direct, 1e-12);
  // Repeat hits the cache and must reproduce the value exactly.
  EXPECT_EQ(ev.mi_bits(0b0011, 0b0100), ev.mi_bits(0b0011, 0b0100));
}

TEST(Evaluator, RejectsOverlapAndOversize) {
  const Eigen::MatrixXd s = random_psd(3, 8);
  MIEvaluator ev(s, default_ridge(s));
  EXPECT_THROW(ev.mi_bits(0b011, 0b010), OverlappingSets);
  EXPECT_THROW(MIEvaluator(random_psd(17, 9), 0.0), Error);
}

}  // namespace
}  // namespace rateregion
