#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rateregion/channel.hpp"
#include "rateregion/polytope.hpp"
#include "rateregion/rng.hpp"

namespace rateregion {

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Random bounded feasible system: per-variable caps, nonnegativity, and a
// few slanted rows with positive offsets, so the origin is strictly feasible
// and the region is bounded. Used by the projection cross-check.
HalfspaceSystem random_bounded_system(int dim, CounterRng& rng);

// Closed-form covariance entries against the built matrix, both sharing
// laws, `draws` random parameter draws each.
SuiteResult verify_entry_formulas(const GaussianChannelSpec& base, int draws,
                                  std::uint64_t seed);

// Simulated second moments against the analytic matrix: every entry is
// normal with known standard error, so at least 99% must land within
// 3 standard errors.
SuiteResult verify_sampled_covariance(const GaussianChannelSpec& base,
                                      int draws, std::int64_t samples,
                                      std::uint64_t seed);

// Fourier-Motzkin projection against the sum-mapped vertex oracle on random
// bounded 5-variable systems, 26 support directions, 1e-9.
SuiteResult verify_projection_oracle(int systems, std::uint64_t seed);

// With shared per-draw randomness and betas forced to zero on both sides,
// the PMS Pareto set must be dominated by the CMS one within 1e-9.
SuiteResult verify_coupled_inclusion(const GaussianChannelSpec& base,
                                     std::uint64_t draws, std::uint64_t seed,
                                     int threads);

// The four suites above with their standard sizes.
std::vector<SuiteResult> run_verification(const GaussianChannelSpec& base,
                                          std::uint64_t seed, int threads);

}  // namespace rateregion
