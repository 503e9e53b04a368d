#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rateregion/explorer.hpp"

namespace rateregion {

// Shortest round-trip decimal representation, locale-independent.
std::string format_double(double value);

// Locale-independent strict parse of a full token; throws Error(Config).
double parse_double(const std::string& token, const std::string& what);
std::uint64_t parse_uint(const std::string& token, const std::string& what);

// key=value lines; '#' starts a comment, blank lines ignored, later keys
// override earlier ones.
std::map<std::string, std::string> read_config_file(const std::string& path);

struct NamedCovariance {
  std::vector<std::string> names;
  Eigen::MatrixXd matrix;
};

// CSV with a header row of variable names followed by a square numeric
// matrix. The matrix must be finite and symmetric to 1e-8 relative; it is
// symmetrized on read.
NamedCovariance read_covariance_csv(const std::string& path);

void write_covariance_csv(std::ostream& os,
                          const std::vector<std::string>& names,
                          const Eigen::MatrixXd& matrix);

// Header "R1,R2,R3", one row per Pareto point.
void write_pareto_csv(std::ostream& os,
                      const std::vector<Eigen::Vector3d>& pareto);

// key=value lines: max_r1, max_r2, max_r3, max_sum, draws, draws_vacuous,
// seed, in that order.
void write_metrics(std::ostream& os, const RegionEstimate& estimate);

void write_slice_csv(std::ostream& os,
                     const std::array<std::string, 2>& headers,
                     const std::vector<Eigen::Vector2d>& points);

}  // namespace rateregion
