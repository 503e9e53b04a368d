#include "rateregion/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rateregion/errors.hpp"

namespace rateregion {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(trim(field));
  return fields;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{})
    throw Error(ErrorKind::Numeric, "failed to format a number");
  return std::string(buf, ptr);
}

double parse_double(const std::string& token, const std::string& what) {
  const std::string t = trim(token);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw Error(ErrorKind::Config, "invalid number for " + what + ": '" +
                                       token + "'");
  return value;
}

std::uint64_t parse_uint(const std::string& token, const std::string& what) {
  const std::string t = trim(token);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw Error(ErrorKind::Config,
                "invalid integer for " + what + ": '" + token + "'");
  return value;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open config file: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::Config, path + ":" + std::to_string(lineno) +
                                         ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty())
      throw Error(ErrorKind::Config,
                  path + ":" + std::to_string(lineno) + ": empty key");
    out[key] = value;
  }
  return out;
}

NamedCovariance read_covariance_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::Config, "cannot open covariance file: " + path);

  std::vector<std::vector<std::string>> lines;
  std::string line;
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    lines.push_back(split_csv(stripped));
  }
  if (lines.empty())
    throw Error(ErrorKind::Config, "covariance file is empty: " + path);

  NamedCovariance nc;
  nc.names = lines[0];
  const auto n = nc.names.size();
  if (n == 0) throw Error(ErrorKind::Config, "covariance header is empty");
  for (std::size_t i = 0; i < n; ++i) {
    if (nc.names[i].empty())
      throw Error(ErrorKind::Config, "covariance header has an empty name");
    for (std::size_t j = i + 1; j < n; ++j)
      if (nc.names[i] == nc.names[j])
        throw Error(ErrorKind::Config,
                    "covariance header repeats name: " + nc.names[i]);
  }
  if (lines.size() != n + 1)
    throw Error(ErrorKind::Config,
                "covariance must have exactly one row per header name");

  nc.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = lines[r + 1];
    if (row.size() != n)
      throw Error(ErrorKind::Config, "covariance row " + std::to_string(r + 1) +
                                         " has wrong number of fields");
    for (std::size_t c = 0; c < n; ++c) {
      const double v = parse_double(row[c], "covariance entry");
      if (!std::isfinite(v))
        throw Error(ErrorKind::Config, "covariance entry is not finite");
      nc.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
  }

  const double scale = std::max(1.0, nc.matrix.cwiseAbs().maxCoeff());
  const double asym = (nc.matrix - nc.matrix.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8 * scale)
    throw Error(ErrorKind::Config, "covariance is not symmetric");
  nc.matrix = ((nc.matrix + nc.matrix.transpose()) / 2.0).eval();
  return nc;
}

void write_covariance_csv(std::ostream& os,
                          const std::vector<std::string>& names,
                          const Eigen::MatrixXd& matrix) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) os << ',';
    os << names[i];
  }
  os << '\n';
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      if (c) os << ',';
      os << format_double(matrix(r, c));
    }
    os << '\n';
  }
}

void write_pareto_csv(std::ostream& os,
                      const std::vector<Eigen::Vector3d>& pareto) {
  os << "R1,R2,R3\n";
  for (const auto& p : pareto)
    os << format_double(p.x()) << ',' << format_double(p.y()) << ','
       << format_double(p.z()) << '\n';
}

void write_metrics(std::ostream& os, const RegionEstimate& estimate) {
  os << "max_r1=" << format_double(estimate.max_r1) << '\n'
     << "max_r2=" << format_double(estimate.max_r2) << '\n'
     << "max_r3=" << format_double(estimate.max_r3) << '\n'
     << "max_sum=" << format_double(estimate.max_sum) << '\n'
     << "draws=" << estimate.draws_total << '\n'
     << "draws_vacuous=" << estimate.draws_vacuous << '\n'
     << "seed=" << estimate.seed << '\n';
}

void write_slice_csv(std::ostream& os,
                     const std::array<std::string, 2>& headers,
                     const std::vector<Eigen::Vector2d>& points) {
  os << headers[0] << ',' << headers[1] << '\n';
  for (const auto& p : points)
    os << format_double(p.x()) << ',' << format_double(p.y()) << '\n';
}

}  // namespace rateregion
