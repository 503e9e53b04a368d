#include "rateregion/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace rateregion {

namespace {

using Eigen::Vector2d;
using Eigen::Vector3d;
using Eigen::VectorXd;

bool is_zero_row(const Halfspace& r) {
  return r.a.lpNorm<Eigen::Infinity>() <= kRowDedupTol;
}

Halfspace normalized(Halfspace r) {
  const double scale = r.a.lpNorm<Eigen::Infinity>();
  if (scale > kRowDedupTol) {
    r.a /= scale;
    r.b /= scale;
  }
  return r;
}

bool lex_row_less(const Halfspace& x, const Halfspace& y) {
  for (int i = 0; i < x.a.size(); ++i)
    if (x.a[i] != y.a[i]) return x.a[i] < y.a[i];
  return x.b < y.b;
}

// Normalizes, drops trivial rows (0 <= b with b >= -tol), keeps zero rows
// with negative offsets as infeasibility markers, sorts, and merges rows
// whose coefficients agree within 1e-12 keeping the smaller offset.
std::vector<Halfspace> canonicalize(std::vector<Halfspace> rows) {
  std::vector<Halfspace> out;
  out.reserve(rows.size());
  for (auto& r : rows) {
    if (is_zero_row(r)) {
      if (r.b >= -kRowDedupTol) continue;
      r.a.setZero();
      out.push_back(std::move(r));
      continue;
    }
    out.push_back(normalized(std::move(r)));
  }
  std::sort(out.begin(), out.end(), lex_row_less);

  std::vector<Halfspace> dedup;
  for (auto& r : out) {
    if (!dedup.empty() &&
        (dedup.back().a - r.a).lpNorm<Eigen::Infinity>() <= kRowDedupTol) {
      dedup.back().b = std::min(dedup.back().b, r.b);
      continue;
    }
    dedup.push_back(std::move(r));
  }
  return dedup;
}

VectorXd drop_coord(const VectorXd& a, int k) {
  VectorXd out(a.size() - 1);
  for (int i = 0, j = 0; i < a.size(); ++i)
    if (i != k) out[j++] = a[i];
  return out;
}

// Drops rows implied by a companion row with componentwise-larger
// coefficients and smaller offset; valid only over the nonnegative orthant.
void orthant_prune(std::vector<Halfspace>& rows) {
  if (rows.size() > 2000) return;
  const double tol = kRowDedupTol;
  std::vector<bool> drop(rows.size(), false);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (drop[i]) continue;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (i == j || drop[j]) continue;
      if (rows[j].b > rows[i].b + tol) continue;
      if ((rows[j].a - rows[i].a).minCoeff() < -tol) continue;
      // Identical rows: keep the earlier one.
      if (rows[j].b >= rows[i].b - tol &&
          (rows[j].a - rows[i].a).lpNorm<Eigen::Infinity>() <= tol && j > i)
        continue;
      drop[i] = true;
      break;
    }
  }
  std::vector<Halfspace> kept;
  kept.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!drop[i]) kept.push_back(std::move(rows[i]));
  rows = std::move(kept);
}

bool lex_point_less(const VectorXd& x, const VectorXd& y) {
  for (int i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) return x[i] < y[i];
  return false;
}

}  // namespace

HalfspaceSystem fm_eliminate(const HalfspaceSystem& sys, int var_index) {
  if (var_index < 0 || var_index >= sys.dim)
    throw Error(ErrorKind::Config, "elimination index out of range");
  if (sys.dim < 1) throw Error(ErrorKind::Config, "empty system dimension");

  std::vector<Halfspace> uppers, lowers;
  std::vector<Halfspace> passthrough;
  for (const auto& raw : sys.rows) {
    if (is_zero_row(raw)) {
      passthrough.push_back(raw);
      continue;
    }
    Halfspace r = normalized(raw);
    if (r.a[var_index] > kRowDedupTol)
      uppers.push_back(std::move(r));
    else if (r.a[var_index] < -kRowDedupTol)
      lowers.push_back(std::move(r));
    else
      passthrough.push_back(std::move(r));
  }

  HalfspaceSystem out;
  out.dim = sys.dim - 1;
  out.unbounded_eliminations = sys.unbounded_eliminations;

  std::vector<Halfspace> rows;
  for (const auto& r : passthrough)
    rows.push_back({is_zero_row(r) ? VectorXd::Zero(out.dim).eval()
                                   : drop_coord(r.a, var_index),
                    r.b});

  if (uppers.empty() || lowers.empty()) {
    out.unbounded_eliminations.push_back(var_index);
  } else {
    for (const auto& up : uppers) {
      const double us = up.a[var_index];
      for (const auto& lo : lowers) {
        const double ls = -lo.a[var_index];
        Halfspace combo;
        combo.a = up.a / us + lo.a / ls;
        combo.a[var_index] = 0.0;
        combo.b = up.b / us + lo.b / ls;
        rows.push_back({drop_coord(combo.a, var_index), combo.b});
      }
    }
  }

  out.rows = canonicalize(std::move(rows));
  return out;
}

namespace {

using SmallMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                               Eigen::ColMajor, 6, 6>;
using SmallVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 6, 1>;

// Solves the dim x dim subsystem picked by idx; false when near singular.
bool solve_subset(const std::vector<Halfspace>& rows,
                  const std::vector<int>& idx, int dim, SmallVec& x) {
  if (dim == 3) {
    const auto& a0 = rows[static_cast<std::size_t>(idx[0])].a;
    const auto& a1 = rows[static_cast<std::size_t>(idx[1])].a;
    const auto& a2 = rows[static_cast<std::size_t>(idx[2])].a;
    const double det = a0[0] * (a1[1] * a2[2] - a1[2] * a2[1]) -
                       a0[1] * (a1[0] * a2[2] - a1[2] * a2[0]) +
                       a0[2] * (a1[0] * a2[1] - a1[1] * a2[0]);
    if (std::abs(det) <= 1e-12) return false;
    const double b0 = rows[static_cast<std::size_t>(idx[0])].b;
    const double b1 = rows[static_cast<std::size_t>(idx[1])].b;
    const double b2 = rows[static_cast<std::size_t>(idx[2])].b;
    x.resize(3);
    x[0] = (b0 * (a1[1] * a2[2] - a1[2] * a2[1]) -
            a0[1] * (b1 * a2[2] - a1[2] * b2) +
            a0[2] * (b1 * a2[1] - a1[1] * b2)) /
           det;
    x[1] = (a0[0] * (b1 * a2[2] - a1[2] * b2) -
            b0 * (a1[0] * a2[2] - a1[2] * a2[0]) +
            a0[2] * (a1[0] * b2 - b1 * a2[0])) /
           det;
    x[2] = (a0[0] * (a1[1] * b2 - b1 * a2[1]) -
            a0[1] * (a1[0] * b2 - b1 * a2[0]) +
            b0 * (a1[0] * a2[1] - a1[1] * a2[0])) /
           det;
    return x.allFinite();
  }

  SmallMat A(dim, dim);
  SmallVec b(dim);
  for (int r = 0; r < dim; ++r) {
    A.row(r) = rows[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])]
                   .a.transpose();
    b[r] = rows[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])].b;
  }
  Eigen::FullPivLU<SmallMat> lu(A);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) return false;
  x = lu.solve(b);
  return x.allFinite();
}

}  // namespace

std::vector<VectorXd> enumerate_vertices(const HalfspaceSystem& sys) {
  const int d = sys.dim;
  if (d < 1 || d > 6)
    throw Error(ErrorKind::Config,
                "vertex enumeration supports 1 to 6 dimensions");

  std::vector<Halfspace> rows;
  rows.reserve(sys.rows.size());
  for (const auto& raw : sys.rows) {
    if (is_zero_row(raw)) {
      if (raw.b < -kRowDedupTol) return {};  // infeasibility marker
      continue;
    }
    rows.push_back(normalized(raw));
  }
  const int m = static_cast<int>(rows.size());
  if (m < d) return {};

  double combos = 1.0;
  for (int i = 0; i < d; ++i) combos *= static_cast<double>(m - i) / (i + 1);
  if (combos > 2e7)
    throw Error(ErrorKind::Numeric,
                "vertex enumeration would visit too many row subsets");

  std::vector<VectorXd> candidates;
  std::vector<int> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), 0);
  SmallVec x;
  while (true) {
    if (solve_subset(rows, idx, d, x)) {
      bool feasible = true;
      for (const auto& r : rows) {
        if (r.a.dot(x) > r.b + kFeasTol) {
          feasible = false;
          break;
        }
      }
      if (feasible) candidates.emplace_back(x);
    }
    int pos = d - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - d + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < d; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }

  std::sort(candidates.begin(), candidates.end(), lex_point_less);
  std::vector<VectorXd> vertices;
  for (const auto& p : candidates) {
    if (!vertices.empty() &&
        (vertices.back() - p).lpNorm<Eigen::Infinity>() <= kVertexDedupTol)
      continue;
    vertices.push_back(p);
  }
  return vertices;
}

double support(const HalfspaceSystem& sys, const VectorXd& direction) {
  if (direction.size() != sys.dim)
    throw Error(ErrorKind::Config, "direction dimension mismatch");
  const auto vertices = enumerate_vertices(sys);
  if (vertices.empty())
    throw Unbounded("support undefined: no basic feasible point");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices) best = std::max(best, direction.dot(v));
  return best;
}

HalfspaceSystem prune_redundant(const HalfspaceSystem& sys) {
  return prune_redundant(sys, enumerate_vertices(sys));
}

HalfspaceSystem prune_redundant(const HalfspaceSystem& sys,
                                const std::vector<VectorXd>& vertices) {
  if (vertices.empty()) return sys;

  HalfspaceSystem out;
  out.dim = sys.dim;
  out.unbounded_eliminations = sys.unbounded_eliminations;

  std::vector<Halfspace> rows;
  rows.reserve(sys.rows.size());
  for (const auto& raw : sys.rows) {
    if (is_zero_row(raw)) continue;  // vertices exist, markers cannot
    Halfspace r = normalized(raw);
    double maxv = -std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) maxv = std::max(maxv, r.a.dot(v));
    if (maxv < r.b - kFeasTol) continue;  // slack against every vertex
    bool dup = false;
    for (auto& kept : rows) {
      if ((kept.a - r.a).lpNorm<Eigen::Infinity>() <= kRowDedupTol &&
          std::abs(kept.b - r.b) <= kRowDedupTol) {
        dup = true;
        break;
      }
    }
    if (!dup) rows.push_back(std::move(r));
  }
  out.rows = std::move(rows);
  return out;
}

HalfspaceSystem project_sums(const HalfspaceSystem& sys,
                             const std::vector<std::vector<int>>& groups) {
  const int dim = sys.dim;
  const int k = static_cast<int>(groups.size());
  std::vector<int> seen(static_cast<std::size_t>(dim), 0);
  for (const auto& g : groups) {
    if (g.empty()) throw Error(ErrorKind::Config, "empty variable group");
    for (int v : g) {
      if (v < 0 || v >= dim)
        throw Error(ErrorKind::Config, "group index out of range");
      ++seen[static_cast<std::size_t>(v)];
    }
  }
  for (int c : seen)
    if (c != 1)
      throw Error(ErrorKind::Config,
                  "groups must partition the system's variables");

  // New coordinates: one total per group, then one slack per member beyond
  // the first. The first member of group g equals total_g minus its slacks.
  std::vector<int> slack_pos(static_cast<std::size_t>(dim), -1);
  std::vector<int> first_of(static_cast<std::size_t>(dim), -1);
  int next_slack = k;
  for (int g = 0; g < k; ++g) {
    const auto& members = groups[static_cast<std::size_t>(g)];
    for (std::size_t j = 0; j < members.size(); ++j) {
      first_of[static_cast<std::size_t>(members[j])] = g;
      if (j > 0) slack_pos[static_cast<std::size_t>(members[j])] = next_slack++;
    }
  }
  const int new_dim = next_slack;  // == dim

  HalfspaceSystem cur;
  cur.dim = new_dim;
  for (const auto& row : sys.rows) {
    Halfspace nr;
    nr.a = VectorXd::Zero(new_dim);
    nr.b = row.b;
    for (int g = 0; g < k; ++g) {
      const auto& members = groups[static_cast<std::size_t>(g)];
      const double lead = row.a[members[0]];
      nr.a[g] += lead;
      for (std::size_t j = 1; j < members.size(); ++j) {
        const int sp = slack_pos[static_cast<std::size_t>(members[j])];
        nr.a[sp] += row.a[members[j]] - lead;
      }
    }
    cur.rows.push_back(std::move(nr));
  }
  for (int g = 0; g < k; ++g) {
    Halfspace nonneg;
    nonneg.a = VectorXd::Zero(new_dim);
    nonneg.a[g] = -1.0;
    nonneg.b = 0.0;
    cur.rows.push_back(std::move(nonneg));
  }
  cur.rows = canonicalize(std::move(cur.rows));
  orthant_prune(cur.rows);

  while (cur.dim > k) {
    cur = fm_eliminate(cur, cur.dim - 1);
    orthant_prune(cur.rows);
  }
  return cur;
}

std::vector<Vector2d> hull2d(std::vector<Vector2d> points) {
  auto lex2 = [](const Vector2d& a, const Vector2d& b) {
    if (a.x() != b.x()) return a.x() < b.x();
    return a.y() < b.y();
  };
  std::sort(points.begin(), points.end(), lex2);
  points.erase(std::unique(points.begin(), points.end(),
                           [](const Vector2d& a, const Vector2d& b) {
                             return a.x() == b.x() && a.y() == b.y();
                           }),
               points.end());
  if (points.size() <= 2) return points;

  double scale = 1.0;
  for (const auto& p : points)
    scale = std::max({scale, std::abs(p.x()), std::abs(p.y())});
  const double eps = 1e-12 * scale * scale;
  auto cross = [](const Vector2d& o, const Vector2d& a, const Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) -
           (a.y() - o.y()) * (b.x() - o.x());
  };

  std::vector<Vector2d> lower, upper;
  for (const auto& p : points) {
    while (lower.size() >= 2 &&
           cross(lower[lower.size() - 2], lower.back(), p) <= eps)
      lower.pop_back();
    lower.push_back(p);
  }
  for (auto it = points.rbegin(); it != points.rend(); ++it) {
    while (upper.size() >= 2 &&
           cross(upper[upper.size() - 2], upper.back(), *it) <= eps)
      upper.pop_back();
    upper.push_back(*it);
  }
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  return lower;
}

std::vector<Vector3d> pareto3d(const std::vector<Vector3d>& points,
                               double tol) {
  std::vector<Vector3d> kept;
  kept.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      if (j == i) continue;
      const auto& q = points[j];
      dominated = q.x() >= p.x() && q.y() >= p.y() && q.z() >= p.z() &&
                  (q.x() > p.x() + tol || q.y() > p.y() + tol ||
                   q.z() > p.z() + tol);
    }
    if (!dominated) kept.push_back(p);
  }
  return kept;
}

std::vector<Vector3d> exact_maxima3(std::vector<Vector3d> points) {
  auto lex_less = [](const Vector3d& a, const Vector3d& b) {
    if (a.x() != b.x()) return a.x() < b.x();
    if (a.y() != b.y()) return a.y() < b.y();
    return a.z() < b.z();
  };
  std::sort(points.begin(), points.end(),
            [&](const Vector3d& a, const Vector3d& b) { return lex_less(b, a); });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const Vector3d& a, const Vector3d& b) {
                             return a.x() == b.x() && a.y() == b.y() &&
                                    a.z() == b.z();
                           }),
               points.end());

  // Staircase over already-processed points (all with x >= current x):
  // keys are y descending, values the best z, strictly increasing as y falls.
  std::map<double, double, std::greater<double>> stair;
  std::vector<Vector3d> kept;
  for (const auto& p : points) {
    auto after = stair.upper_bound(p.y());  // first key strictly below p.y
    if (after != stair.begin()) {
      const auto& q = *std::prev(after);  // max z among keys >= p.y
      if (q.second >= p.z()) continue;    // dominated
    }
    kept.push_back(p);
    auto [pos, unused] = stair.insert_or_assign(p.y(), p.z());
    static_cast<void>(unused);
    auto next = std::next(pos);
    while (next != stair.end() && next->second <= p.z())
      next = stair.erase(next);
  }
  std::sort(kept.begin(), kept.end(), lex_less);
  return kept;
}

}  // namespace rateregion
