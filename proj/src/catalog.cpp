#include "rateregion/catalog.hpp"

#include <algorithm>
#include <cmath>

namespace rateregion {

namespace {

using Names = std::initializer_list<const char*>;

VarSet vs(Names names) {
  VarSet s;
  for (const char* n : names) s.names.emplace_back(n);
  return s;
}

MITerm mi(Names left, Names right) { return {vs(left), vs(right), 1}; }
MITerm neg(Names left, Names right) { return {vs(left), vs(right), -1}; }

RateBound rb(const std::vector<std::string>& split_rates, Names rates,
             std::vector<MITerm> terms) {
  RateBound b;
  b.coeffs.assign(split_rates.size(), 0);
  for (const char* r : rates) {
    auto it = std::find(split_rates.begin(), split_rates.end(), r);
    b.coeffs[static_cast<std::size_t>(it - split_rates.begin())] = 1;
  }
  b.rhs_terms = std::move(terms);
  return b;
}

BoundCatalog variant2_catalog(Sharing sharing) {
  BoundCatalog cat;
  cat.variant = {sharing, Decoding::Variant2};
  cat.split_rates = {"R11", "R21", "R22", "R31", "R33"};
  cat.recombination = {{"R1", {"R11"}},
                       {"R2", {"R21", "R22"}},
                       {"R3", {"R31", "R33"}}};
  const auto& sr = cat.split_rates;
  const bool cms = sharing == Sharing::CMS;

  // Binning penalty of the third user's auxiliaries: under CMS they are
  // precoded against everything user 3 knows, under PMS against the primary
  // signal only.
  auto pv = [&](const char* v) {
    return cms ? neg({"W", "U1", "U2"}, {v}) : neg({"W"}, {v});
  };

  auto& b = cat.bounds;
  b.push_back(rb(sr, {"R11"}, {mi({"W"}, {"U1", "V1", "Y1"})}));
  b.push_back(rb(sr, {"R11", "R21"}, {mi({"W", "U1"}, {"V1", "Y1"})}));
  if (cms) {
    b.push_back(rb(sr, {"R11", "R31"},
                   {mi({"W", "V1"}, {"U1", "Y1"}), mi({"W"}, {"V1"}),
                    pv("V1")}));
  } else {
    b.push_back(rb(sr, {"R11", "R31"}, {mi({"W", "V1"}, {"U1", "Y1"})}));
  }
  b.push_back(rb(sr, {"R11", "R21", "R31"},
                 {mi({"W", "U1", "V1"}, {"Y1"}), mi({"W", "U1"}, {"V1"}),
                  pv("V1")}));

  b.push_back(rb(sr, {"R21"}, {mi({"U1"}, {"U2", "Y2"}), neg({"W"}, {"U1"})}));
  b.push_back(rb(sr, {"R22"}, {mi({"U2"}, {"U1", "Y2"}), neg({"W"}, {"U2"})}));
  b.push_back(rb(sr, {"R21", "R22"},
                 {mi({"U1", "U2"}, {"Y2"}), mi({"U1"}, {"U2"}),
                  neg({"W"}, {"U1"}), neg({"W"}, {"U2"})}));

  b.push_back(rb(sr, {"R31"}, {mi({"V1"}, {"V3", "Y3"}), pv("V1")}));
  b.push_back(rb(sr, {"R33"}, {mi({"V3"}, {"V1", "Y3"}), pv("V3")}));
  b.push_back(rb(sr, {"R31", "R33"},
                 {mi({"V1", "V3"}, {"Y3"}), mi({"V1"}, {"V3"}), pv("V3"),
                  pv("V1")}));
  return cat;
}

BoundCatalog variant1_catalog(Sharing sharing) {
  BoundCatalog cat;
  cat.variant = {sharing, Decoding::Variant1};
  cat.split_rates = {"R10", "R11", "R20", "R22", "R30", "R33"};
  cat.recombination = {{"R1", {"R10", "R11"}},
                       {"R2", {"R20", "R22"}},
                       {"R3", {"R30", "R33"}}};
  const auto& sr = cat.split_rates;
  const bool cms = sharing == Sharing::CMS;

  auto pu0 = [] { return neg({"W0", "W1"}, {"U0"}); };
  auto pu2 = [] { return neg({"W0", "W1"}, {"U2"}); };
  auto pv = [&](const char* v) {
    return cms ? neg({"W0", "W1", "U0", "U2"}, {v}) : neg({"W0", "W1"}, {v});
  };

  auto& b = cat.bounds;

  // Receiver 1 decodes (W0, W1, U0, V0).
  b.push_back(rb(sr, {"R10"}, {mi({"W0"}, {"W1", "U0", "V0", "Y1"})}));
  b.push_back(rb(sr, {"R11"}, {mi({"W1"}, {"W0", "U0", "V0", "Y1"})}));
  b.push_back(rb(sr, {"R10", "R11"},
                 {mi({"W0", "W1"}, {"U0", "V0", "Y1"}), mi({"W0"}, {"W1"})}));
  b.push_back(rb(sr, {"R10", "R20"},
                 {mi({"W0", "U0"}, {"W1", "V0", "Y1"}), mi({"W0"}, {"U0"}),
                  pu0()}));
  b.push_back(rb(sr, {"R10", "R30"},
                 {mi({"W0", "V0"}, {"W1", "U0", "Y1"}), mi({"W0"}, {"V0"}),
                  pv("V0")}));
  b.push_back(rb(sr, {"R11", "R20"},
                 {mi({"W1", "U0"}, {"W0", "V0", "Y1"}), mi({"W1"}, {"U0"}),
                  pu0()}));
  b.push_back(rb(sr, {"R11", "R30"},
                 {mi({"W1", "V0"}, {"W0", "U0", "Y1"}), mi({"W1"}, {"V0"}),
                  pv("V0")}));
  b.push_back(rb(sr, {"R10", "R11", "R20"},
                 {mi({"W0", "W1", "U0"}, {"V0", "Y1"}),
                  mi({"W0", "W1"}, {"U0"}), mi({"W0"}, {"W1"}), pu0()}));
  b.push_back(rb(sr, {"R10", "R11", "R30"},
                 {mi({"W0", "W1", "V0"}, {"U0", "Y1"}),
                  mi({"W0", "W1"}, {"V0"}), mi({"W0"}, {"W1"}), pv("V0")}));
  b.push_back(rb(sr, {"R10", "R20", "R30"},
                 {mi({"W0", "U0", "V0"}, {"W1", "Y1"}),
                  mi({"W0", "U0"}, {"V0"}), mi({"W0"}, {"U0"}), pu0(),
                  pv("V0")}));
  b.push_back(rb(sr, {"R11", "R20", "R30"},
                 {mi({"W1", "U0", "V0"}, {"W0", "Y1"}),
                  mi({"W1", "U0"}, {"V0"}), mi({"W1"}, {"U0"}), pu0(),
                  pv("V0")}));
  b.push_back(rb(sr, {"R10", "R11", "R20", "R30"},
                 {mi({"W0", "W1", "U0", "V0"}, {"Y1"}),
                  mi({"W0", "W1", "U0"}, {"V0"}), mi({"W0", "W1"}, {"U0"}),
                  mi({"W0"}, {"W1"}), pu0(), pv("V0")}));

  // Receiver 2 decodes (W0, U0, U2, V0).
  b.push_back(rb(sr, {"R20"}, {mi({"U0"}, {"W0", "U2", "V0", "Y2"}), pu0()}));
  b.push_back(rb(sr, {"R22"}, {mi({"U2"}, {"W0", "U0", "V0", "Y2"}), pu2()}));
  b.push_back(rb(sr, {"R20", "R22"},
                 {mi({"U0", "U2"}, {"W0", "V0", "Y2"}), mi({"U0"}, {"U2"}),
                  pu0(), pu2()}));
  b.push_back(rb(sr, {"R10", "R20"},
                 {mi({"W0", "U0"}, {"U2", "V0", "Y2"}), mi({"W0"}, {"U0"}),
                  pu0()}));
  b.push_back(rb(sr, {"R10", "R22"},
                 {mi({"W0", "U2"}, {"U0", "V0", "Y2"}), mi({"W0"}, {"U2"}),
                  pu2()}));
  b.push_back(rb(sr, {"R20", "R30"},
                 {mi({"U0", "V0"}, {"W0", "U2", "Y2"}), mi({"U0"}, {"V0"}),
                  pu0(), pv("V0")}));
  b.push_back(rb(sr, {"R22", "R30"},
                 {mi({"U2", "V0"}, {"W0", "U0", "Y2"}), mi({"U2"}, {"V0"}),
                  pu2(), pv("V0")}));
  b.push_back(rb(sr, {"R10", "R20", "R22"},
                 {mi({"W0", "U0", "U2"}, {"V0", "Y2"}),
                  mi({"W0", "U0"}, {"U2"}), mi({"W0"}, {"U0"}), pu0(),
                  pu2()}));
  b.push_back(rb(sr, {"R10", "R20", "R30"},
                 {mi({"W0", "U0", "V0"}, {"U2", "Y2"}),
                  mi({"W0", "U0"}, {"V0"}), mi({"W0"}, {"U0"}), pu0(),
                  pv("V0")}));
  b.push_back(rb(sr, {"R10", "R22", "R30"},
                 {mi({"W0", "U2", "V0"}, {"U0", "Y2"}),
                  mi({"W0", "U2"}, {"V0"}), mi({"W0"}, {"U2"}), pu2(),
                  pv("V0")}));
  b.push_back(rb(sr, {"R20", "R22", "R30"},
                 {mi({"U0", "U2", "V0"}, {"W0", "Y2"}),
                  mi({"U0", "U2"}, {"V0"}), mi({"U0"}, {"U2"}), pu0(), pu2(),
                  pv("V0")}));
  b.push_back(rb(sr, {"R10", "R20", "R22", "R30"},
                 {mi({"W0", "U0", "U2", "V0"}, {"Y2"}),
                  mi({"W0", "U0", "U2"}, {"V0"}), mi({"W0", "U0"}, {"U2"}),
                  mi({"W0"}, {"U0"}), pu0(), pu2(), pv("V0")}));

  // Receiver 3 decodes (W0, U0, V0, V3).
  b.push_back(rb(sr, {"R30"}, {mi({"V0"}, {"W0", "U0", "V3", "Y3"}), pv("V0")}));
  b.push_back(rb(sr, {"R33"}, {mi({"V3"}, {"W0", "U0", "V0", "Y3"}), pv("V3")}));
  b.push_back(rb(sr, {"R30", "R33"},
                 {mi({"V0", "V3"}, {"W0", "U0", "Y3"}), mi({"V0"}, {"V3"}),
                  pv("V0"), pv("V3")}));
  b.push_back(rb(sr, {"R10", "R30"},
                 {mi({"W0", "V0"}, {"U0", "V3", "Y3"}), mi({"W0"}, {"V0"}),
                  pv("V0")}));
  b.push_back(rb(sr, {"R10", "R33"},
                 {mi({"W0", "V3"}, {"U0", "V0", "Y3"}), mi({"W0"}, {"V3"}),
                  pv("V3")}));
  b.push_back(rb(sr, {"R20", "R30"},
                 {mi({"U0", "V0"}, {"W0", "V3", "Y3"}), mi({"U0"}, {"V0"}),
                  pu0(), pv("V0")}));
  b.push_back(rb(sr, {"R20", "R33"},
                 {mi({"U0", "V3"}, {"W0", "V0", "Y3"}), mi({"U0"}, {"V3"}),
                  pu0(), pv("V3")}));
  b.push_back(rb(sr, {"R10", "R20", "R30"},
                 {mi({"W0", "U0", "V0"}, {"V3", "Y3"}),
                  mi({"W0", "U0"}, {"V0"}), mi({"W0"}, {"U0"}), pu0(),
                  pv("V0")}));
  b.push_back(rb(sr, {"R10", "R20", "R33"},
                 {mi({"W0", "U0", "V3"}, {"V0", "Y3"}),
                  mi({"W0", "U0"}, {"V3"}), mi({"W0"}, {"U0"}), pu0(),
                  pv("V3")}));
  b.push_back(rb(sr, {"R10", "R30", "R33"},
                 {mi({"W0", "V0", "V3"}, {"U0", "Y3"}),
                  mi({"W0", "V0"}, {"V3"}), mi({"W0"}, {"V0"}), pv("V0"),
                  pv("V3")}));
  b.push_back(rb(sr, {"R20", "R30", "R33"},
                 {mi({"U0", "V0", "V3"}, {"W0", "Y3"}),
                  mi({"U0", "V0"}, {"V3"}), mi({"U0"}, {"V0"}), pu0(),
                  pv("V0"), pv("V3")}));
  b.push_back(rb(sr, {"R10", "R20", "R30", "R33"},
                 {mi({"W0", "U0", "V0", "V3"}, {"Y3"}),
                  mi({"W0", "U0", "V0"}, {"V3"}), mi({"W0", "U0"}, {"V0"}),
                  mi({"W0"}, {"U0"}), pu0(), pv("V0"), pv("V3")}));
  return cat;
}

}  // namespace

BoundCatalog catalog_for(ModelVariant variant) {
  return variant.decoding == Decoding::Variant2
             ? variant2_catalog(variant.sharing)
             : variant1_catalog(variant.sharing);
}

BoundCatalog remove_user3(const BoundCatalog& catalog) {
  auto r3 = std::find_if(
      catalog.recombination.begin(), catalog.recombination.end(),
      [](const auto& e) { return e.first == "R3"; });
  if (r3 == catalog.recombination.end())
    throw Error(ErrorKind::Config, "catalog has no R3 recombination entry");
  const std::vector<std::string>& dropped_rates = r3->second;
  const std::vector<std::string> dropped_vars =
      catalog.variant.decoding == Decoding::Variant2
          ? std::vector<std::string>{"V1", "V3"}
          : std::vector<std::string>{"V0", "V3"};

  auto rate_dropped = [&](const std::string& r) {
    return std::find(dropped_rates.begin(), dropped_rates.end(), r) !=
           dropped_rates.end();
  };
  auto var_dropped = [&](const std::string& v) {
    return std::find(dropped_vars.begin(), dropped_vars.end(), v) !=
           dropped_vars.end();
  };

  BoundCatalog out;
  out.variant = catalog.variant;
  std::vector<int> keep_pos;
  for (std::size_t i = 0; i < catalog.split_rates.size(); ++i) {
    if (rate_dropped(catalog.split_rates[i])) continue;
    keep_pos.push_back(static_cast<int>(i));
    out.split_rates.push_back(catalog.split_rates[i]);
  }
  for (const auto& e : catalog.recombination)
    if (e.first != "R3") out.recombination.push_back(e);

  for (const auto& bound : catalog.bounds) {
    RateBound nb;
    nb.coeffs.reserve(keep_pos.size());
    int total = 0;
    for (int pos : keep_pos) {
      nb.coeffs.push_back(bound.coeffs[static_cast<std::size_t>(pos)]);
      total += nb.coeffs.back();
    }
    if (total == 0) continue;
    for (const auto& term : bound.rhs_terms) {
      MITerm nt;
      nt.sign = term.sign;
      for (const auto& n : term.left.names)
        if (!var_dropped(n)) nt.left.names.push_back(n);
      for (const auto& n : term.right.names)
        if (!var_dropped(n)) nt.right.names.push_back(n);
      if (nt.left.names.empty() || nt.right.names.empty()) continue;
      nb.rhs_terms.push_back(std::move(nt));
    }
    out.bounds.push_back(std::move(nb));
  }
  return out;
}

std::vector<std::string> describe_catalog(const BoundCatalog& catalog) {
  std::vector<std::string> lines;
  lines.reserve(catalog.bounds.size());
  for (const auto& bound : catalog.bounds) {
    std::string line;
    for (std::size_t i = 0; i < bound.coeffs.size(); ++i) {
      if (!bound.coeffs[i]) continue;
      if (!line.empty()) line += '+';
      line += catalog.split_rates[i];
    }
    line += " <= ";
    for (std::size_t t = 0; t < bound.rhs_terms.size(); ++t) {
      const auto& term = bound.rhs_terms[t];
      if (t) line += ' ';
      line += term.sign < 0 ? '-' : '+';
      line += "I(";
      for (std::size_t i = 0; i < term.left.names.size(); ++i) {
        if (i) line += ',';
        line += term.left.names[i];
      }
      line += ';';
      for (std::size_t i = 0; i < term.right.names.size(); ++i) {
        if (i) line += ',';
        line += term.right.names[i];
      }
      line += ')';
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

ResolvedCatalog resolve_catalog(const BoundCatalog& catalog,
                                const std::vector<std::string>& ordering) {
  auto mask_of = [&](const VarSet& set) {
    std::uint32_t m = 0;
    for (int i : resolve_names(ordering, set)) m |= (1u << i);
    return m;
  };

  ResolvedCatalog rc;
  rc.split_rates = catalog.split_rates;
  for (const auto& bound : catalog.bounds) {
    ResolvedBound nb;
    nb.coeffs = bound.coeffs;
    int total = 0;
    for (int c : bound.coeffs) total += c;
    nb.single_rate = total == 1;
    for (const auto& term : bound.rhs_terms)
      nb.terms.push_back({mask_of(term.left), mask_of(term.right), term.sign});
    rc.bounds.push_back(std::move(nb));
  }
  for (const auto& [total, members] : catalog.recombination) {
    rc.total_names.push_back(total);
    std::vector<int> group;
    for (const auto& m : members) {
      auto it =
          std::find(catalog.split_rates.begin(), catalog.split_rates.end(), m);
      if (it == catalog.split_rates.end()) throw MissingVariable(m);
      group.push_back(static_cast<int>(it - catalog.split_rates.begin()));
    }
    rc.groups.push_back(std::move(group));
  }
  return rc;
}

std::optional<RatePolytope> instantiate_resolved(const ResolvedCatalog& rc,
                                                 MIEvaluator& ev) {
  const int d = static_cast<int>(rc.split_rates.size());
  RatePolytope poly;
  poly.rate_names = rc.split_rates;
  poly.sys.dim = d;
  poly.sys.rows.reserve(rc.bounds.size() + static_cast<std::size_t>(d));

  for (const auto& bound : rc.bounds) {
    double rhs = 0.0;
    for (const auto& term : bound.terms)
      rhs += static_cast<double>(term.sign) * ev.mi_bits(term.left, term.right);
    if (!std::isfinite(rhs))
      throw Error(ErrorKind::Numeric, "bound evaluated to a non-finite value");
    if (bound.single_rate && rhs < 0.0) return std::nullopt;
    Halfspace row;
    row.a = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < d; ++i)
      row.a[i] = static_cast<double>(bound.coeffs[static_cast<std::size_t>(i)]);
    row.b = rhs;
    poly.sys.rows.push_back(std::move(row));
  }
  for (int i = 0; i < d; ++i) {
    Halfspace nonneg;
    nonneg.a = Eigen::VectorXd::Zero(d);
    nonneg.a[i] = -1.0;
    nonneg.b = 0.0;
    poly.sys.rows.push_back(std::move(nonneg));
  }
  return poly;
}

std::optional<RatePolytope> instantiate(
    const BoundCatalog& catalog, const Eigen::MatrixXd& sigma,
    const std::vector<std::string>& ordering) {
  ResolvedCatalog rc = resolve_catalog(catalog, ordering);
  MIEvaluator ev(sigma, default_ridge(sigma));
  return instantiate_resolved(rc, ev);
}

RatePolytope project_to_totals(
    const RatePolytope& poly,
    const std::vector<std::pair<std::string, std::vector<std::string>>>&
        recombination) {
  std::vector<std::vector<int>> groups;
  RatePolytope out;
  for (const auto& [total, members] : recombination) {
    out.rate_names.push_back(total);
    std::vector<int> group;
    for (const auto& m : members) {
      auto it = std::find(poly.rate_names.begin(), poly.rate_names.end(), m);
      if (it == poly.rate_names.end()) throw MissingVariable(m);
      group.push_back(static_cast<int>(it - poly.rate_names.begin()));
    }
    groups.push_back(std::move(group));
  }
  HalfspaceSystem projected = project_sums(poly.sys, groups);
  out.sys = prune_redundant(projected, enumerate_vertices(projected));
  return out;
}

}  // namespace rateregion
