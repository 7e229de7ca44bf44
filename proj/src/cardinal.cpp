#include "cardot/cardinal.hpp"

#include <algorithm>
#include <cmath>

#include "cardot/oracle.hpp"

namespace cardot {

namespace {

using Key2 = std::array<double, 2>;
using Key3 = std::array<double, 3>;

std::map<Key2, double> project2(const std::vector<FlowAtom1>& f1) {
  std::map<Key2, double> out;
  for (const FlowAtom1& a : f1) out[{a.y1, a.x2}] += a.mass;
  return out;
}

std::map<Key2, double> project2(const std::vector<FlowAtom2>& f2) {
  std::map<Key2, double> out;
  for (const FlowAtom2& a : f2) out[{a.y1, a.x2}] += a.mass;
  return out;
}

// Max atom-wise difference between two keyed mass maps.
template <class Map>
double map_deviation(const Map& a, const Map& b) {
  double dev = 0.0;
  for (const auto& [k, m] : a) {
    auto it = b.find(k);
    dev = std::max(dev, std::abs(m - (it == b.end() ? 0.0 : it->second)));
  }
  for (const auto& [k, m] : b)
    if (!a.count(k)) dev = std::max(dev, std::abs(m));
  return dev;
}

double solve_slice(const DiscreteMeasure1D& from, const DiscreteMeasure1D& to,
                   const ConvexRadialCost& c, SliceSolver solver,
                   Plan1D* plan_out) {
  if (solver == SliceSolver::BruteForce) {
    auto r = oracle::brute_force_w1d(from, to, c);
    if (plan_out) *plan_out = std::move(r.plan);
    return r.cost;
  }
  Plan1D plan = comonotone_plan(from, to);
  double cost = plan_cost(plan, c);
  if (plan_out) *plan_out = std::move(plan);
  return cost;
}

void check_intermedium(const PivotMeasure& zeta, const DiscreteMeasure2D& mu,
                       const DiscreteMeasure2D& nu) {
  double dev_x2 = max_weight_deviation(zeta.x2_marginal(), marginal(mu, 2));
  double dev_y1 = max_weight_deviation(zeta.y1_marginal(), marginal(nu, 1));
  if (dev_x2 > kMassTol || dev_y1 > kMassTol)
    throw NotIntermedium("candidate marginals are not (nu1, mu2); deviation " +
                         std::to_string(std::max(dev_x2, dev_y1)));
}

// zeta sliced along one of its two coordinates, renormalized per slice.
// index 0 slices by y1 (conditional over x2), index 1 by x2 (over y1).
std::map<double, DiscreteMeasure1D> pivot_slices(const PivotMeasure& zeta,
                                                 int index) {
  std::map<double, std::vector<Atom1D>> groups;
  std::map<double, double> totals;
  for (const PivotAtom& a : zeta.atoms) {
    double key = index == 0 ? a.y1 : a.x2;
    double other = index == 0 ? a.x2 : a.y1;
    groups[key].push_back({other, a.w});
    totals[key] += a.w;
  }
  std::map<double, DiscreteMeasure1D> out;
  for (auto& [key, atoms] : groups) {
    for (Atom1D& a : atoms) a.w /= totals[key];
    out.emplace(key, DiscreteMeasure1D(std::move(atoms)));
  }
  return out;
}

}  // namespace

DiscreteMeasure1D PivotMeasure::y1_marginal() const {
  std::vector<Atom1D> a;
  a.reserve(atoms.size());
  for (const PivotAtom& p : atoms) a.push_back({p.y1, p.w});
  return DiscreteMeasure1D(std::move(a));
}

DiscreteMeasure1D PivotMeasure::x2_marginal() const {
  std::vector<Atom1D> a;
  a.reserve(atoms.size());
  for (const PivotAtom& p : atoms) a.push_back({p.x2, p.w});
  return DiscreteMeasure1D(std::move(a));
}

DiscreteMeasure2D PivotMeasure::as_measure_2d() const {
  std::vector<Atom2D> a;
  a.reserve(atoms.size());
  for (const PivotAtom& p : atoms)
    a.push_back({Eigen::Vector2d(p.y1, p.x2), p.w});
  return DiscreteMeasure2D(std::move(a));
}

DiscreteMeasure2D TransportPlan::source_marginal() const {
  std::vector<Atom2D> a;
  a.reserve(entries.size());
  for (const PlanAtom& e : entries)
    a.push_back({Eigen::Vector2d(e.x1, e.x2), e.mass});
  return DiscreteMeasure2D(std::move(a));
}

DiscreteMeasure2D TransportPlan::target_marginal() const {
  std::vector<Atom2D> a;
  a.reserve(entries.size());
  for (const PlanAtom& e : entries)
    a.push_back({Eigen::Vector2d(e.y1, e.y2), e.mass});
  return DiscreteMeasure2D(std::move(a));
}

double plan_cost(const TransportPlan& pi, const SeparableCost& c) {
  double total = 0.0;
  for (const PlanAtom& e : pi.entries)
    total += e.mass * (c.c1(e.x1, e.y1) + c.c2(e.x2, e.y2));
  return total;
}

double flow_cost(const CardinalFlow& F, const SeparableCost& c) {
  double total = 0.0;
  for (const FlowAtom1& a : F.f1) total += a.mass * c.c1(a.x1, a.y1);
  for (const FlowAtom2& a : F.f2) total += a.mass * c.c2(a.x2, a.y2);
  return total;
}

CardinalFlow plan_to_flow(const TransportPlan& pi) {
  std::vector<std::pair<Key3, double>> raw1, raw2;
  raw1.reserve(pi.entries.size());
  raw2.reserve(pi.entries.size());
  for (const PlanAtom& e : pi.entries) {
    raw1.push_back({{e.x1, e.x2, e.y1}, e.mass});
    raw2.push_back({{e.x2, e.y1, e.y2}, e.mass});
  }
  CardinalFlow F;
  for (const auto& [k, m] : detail::accumulate_atoms<3>(raw1))
    F.f1.push_back({k[0], k[1], k[2], m});
  for (const auto& [k, m] : detail::accumulate_atoms<3>(raw2))
    F.f2.push_back({k[0], k[1], k[2], m});
  return F;
}

PivotMeasure pivot_of(const CardinalFlow& F) {
  auto m1 = project2(F.f1);
  auto m2 = project2(F.f2);
  double dev = map_deviation(m1, m2);
  if (dev > kMassTol)
    throw GlueMismatch(
        "the two flows disagree on the (y1, x2)-marginal by " +
        std::to_string(dev));
  PivotMeasure zeta;
  zeta.atoms.reserve(m1.size());
  for (const auto& [k, m] : m1)
    if (m > 0.0) zeta.atoms.push_back({k[0], k[1], m});
  return zeta;
}

double pivot_functional(const PivotMeasure& zeta, const DiscreteMeasure2D& mu,
                        const DiscreteMeasure2D& nu, const SeparableCost& c,
                        SliceSolver slices) {
  check_intermedium(zeta, mu, nu);

  Disintegration mu_by_x2 = disintegrate(mu, 2);
  Disintegration nu_by_y1 = disintegrate(nu, 1);
  auto zeta_by_x2 = pivot_slices(zeta, 1);
  auto zeta_by_y1 = pivot_slices(zeta, 0);

  double total = 0.0;
  for (std::size_t i = 0; i < mu_by_x2.base.size(); ++i) {
    const Atom1D& b = mu_by_x2.base.atom(i);
    total += b.w * solve_slice(mu_by_x2.slices[i], zeta_by_x2.at(b.x), c.c1,
                               slices, nullptr);
  }
  for (std::size_t i = 0; i < nu_by_y1.base.size(); ++i) {
    const Atom1D& b = nu_by_y1.base.atom(i);
    total += b.w * solve_slice(zeta_by_y1.at(b.x), nu_by_y1.slices[i], c.c2,
                               slices, nullptr);
  }
  return total;
}

CardinalFlow flow_from_pivot(const PivotMeasure& zeta,
                             const DiscreteMeasure2D& mu,
                             const DiscreteMeasure2D& nu,
                             const SeparableCost& c, SliceSolver slices) {
  check_intermedium(zeta, mu, nu);

  Disintegration mu_by_x2 = disintegrate(mu, 2);
  Disintegration nu_by_y1 = disintegrate(nu, 1);
  auto zeta_by_x2 = pivot_slices(zeta, 1);
  auto zeta_by_y1 = pivot_slices(zeta, 0);

  CardinalFlow F;
  for (std::size_t i = 0; i < mu_by_x2.base.size(); ++i) {
    const Atom1D& b = mu_by_x2.base.atom(i);
    Plan1D plan;
    solve_slice(mu_by_x2.slices[i], zeta_by_x2.at(b.x), c.c1, slices, &plan);
    for (const PlanEntry1D& e : plan.entries)
      F.f1.push_back({e.src, b.x, e.dst, b.w * e.mass});
  }
  for (std::size_t i = 0; i < nu_by_y1.base.size(); ++i) {
    const Atom1D& b = nu_by_y1.base.atom(i);
    Plan1D plan;
    solve_slice(zeta_by_y1.at(b.x), nu_by_y1.slices[i], c.c2, slices, &plan);
    for (const PlanEntry1D& e : plan.entries)
      F.f2.push_back({e.src, b.x, e.dst, b.w * e.mass});
  }

  std::sort(F.f1.begin(), F.f1.end(), [](const FlowAtom1& a, const FlowAtom1& b) {
    return std::array{a.x1, a.x2, a.y1} < std::array{b.x1, b.x2, b.y1};
  });
  std::sort(F.f2.begin(), F.f2.end(), [](const FlowAtom2& a, const FlowAtom2& b) {
    return std::array{a.x2, a.y1, a.y2} < std::array{b.x2, b.y1, b.y2};
  });
  return F;
}

TransportPlan flow_to_plan(const CardinalFlow& F) {
  PivotMeasure zeta = pivot_of(F);  // throws GlueMismatch on invalid flows

  std::map<Key2, std::vector<std::pair<double, double>>> g1, g2;
  for (const FlowAtom1& a : F.f1)
    g1[{a.y1, a.x2}].emplace_back(a.x1, a.mass);
  for (const FlowAtom2& a : F.f2)
    g2[{a.y1, a.x2}].emplace_back(a.y2, a.mass);

  std::vector<std::pair<std::array<double, 4>, double>> raw;
  for (const PivotAtom& p : zeta.atoms) {
    const auto& left = g1.at({p.y1, p.x2});
    const auto& right = g2.at({p.y1, p.x2});
    for (const auto& [x1, m1] : left)
      for (const auto& [y2, m2] : right)
        raw.push_back({{x1, p.x2, p.y1, y2}, m1 * m2 / p.w});
  }
  TransportPlan pi;
  for (const auto& [k, m] : detail::accumulate_atoms<4>(raw))
    pi.entries.push_back({k[0], k[1], k[2], k[3], m});
  return pi;
}

FlowValidation validate_flow(const CardinalFlow& F,
                             const DiscreteMeasure2D& mu,
                             const DiscreteMeasure2D& nu) {
  FlowValidation report;

  std::map<Key2, double> proj_x, mu_map, proj_y, nu_map;
  for (const FlowAtom1& a : F.f1) proj_x[{a.x1, a.x2}] += a.mass;
  for (const Atom2D& a : mu.atoms()) mu_map[{a.x.x(), a.x.y()}] = a.w;
  for (const FlowAtom2& a : F.f2) proj_y[{a.y1, a.y2}] += a.mass;
  for (const Atom2D& a : nu.atoms()) nu_map[{a.x.x(), a.x.y()}] = a.w;

  report.source_marginal.max_deviation = map_deviation(proj_x, mu_map);
  report.source_marginal.pass = report.source_marginal.max_deviation <= kMassTol;
  report.target_marginal.max_deviation = map_deviation(proj_y, nu_map);
  report.target_marginal.pass = report.target_marginal.max_deviation <= kMassTol;
  report.glue.max_deviation = map_deviation(project2(F.f1), project2(F.f2));
  report.glue.pass = report.glue.max_deviation <= kMassTol;
  return report;
}

double max_flow_deviation(const CardinalFlow& a, const CardinalFlow& b) {
  std::map<Key3, double> a1, b1, a2, b2;
  for (const FlowAtom1& x : a.f1) a1[{x.x1, x.x2, x.y1}] += x.mass;
  for (const FlowAtom1& x : b.f1) b1[{x.x1, x.x2, x.y1}] += x.mass;
  for (const FlowAtom2& x : a.f2) a2[{x.x2, x.y1, x.y2}] += x.mass;
  for (const FlowAtom2& x : b.f2) b2[{x.x2, x.y1, x.y2}] += x.mass;
  return std::max(map_deviation(a1, b1), map_deviation(a2, b2));
}

}  // namespace cardot
