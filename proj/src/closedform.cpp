#include "cardot/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cardot/onedim.hpp"

namespace cardot {

namespace {

constexpr double kLineTol = 1e-9;

}  // namespace

LineSpec::LineSpec(double a_, double b_, double q_) : a(a_), b(b_), q(q_) {
  double norm = std::hypot(a, b);
  if (norm == 0.0) throw DomainError("line spec requires (a, b) != (0, 0)");
  a /= norm;
  b /= norm;
  q /= norm;
  bool flip = a < 0.0 || (a == 0.0 && b < 0.0);
  if (flip) {
    a = -a;
    b = -b;
    q = -q;
  }
  if (a == 0.0) a = 0.0;  // normalize -0.0
  if (b == 0.0) b = 0.0;
  if (q == 0.0) q = 0.0;
}

Eigen::Matrix2d LineSpec::rotation() const {
  Eigen::Matrix2d O;
  O << b, a, -a, b;  // columns: line direction (b, -a), normal (a, b)
  return O;
}

std::optional<PivotMeasure> degenerate_pivot(const DiscreteMeasure2D& mu,
                                             const DiscreteMeasure2D& nu) {
  DiscreteMeasure1D mu2 = marginal(mu, 2);
  DiscreteMeasure1D nu1 = marginal(nu, 1);
  PivotMeasure zeta;
  if (mu2.size() == 1) {
    double x2bar = mu2.atom(0).x;
    for (const Atom1D& a : nu1.atoms()) zeta.atoms.push_back({a.x, x2bar, a.w});
    return zeta;
  }
  if (nu1.size() == 1) {
    double y1bar = nu1.atom(0).x;
    for (const Atom1D& a : mu2.atoms()) zeta.atoms.push_back({y1bar, a.x, a.w});
    return zeta;
  }
  return std::nullopt;
}

LineFlowResult line_flow(const DiscreteMeasure2D& mu,
                         const DiscreteMeasure2D& nu, const SeparableCost& c) {
  for (const Atom2D& a : mu.atoms())
    if (a.x.y() != 0.0)
      throw NotOnLine("mu atom at x2 = " + std::to_string(a.x.y()) +
                      " is off the line {x2 = 0}");

  DiscreteMeasure1D mu1 = marginal(mu, 1);
  DiscreteMeasure1D nu1 = marginal(nu, 1);

  LineFlowResult out;
  Plan1D horizontal = comonotone_plan(mu1, nu1);
  for (const PlanEntry1D& e : horizontal.entries)
    out.flow.f1.push_back({e.src, 0.0, e.dst, e.mass});
  // The pivot is nu1 x delta_0, so f2 moves mass from x2 = 0 straight to
  // each nu atom within its y1 column.
  for (const Atom2D& a : nu.atoms())
    out.flow.f2.push_back({0.0, a.x.x(), a.x.y(), a.w});

  out.cost = plan_cost(horizontal, c.c1);
  for (const Atom2D& a : nu.atoms()) out.cost += a.w * c.c2(0.0, a.x.y());
  return out;
}

LinePlanResult line_flow_general(const DiscreteMeasure2D& mu,
                                 const LineSpec& line,
                                 const DiscreteMeasure2D& nu) {
  for (const Atom2D& a : mu.atoms())
    if (std::abs(line.incidence(a.x)) > kLineTol)
      throw NotOnLine("mu atom off the line by " +
                      std::to_string(line.incidence(a.x)));

  const Eigen::Matrix2d O = line.rotation();
  const Eigen::Vector2d p0 = line.anchor();

  // Rotate into the frame where the line is {x2 = 0}. Original atoms are
  // recovered through their rotated coordinates, so the returned plan is
  // built from input coordinates only.
  using Key = std::pair<double, double>;
  std::map<Key, std::vector<std::size_t>> mu_groups, nu_groups;
  std::vector<Eigen::Vector2d> mu_pts, nu_pts;
  std::vector<double> mu_w, nu_w;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    Eigen::Vector2d p = O.transpose() * (mu.atom(i).x - p0);
    p.y() = 0.0;  // incidence already checked; pin exactly onto the line
    mu_groups[{p.x(), p.y()}].push_back(i);
    mu_pts.push_back(p);
    mu_w.push_back(mu.atom(i).w);
  }
  for (std::size_t j = 0; j < nu.size(); ++j) {
    Eigen::Vector2d p = O.transpose() * (nu.atom(j).x - p0);
    nu_groups[{p.x(), p.y()}].push_back(j);
    nu_pts.push_back(p);
    nu_w.push_back(nu.atom(j).w);
  }

  DiscreteMeasure2D mu_rot = make_measure_2d(mu_pts, mu_w);
  DiscreteMeasure2D nu_rot = make_measure_2d(nu_pts, nu_w);

  SeparableCost sq = power_cost(2.0, 2.0);
  LineFlowResult flat = line_flow(mu_rot, nu_rot, sq);
  TransportPlan rotated = flow_to_plan(flat.flow);

  // Map each rotated entry back to the original atoms; atoms that collided
  // under the rotation split the entry mass weight-proportionally.
  LinePlanResult out;
  std::vector<std::pair<std::array<double, 4>, double>> raw;
  for (const PlanAtom& e : rotated.entries) {
    const auto& sources = mu_groups.at({e.x1, e.x2});
    const auto& targets = nu_groups.at({e.y1, e.y2});
    double src_total = 0.0, dst_total = 0.0;
    for (std::size_t i : sources) src_total += mu_w[i];
    for (std::size_t j : targets) dst_total += nu_w[j];
    for (std::size_t i : sources)
      for (std::size_t j : targets) {
        const Eigen::Vector2d& x = mu.atom(i).x;
        const Eigen::Vector2d& y = nu.atom(j).x;
        raw.push_back({{x.x(), x.y(), y.x(), y.y()},
                       e.mass * (mu_w[i] / src_total) * (nu_w[j] / dst_total)});
      }
  }
  for (const auto& [k, m] : detail::accumulate_atoms<4>(raw))
    out.plan.entries.push_back({k[0], k[1], k[2], k[3], m});
  out.cost = plan_cost(out.plan, sq);
  return out;
}

}  // namespace cardot
