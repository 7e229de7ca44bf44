#include "cardot/onedim.hpp"

#include <algorithm>
#include <cmath>

namespace cardot {

DiscreteMeasure1D Plan1D::source_marginal() const {
  std::vector<Atom1D> atoms;
  atoms.reserve(entries.size());
  for (const PlanEntry1D& e : entries) atoms.push_back({e.src, e.mass});
  return DiscreteMeasure1D(std::move(atoms));
}

DiscreteMeasure1D Plan1D::target_marginal() const {
  std::vector<Atom1D> atoms;
  atoms.reserve(entries.size());
  for (const PlanEntry1D& e : entries) atoms.push_back({e.dst, e.mass});
  return DiscreteMeasure1D(std::move(atoms));
}

double cdf(const DiscreteMeasure1D& m, double t) {
  const auto& atoms = m.atoms();
  auto it = std::upper_bound(
      atoms.begin(), atoms.end(), t,
      [](double v, const Atom1D& a) { return v < a.x; });
  if (it == atoms.begin()) return 0.0;
  return m.cumulative()[static_cast<std::size_t>(it - atoms.begin()) - 1];
}

double quantile(const DiscreteMeasure1D& m, double s) {
  if (!(s > 0.0) || s > 1.0)
    throw DomainError("quantile argument must lie in (0, 1]");
  const auto& cum = m.cumulative();
  auto it = std::lower_bound(cum.begin(), cum.end(), s);
  if (it == cum.end()) --it;  // s <= 1 but cum.back() may be 1 - eps
  return m.atom(static_cast<std::size_t>(it - cum.begin())).x;
}

Plan1D comonotone_plan(const DiscreteMeasure1D& mu,
                       const DiscreteMeasure1D& nu) {
  const auto& ca = mu.cumulative();
  const auto& cb = nu.cumulative();
  Plan1D plan;
  plan.entries.reserve(mu.size() + nu.size());
  std::size_t i = 0, j = 0;
  double prev = 0.0;
  while (i < mu.size() && j < nu.size()) {
    double next = std::min(ca[i], cb[j]);
    double mass = next - prev;
    if (mass > 0.0)
      plan.entries.push_back({mu.atom(i).x, nu.atom(j).x, mass});
    if (ca[i] == next) ++i;
    if (cb[j] == next) ++j;
    prev = next;
  }
  return plan;
}

double plan_cost(const Plan1D& plan, const ConvexRadialCost& c) {
  double total = 0.0;
  for (const PlanEntry1D& e : plan.entries) total += e.mass * c(e.src, e.dst);
  return total;
}

double w_1d(const DiscreteMeasure1D& mu, const DiscreteMeasure1D& nu,
            const ConvexRadialCost& c) {
  return plan_cost(comonotone_plan(mu, nu), c);
}

double w1_cdf(const DiscreteMeasure1D& mu, const DiscreteMeasure1D& nu) {
  std::vector<double> grid;
  grid.reserve(mu.size() + nu.size());
  for (const Atom1D& a : mu.atoms()) grid.push_back(a.x);
  for (const Atom1D& a : nu.atoms()) grid.push_back(a.x);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  // Both CDFs are constant between consecutive breakpoints.
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k)
    total += std::abs(cdf(mu, grid[k]) - cdf(nu, grid[k])) *
             (grid[k + 1] - grid[k]);
  return total;
}

}  // namespace cardot
