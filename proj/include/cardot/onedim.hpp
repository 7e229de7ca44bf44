#pragma once

#include <vector>

#include "cardot/costs.hpp"
#include "cardot/measures.hpp"

namespace cardot {

struct PlanEntry1D {
  double src;
  double dst;
  double mass;
};

/// Sparse 1D coupling. Entries of plans produced here are sorted by
/// (src, dst) and carry positive mass; row sums reproduce the source and
/// column sums the target measure.
struct Plan1D {
  std::vector<PlanEntry1D> entries;

  DiscreteMeasure1D source_marginal() const;
  DiscreteMeasure1D target_marginal() const;
};

/// Right-continuous CDF value F_m(t) = sum of weights at positions <= t.
double cdf(const DiscreteMeasure1D& m, double t);

/// Pseudo-inverse CDF F^[-1](s) = inf{ t : F(t) >= s } for s in (0, 1].
/// Throws DomainError outside that range.
double quantile(const DiscreteMeasure1D& m, double s);

/// The co-monotone coupling: pairs cumulative mass of mu and nu by a
/// two-pointer merge over the sorted atoms. Exact cumulative ties advance
/// both sides; zero-mass entries are never emitted. At most
/// |supp mu| + |supp nu| - 1 entries.
Plan1D comonotone_plan(const DiscreteMeasure1D& mu,
                       const DiscreteMeasure1D& nu);

double plan_cost(const Plan1D& plan, const ConvexRadialCost& c);

/// Optimal 1D transport cost for a convex radial cost, evaluated exactly as
/// the cost of the co-monotone plan.
double w_1d(const DiscreteMeasure1D& mu, const DiscreteMeasure1D& nu,
            const ConvexRadialCost& c);

/// W_1 as the exact integral of |F_mu - F_nu| over the merged breakpoint
/// partition. Equals w_1d with the p=1 cost.
double w1_cdf(const DiscreteMeasure1D& mu, const DiscreteMeasure1D& nu);

}  // namespace cardot
