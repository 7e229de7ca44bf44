#pragma once

#include <Eigen/Dense>
#include <optional>

#include "cardot/cardinal.hpp"
#include "cardot/costs.hpp"
#include "cardot/measures.hpp"

namespace cardot {

/// The line { a*x1 + b*x2 = q }, normalized so a^2 + b^2 = 1 and the first
/// nonzero of (a, b) is positive.
struct LineSpec {
  double a, b, q;

  LineSpec(double a, double b, double q);

  double incidence(const Eigen::Vector2d& p) const {
    return a * p.x() + b * p.y() - q;
  }
  /// The rotation mapping {x2 = 0} onto the line direction: e1 -> (b, -a).
  Eigen::Matrix2d rotation() const;
  /// A point on the line, q * (a, b).
  Eigen::Vector2d anchor() const { return {q * a, q * b}; }
};

/// Closed-form pivot of the degenerate cases: if mu2 is a Dirac at x2bar the
/// pivot is nu1 x delta_{x2bar}; if nu1 is a Dirac at y1bar it is
/// delta_{y1bar} x mu2; nullopt when neither marginal degenerates.
std::optional<PivotMeasure> degenerate_pivot(const DiscreteMeasure2D& mu,
                                             const DiscreteMeasure2D& nu);

struct LineFlowResult {
  CardinalFlow flow;
  double cost = 0.0;
};

/// Closed-form optimal cardinal flow for mu supported exactly on {x2 = 0}:
/// f1 is the co-monotone plan mu1 -> nu1 lifted with x2 = 0, f2 sends
/// delta_0 to nu|y1 per y1, and the cost is
/// W_c1(mu1, nu1) + sum_y1 nu1(y1) W_c2(delta_0, nu|y1).
/// Throws NotOnLine when a mu atom has x2 != 0.
LineFlowResult line_flow(const DiscreteMeasure2D& mu,
                         const DiscreteMeasure2D& nu, const SeparableCost& c);

struct LinePlanResult {
  TransportPlan plan;
  double cost = 0.0;
};

/// Squared-Euclidean transport for mu supported on an arbitrary line, by
/// rotating the line onto {x2 = 0}, solving there, and mapping the plan back
/// onto the original atoms. Line membership tolerance 1e-9 after
/// normalization. The cost is implicitly 2:2 — other exponents are not
/// rotation invariant and are refused.
LinePlanResult line_flow_general(const DiscreteMeasure2D& mu,
                                 const LineSpec& line,
                                 const DiscreteMeasure2D& nu);

}  // namespace cardot
