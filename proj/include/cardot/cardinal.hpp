#pragma once

#include <array>
#include <map>
#include <vector>

#include "cardot/costs.hpp"
#include "cardot/measures.hpp"
#include "cardot/onedim.hpp"

namespace cardot {

/// Atom of the first cardinal flow: mass sitting at (x1, x2) moves its first
/// coordinate to y1.
struct FlowAtom1 {
  double x1, x2, y1;
  double mass;
};

/// Atom of the second cardinal flow: mass at second coordinate x2, already
/// moved to first coordinate y1, moves its second coordinate to y2.
struct FlowAtom2 {
  double x2, y1, y2;
  double mass;
};

/// A pair of sparse measures decomposing transport into a horizontal move
/// (f1, costed by c1) followed by a vertical move (f2, costed by c2).
/// Valid flows satisfy: X-marginal of f1 equals mu, Y-marginal of f2 equals
/// nu, and both share the same (y1, x2)-marginal.
struct CardinalFlow {
  std::vector<FlowAtom1> f1;
  std::vector<FlowAtom2> f2;
};

struct PivotAtom {
  double y1, x2;
  double w;
};

/// Sparse measure on Y1 x X2: the shared marginal a cardinal flow glues on.
/// As an intermedium measure its X2-marginal is mu_2 and its Y1-marginal
/// is nu_1.
struct PivotMeasure {
  std::vector<PivotAtom> atoms;

  DiscreteMeasure1D y1_marginal() const;
  DiscreteMeasure1D x2_marginal() const;
  /// The atoms embedded as points of the common 2D space: atom (y1, x2)
  /// becomes the point with first coordinate y1 and second coordinate x2.
  DiscreteMeasure2D as_measure_2d() const;
};

struct PlanAtom {
  double x1, x2, y1, y2;
  double mass;
};

/// Sparse coupling on (X1 x X2) x (Y1 x Y2).
struct TransportPlan {
  std::vector<PlanAtom> entries;

  DiscreteMeasure2D source_marginal() const;
  DiscreteMeasure2D target_marginal() const;
};

/// Which 1D solver handles the per-slice problems inside pivot_functional
/// and flow_from_pivot. Comonotone is exact for convex radial costs;
/// BruteForce routes slices through the LP oracle instead, for custom costs
/// whose convexity is doubted.
enum class SliceSolver { Comonotone, BruteForce };

double plan_cost(const TransportPlan& pi, const SeparableCost& c);

/// Total cardinal flow cost: sum of c1 over f1 plus c2 over f2.
double flow_cost(const CardinalFlow& F, const SeparableCost& c);

/// The plan-to-flow operator: f1 and f2 are the projections of pi onto
/// X x Y1 and X2 x Y. Separability makes flow_cost(plan_to_flow(pi), c)
/// equal plan_cost(pi, c) exactly.
CardinalFlow plan_to_flow(const TransportPlan& pi);

/// The common (Y1 x X2)-marginal of the two flows. Throws GlueMismatch when
/// the marginals disagree beyond kMassTol on any atom.
PivotMeasure pivot_of(const CardinalFlow& F);

/// Pivoting functional
///   Z_c(zeta) = sum_x2 mu2(x2) W_c1(mu|x2, zeta|x2)
///             + sum_y1 nu1(y1) W_c2(zeta|y1, nu|y1),
/// slice problems solved in 1D. Z_c dominates W_c on intermedium measures,
/// with equality exactly at pivot measures. Throws NotIntermedium when the
/// marginals of zeta are not (nu1, mu2).
double pivot_functional(const PivotMeasure& zeta, const DiscreteMeasure2D& mu,
                        const DiscreteMeasure2D& nu, const SeparableCost& c,
                        SliceSolver slices = SliceSolver::Comonotone);

/// Builds the cardinal flow gluing on zeta out of optimal 1D slice plans:
/// f1 stacks mu2(x2)-weighted plans mu|x2 -> zeta|x2, f2 stacks
/// nu1(y1)-weighted plans zeta|y1 -> nu|y1. Its cost equals
/// pivot_functional(zeta, ...).
CardinalFlow flow_from_pivot(const PivotMeasure& zeta,
                             const DiscreteMeasure2D& mu,
                             const DiscreteMeasure2D& nu,
                             const SeparableCost& c,
                             SliceSolver slices = SliceSolver::Comonotone);

/// Conditional gluing: for each pivot atom (y1, x2, w), couples the
/// conditional law of f1 and of f2 given (x2, y1) by their independent
/// product, scaled by w. The result is the canonical plan inducing F: the
/// unique one whose (x2, y1)-conditional coupling blocks are rank one.
TransportPlan flow_to_plan(const CardinalFlow& F);

struct ConditionCheck {
  bool pass = false;
  double max_deviation = 0.0;
};

/// Diagnostic report of the three cardinal-flow conditions.
struct FlowValidation {
  ConditionCheck source_marginal;  // X-marginal of f1 vs mu
  ConditionCheck target_marginal;  // Y-marginal of f2 vs nu
  ConditionCheck glue;             // shared (y1, x2)-marginal agreement

  bool ok() const {
    return source_marginal.pass && target_marginal.pass && glue.pass;
  }
};

FlowValidation validate_flow(const CardinalFlow& F, const DiscreteMeasure2D& mu,
                             const DiscreteMeasure2D& nu);

/// Largest atom-wise mass difference between two flows (exact coordinate
/// matching on both components).
double max_flow_deviation(const CardinalFlow& a, const CardinalFlow& b);

namespace detail {

/// Accumulates (key, mass) pairs, merging equal keys, and returns the pairs
/// sorted by key with zero-mass entries dropped.
template <std::size_t N>
std::vector<std::pair<std::array<double, N>, double>> accumulate_atoms(
    const std::vector<std::pair<std::array<double, N>, double>>& raw) {
  std::map<std::array<double, N>, double> acc;
  for (const auto& [key, mass] : raw) acc[key] += mass;
  std::vector<std::pair<std::array<double, N>, double>> out;
  out.reserve(acc.size());
  for (const auto& [key, mass] : acc)
    if (mass != 0.0) out.emplace_back(key, mass);
  return out;
}

}  // namespace detail

}  // namespace cardot
