#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "cardot/cardinal.hpp"
#include "cardot/costs.hpp"
#include "cardot/measures.hpp"
#include "cardot/onedim.hpp"

namespace cardot::oracle {

/// Dense statement of the bipartite transportation problem between the
/// atoms of mu and nu: cost(i, j) = c(x_i, y_j).
struct BipartiteInstance {
  std::vector<Eigen::Vector2d> sources;
  std::vector<Eigen::Vector2d> sinks;
  Eigen::VectorXd supply;
  Eigen::VectorXd demand;
  Eigen::MatrixXd cost;
};

BipartiteInstance make_instance(const DiscreteMeasure2D& mu,
                                const DiscreteMeasure2D& nu,
                                const SeparableCost& c);

/// Optimal vertex of a transportation polytope, found by northwest-corner
/// initialization plus MODI (u-v potential) pivoting with Bland's rule.
/// Degeneracy is handled by a 1e-13 epsilon perturbation of the supplies;
/// the reported plan is re-solved on the optimal basis with the exact data.
struct TableauSolution {
  Eigen::MatrixXd plan;
  Eigen::VectorXd row_potential;
  Eigen::VectorXd col_potential;
  double cost = 0.0;
};

TableauSolution transport_simplex(const Eigen::VectorXd& supply,
                                  const Eigen::VectorXd& demand,
                                  const Eigen::MatrixXd& cost);

struct PlanResult {
  TransportPlan plan;
  double cost = 0.0;
};

/// Ground-truth Wasserstein cost on the full bipartite support.
/// Guard: |supp mu| * |supp nu| <= 10000, else TooLarge.
PlanResult brute_force_wc(const DiscreteMeasure2D& mu,
                          const DiscreteMeasure2D& nu, const SeparableCost& c);

struct Plan1DResult {
  Plan1D plan;
  double cost = 0.0;
};

/// 1D ground truth on the dense bipartite tableau; shares no code with the
/// quantile-merge path it is used to check.
Plan1DResult brute_force_w1d(const DiscreteMeasure1D& mu,
                             const DiscreteMeasure1D& nu,
                             const ConvexRadialCost& c);

/// A random element of the intermedium set I(mu, nu): a coupling of nu1 and
/// mu2 sampled as a northwest-corner vertex under seeded row/column
/// shuffles. Deterministic in the seed.
PivotMeasure random_intermedium(const DiscreteMeasure2D& mu,
                                const DiscreteMeasure2D& nu, std::uint64_t seed);

}  // namespace cardot::oracle
