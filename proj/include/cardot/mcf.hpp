#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "cardot/cardinal.hpp"
#include "cardot/costs.hpp"
#include "cardot/measures.hpp"

namespace cardot::mcf {

struct Arc {
  int from;
  int to;
  double cost;
};

/// Tripartite uncapacitated min-cost-flow network whose feasible flows are
/// exactly the cardinal flows between mu and nu.
///
/// Node layout: sources [0, n_sources) are the atoms of mu with supply equal
/// to their weight; intermedium nodes follow, one per grid point of
/// supp(nu1) x supp(mu2), supply 0; sinks last, one per atom of nu with
/// demand equal to its weight. Layer-1 arcs join a mu atom (x1, x2) to every
/// (y1, x2) at cost c1(x1, y1); layer-2 arcs join (y1, x2) to every nu atom
/// (y1, y2) at cost c2(x2, y2).
struct FlowNetwork {
  int n_sources = 0;
  int n_inter = 0;
  int n_sinks = 0;
  int n_layer1 = 0;  // arcs[0, n_layer1) form layer 1

  std::vector<double> supply;  // signed; one entry per node
  std::vector<Arc> arcs;

  std::vector<Eigen::Vector2d> source_pos;
  std::vector<std::pair<double, double>> inter_pos;  // (y1, x2)
  std::vector<Eigen::Vector2d> sink_pos;

  int n_nodes() const { return n_sources + n_inter + n_sinks; }
};

FlowNetwork build_network(const DiscreteMeasure2D& mu,
                          const DiscreteMeasure2D& nu, const SeparableCost& c);

/// Minimum-cost arc flows plus the complementary-slackness certificate:
/// node potentials under which every arc has reduced cost >= -1e-9 and every
/// flow-carrying arc has reduced cost ~ 0.
struct SolveResult {
  std::vector<double> arc_flow;   // aligned with FlowNetwork::arcs
  std::vector<double> potential;  // one per network node
  double cost = 0.0;
  double min_reduced_cost = 0.0;
  double max_flow_arc_reduced_cost = 0.0;
  int augmentations = 0;
  // Augmentations whose bottleneck exhausted a source or sink; at most
  // n_sources + n_sinks. The remainder reroute mass over backward residual
  // arcs without exhausting anything.
  int saturating_augmentations = 0;

  double reduced_cost(const FlowNetwork& net, int arc) const {
    return net.arcs[arc].cost + potential[net.arcs[arc].from] -
           potential[net.arcs[arc].to];
  }
};

/// Successive shortest augmenting paths with node potentials; deterministic
/// (ties broken by node index). Throws Infeasible/NumericalBreakdown.
SolveResult solve(const FlowNetwork& net);

struct OptimalCardinalFlow {
  CardinalFlow flow;
  PivotMeasure pivot;
  double cost = 0.0;
  SolveResult solution;  // keeps the dual certificate available
};

OptimalCardinalFlow optimal_cardinal_flow(const DiscreteMeasure2D& mu,
                                          const DiscreteMeasure2D& nu,
                                          const SeparableCost& c);

/// Graphviz dump of the network (node layers + arc costs).
void dump_network_dot(const FlowNetwork& net, std::ostream& os);

}  // namespace cardot::mcf
