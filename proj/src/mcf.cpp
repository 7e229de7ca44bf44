#include "cardot/mcf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>

#include "cardot/onedim.hpp"

namespace cardot::mcf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFlowSnap = 1e-12;
constexpr double kDualTol = 1e-9;

// Residual edge; paired with its reverse at index id ^ 1.
struct Edge {
  int to;
  double cost;
  double cap;   // kInf on uncapacitated real arcs
  double flow;  // negative on reverse edges
  int arc;      // originating network arc, -1 for virtual arcs
};

struct Residual {
  std::vector<Edge> edges;
  std::vector<std::vector<int>> adj;

  void add(int from, int to, double cost, double cap, int arc) {
    adj[from].push_back(static_cast<int>(edges.size()));
    edges.push_back({to, cost, cap, 0.0, arc});
    adj[to].push_back(static_cast<int>(edges.size()));
    edges.push_back({from, -cost, 0.0, 0.0, arc});
  }

  double residual_cap(int e) const { return edges[e].cap - edges[e].flow; }
};

}  // namespace

FlowNetwork build_network(const DiscreteMeasure2D& mu,
                          const DiscreteMeasure2D& nu,
                          const SeparableCost& c) {
  FlowNetwork net;
  DiscreteMeasure1D nu1 = marginal(nu, 1);
  DiscreteMeasure1D mu2 = marginal(mu, 2);

  net.n_sources = static_cast<int>(mu.size());
  net.n_inter = static_cast<int>(nu1.size() * mu2.size());
  net.n_sinks = static_cast<int>(nu.size());
  net.supply.assign(net.n_nodes(), 0.0);

  for (const Atom2D& a : mu.atoms()) net.source_pos.push_back(a.x);
  // Intermedium grid in (y1, x2) row-major order, both axes ascending.
  for (const Atom1D& y1 : nu1.atoms())
    for (const Atom1D& x2 : mu2.atoms())
      net.inter_pos.emplace_back(y1.x, x2.x);
  for (const Atom2D& a : nu.atoms()) net.sink_pos.push_back(a.x);

  for (int i = 0; i < net.n_sources; ++i) net.supply[i] = mu.atom(i).w;
  for (int j = 0; j < net.n_sinks; ++j)
    net.supply[net.n_sources + net.n_inter + j] = -nu.atom(j).w;

  const int n_x2 = static_cast<int>(mu2.size());
  auto inter_index = [&](int iy1, int ix2) {
    return net.n_sources + iy1 * n_x2 + ix2;
  };
  auto x2_index = [&](double x2) {
    int k = 0;
    while (mu2.atom(k).x != x2) ++k;
    return k;
  };
  auto y1_index = [&](double y1) {
    int k = 0;
    while (nu1.atom(k).x != y1) ++k;
    return k;
  };

  // Layer 1: mu atom (x1, x2) -> (y1, x2), cost c1(x1, y1).
  for (int i = 0; i < net.n_sources; ++i) {
    const Atom2D& a = mu.atom(i);
    int ix2 = x2_index(a.x.y());
    for (int iy1 = 0; iy1 < static_cast<int>(nu1.size()); ++iy1)
      net.arcs.push_back({i, inter_index(iy1, ix2),
                          c.c1(a.x.x(), nu1.atom(iy1).x)});
  }
  net.n_layer1 = static_cast<int>(net.arcs.size());

  // Layer 2: (y1, x2) -> nu atom (y1, y2), cost c2(x2, y2).
  for (int j = 0; j < net.n_sinks; ++j) {
    const Atom2D& b = nu.atom(j);
    int iy1 = y1_index(b.x.x());
    for (int ix2 = 0; ix2 < n_x2; ++ix2)
      net.arcs.push_back({inter_index(iy1, ix2),
                          net.n_sources + net.n_inter + j,
                          c.c2(mu2.atom(ix2).x, b.x.y())});
  }
  return net;
}

SolveResult solve(const FlowNetwork& net) {
  const int n = net.n_nodes();
  const int s = n, t = n + 1;

  Residual g;
  g.adj.resize(n + 2);
  // Real arcs first, in network order, so edge 2k maps to arc k.
  for (std::size_t k = 0; k < net.arcs.size(); ++k)
    g.add(net.arcs[k].from, net.arcs[k].to, net.arcs[k].cost, kInf,
          static_cast<int>(k));
  std::vector<int> supply_edges;
  for (int v = 0; v < n; ++v) {
    if (net.supply[v] > 0.0) {
      supply_edges.push_back(static_cast<int>(g.edges.size()));
      g.add(s, v, 0.0, net.supply[v], -1);
    } else if (net.supply[v] < 0.0) {
      g.add(v, t, 0.0, -net.supply[v], -1);
    }
  }

  // Initial potentials: one label-correcting pass in topological order
  // (virtual source, sources, intermedium, sinks, virtual sink). All arc
  // costs are nonnegative, so this only tightens the start of Dijkstra.
  std::vector<double> pot(n + 2, kInf);
  pot[s] = 0.0;
  for (int v = 0; v < n; ++v)
    if (net.supply[v] > 0.0) pot[v] = 0.0;
  for (const Arc& a : net.arcs)
    if (pot[a.from] < kInf)
      pot[a.to] = std::min(pot[a.to], pot[a.from] + a.cost);
  pot[t] = 0.0;
  for (double& p : pot)
    if (p == kInf) p = 0.0;

  std::vector<double> dist(n + 2);
  std::vector<int> parent_edge(n + 2);
  SolveResult res;
  res.arc_flow.assign(net.arcs.size(), 0.0);

  auto remaining_supply = [&] {
    double r = 0.0;
    for (int e : supply_edges) r += g.residual_cap(e);
    return r;
  };

  double remaining = remaining_supply();
  while (remaining > 0.0) {
    // Dijkstra on reduced costs from the virtual source.
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent_edge.begin(), parent_edge.end(), -1);
    dist[s] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.push({0.0, s});
    std::vector<char> done(n + 2, 0);
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (done[v]) continue;
      done[v] = 1;
      for (int e : g.adj[v]) {
        if (g.residual_cap(e) <= 0.0) continue;
        double rc = g.edges[e].cost + pot[v] - pot[g.edges[e].to];
        if (rc < -kDualTol)
          throw NumericalBreakdown("reduced cost lost nonnegativity: " +
                                   std::to_string(rc));
        double nd = d + std::max(rc, 0.0);
        if (nd < dist[g.edges[e].to]) {
          dist[g.edges[e].to] = nd;
          parent_edge[g.edges[e].to] = e;
          heap.push({nd, g.edges[e].to});
        }
      }
    }

    if (dist[t] == kInf) {
      if (remaining > kMassTol)
        throw Infeasible("no augmenting path with " +
                         std::to_string(remaining) + " mass unrouted");
      break;  // only fp dust left
    }

    for (int v = 0; v < n + 2; ++v)
      pot[v] += std::min(dist[v], dist[t]);

    // Widest admissible augmentation along the shortest path.
    double delta = kInf;
    for (int v = t; v != s;) {
      int e = parent_edge[v];
      delta = std::min(delta, g.residual_cap(e));
      v = g.edges[e ^ 1].to;
    }
    bool exhausted_endpoint = false;
    for (int v = t; v != s;) {
      int e = parent_edge[v];
      // Forward edges carry even ids; keep the pair consistent through the
      // forward one.
      Edge& fwd = g.edges[e & ~1];
      Edge& rev = g.edges[e | 1];
      fwd.flow += (e % 2 == 0) ? delta : -delta;
      // Snap vanishing residuals so degeneracy cannot stall augmentation.
      if (fwd.cap < kInf && fwd.cap - fwd.flow < kFlowSnap) fwd.flow = fwd.cap;
      if (fwd.flow > 0.0 && fwd.flow < kFlowSnap) fwd.flow = 0.0;
      rev.flow = -fwd.flow;
      if (fwd.arc < 0 && fwd.flow == fwd.cap) exhausted_endpoint = true;
      v = g.edges[e ^ 1].to;
    }
    remaining = remaining_supply();
    ++res.augmentations;
    if (exhausted_endpoint) ++res.saturating_augmentations;
  }

  res.potential.assign(pot.begin(), pot.begin() + n);
  for (std::size_t k = 0; k < net.arcs.size(); ++k)
    res.arc_flow[k] = g.edges[2 * k].flow;

  res.cost = 0.0;
  res.min_reduced_cost = kInf;
  res.max_flow_arc_reduced_cost = 0.0;
  for (std::size_t k = 0; k < net.arcs.size(); ++k) {
    const Arc& a = net.arcs[k];
    double rc = a.cost + res.potential[a.from] - res.potential[a.to];
    res.min_reduced_cost = std::min(res.min_reduced_cost, rc);
    if (res.arc_flow[k] > 0.0) {
      res.cost += res.arc_flow[k] * a.cost;
      res.max_flow_arc_reduced_cost =
          std::max(res.max_flow_arc_reduced_cost, std::abs(rc));
    }
  }
  return res;
}

OptimalCardinalFlow optimal_cardinal_flow(const DiscreteMeasure2D& mu,
                                          const DiscreteMeasure2D& nu,
                                          const SeparableCost& c) {
  FlowNetwork net = build_network(mu, nu, c);
  OptimalCardinalFlow out;
  out.solution = solve(net);
  out.cost = out.solution.cost;

  std::vector<double> throughput(net.n_inter, 0.0);
  for (int k = 0; k < net.n_layer1; ++k) {
    double f = out.solution.arc_flow[k];
    if (f <= 0.0) continue;
    const Arc& a = net.arcs[k];
    const Eigen::Vector2d& src = net.source_pos[a.from];
    const auto& [y1, x2] = net.inter_pos[a.to - net.n_sources];
    out.flow.f1.push_back({src.x(), src.y(), y1, f});
    throughput[a.to - net.n_sources] += f;
  }
  for (std::size_t k = net.n_layer1; k < net.arcs.size(); ++k) {
    double f = out.solution.arc_flow[k];
    if (f <= 0.0) continue;
    const Arc& a = net.arcs[k];
    const auto& [y1, x2] = net.inter_pos[a.from - net.n_sources];
    const Eigen::Vector2d& dst =
        net.sink_pos[a.to - net.n_sources - net.n_inter];
    out.flow.f2.push_back({x2, y1, dst.y(), f});
  }
  for (int v = 0; v < net.n_inter; ++v)
    if (throughput[v] > 0.0)
      out.pivot.atoms.push_back(
          {net.inter_pos[v].first, net.inter_pos[v].second, throughput[v]});

  std::sort(out.flow.f1.begin(), out.flow.f1.end(),
            [](const FlowAtom1& a, const FlowAtom1& b) {
              return std::array{a.x1, a.x2, a.y1} < std::array{b.x1, b.x2, b.y1};
            });
  std::sort(out.flow.f2.begin(), out.flow.f2.end(),
            [](const FlowAtom2& a, const FlowAtom2& b) {
              return std::array{a.x2, a.y1, a.y2} < std::array{b.x2, b.y1, b.y2};
            });
  std::sort(out.pivot.atoms.begin(), out.pivot.atoms.end(),
            [](const PivotAtom& a, const PivotAtom& b) {
              return std::pair{a.y1, a.x2} < std::pair{b.y1, b.x2};
            });
  return out;
}

void dump_network_dot(const FlowNetwork& net, std::ostream& os) {
  os << "digraph cardinal_flow_network {\n  rankdir=LR;\n";
  for (int i = 0; i < net.n_sources; ++i)
    os << "  s" << i << " [label=\"mu(" << net.source_pos[i].x() << ","
       << net.source_pos[i].y() << ")\\n+" << net.supply[i]
       << "\", shape=circle];\n";
  for (int v = 0; v < net.n_inter; ++v)
    os << "  m" << v << " [label=\"(" << net.inter_pos[v].first << ","
       << net.inter_pos[v].second << ")\", shape=triangle];\n";
  for (int j = 0; j < net.n_sinks; ++j)
    os << "  t" << j << " [label=\"nu(" << net.sink_pos[j].x() << ","
       << net.sink_pos[j].y() << ")\\n"
       << net.supply[net.n_sources + net.n_inter + j]
       << "\", shape=doublecircle];\n";
  auto name = [&](int v) {
    if (v < net.n_sources) return "s" + std::to_string(v);
    if (v < net.n_sources + net.n_inter)
      return "m" + std::to_string(v - net.n_sources);
    return "t" + std::to_string(v - net.n_sources - net.n_inter);
  };
  for (const Arc& a : net.arcs)
    os << "  " << name(a.from) << " -> " << name(a.to) << " [label=\""
       << a.cost << "\"];\n";
  os << "}\n";
}

}  // namespace cardot::mcf
