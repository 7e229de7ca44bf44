#include "cardot/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace cardot::oracle {

namespace {

constexpr double kPerturb = 1e-13;
constexpr double kReducedCostTol = 1e-12;

struct Basis {
  // Spanning tree over m row nodes and n column nodes; edges are cells.
  std::vector<std::pair<int, int>> cells;
  int m = 0, n = 0;

  int nodes() const { return m + n; }
  static int col_node(int m, int j) { return m + j; }
};

// Adjacency of the basis tree: node -> list of (other endpoint, cell idx).
std::vector<std::vector<std::pair<int, int>>> adjacency(const Basis& b) {
  std::vector<std::vector<std::pair<int, int>>> adj(b.nodes());
  for (int k = 0; k < static_cast<int>(b.cells.size()); ++k) {
    auto [i, j] = b.cells[k];
    adj[i].push_back({Basis::col_node(b.m, j), k});
    adj[Basis::col_node(b.m, j)].push_back({i, k});
  }
  return adj;
}

// u_i + v_j = C(i, j) on basic cells, anchored at u_0 = 0.
void compute_duals(const Basis& b, const Eigen::MatrixXd& C,
                   Eigen::VectorXd& u, Eigen::VectorXd& v) {
  auto adj = adjacency(b);
  std::vector<char> seen(b.nodes(), 0);
  std::vector<int> stack{0};
  u.setZero(b.m);
  v.setZero(b.n);
  seen[0] = 1;
  while (!stack.empty()) {
    int node = stack.back();
    stack.pop_back();
    for (auto [other, k] : adj[node]) {
      if (seen[other]) continue;
      seen[other] = 1;
      auto [i, j] = b.cells[k];
      if (other >= b.m)
        v[j] = C(i, j) - u[i];
      else
        u[i] = C(i, j) - v[j];
      stack.push_back(other);
    }
  }
}

// Tree path between two nodes as a list of cell indices.
std::vector<int> tree_path(const Basis& b, int from, int to) {
  auto adj = adjacency(b);
  std::vector<int> parent_edge(b.nodes(), -1), parent(b.nodes(), -1);
  std::vector<char> seen(b.nodes(), 0);
  std::vector<int> queue{from};
  seen[from] = 1;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    int node = queue[q];
    if (node == to) break;
    for (auto [other, k] : adj[node]) {
      if (seen[other]) continue;
      seen[other] = 1;
      parent[other] = node;
      parent_edge[other] = k;
      queue.push_back(other);
    }
  }
  std::vector<int> path;
  for (int node = to; node != from; node = parent[node])
    path.push_back(parent_edge[node]);
  std::reverse(path.begin(), path.end());
  return path;
}

// Northwest-corner initial basis: exactly m + n - 1 cells.
Basis northwest_corner(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                       Eigen::MatrixXd& X) {
  int m = static_cast<int>(a.size()), n = static_cast<int>(b.size());
  Basis basis;
  basis.m = m;
  basis.n = n;
  X.setZero(m, n);
  int i = 0, j = 0;
  double ra = a[0], rb = b[0];
  while (true) {
    double t = std::min(ra, rb);
    X(i, j) = t;
    basis.cells.push_back({i, j});
    ra -= t;
    rb -= t;
    if (i == m - 1 && j == n - 1) break;
    if (ra <= rb && i < m - 1) {
      ++i;
      ra = a[i];
    } else {
      ++j;
      rb = b[j];
    }
  }
  return basis;
}

// Unique flows on the basis tree for the given supplies/demands, by leaf
// stripping. Exact conservation by construction.
Eigen::MatrixXd tree_flows(const Basis& b, const Eigen::VectorXd& a,
                           const Eigen::VectorXd& d) {
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(b.m, b.n);
  auto adj = adjacency(b);
  std::vector<int> degree(b.nodes());
  std::vector<double> residual(b.nodes());
  for (int i = 0; i < b.m; ++i) residual[i] = a[i];
  for (int j = 0; j < b.n; ++j) residual[b.m + j] = d[j];
  for (int node = 0; node < b.nodes(); ++node)
    degree[node] = static_cast<int>(adj[node].size());
  std::vector<char> cell_done(b.cells.size(), 0);
  std::vector<int> leaves;
  for (int node = 0; node < b.nodes(); ++node)
    if (degree[node] == 1) leaves.push_back(node);
  for (std::size_t q = 0; q < leaves.size(); ++q) {
    int node = leaves[q];
    int edge = -1, other = -1;
    for (auto [o, k] : adj[node]) {
      if (!cell_done[k]) {
        edge = k;
        other = o;
        break;
      }
    }
    if (edge < 0) continue;  // the final root has no pending edge
    auto [i, j] = b.cells[edge];
    X(i, j) = residual[node];
    residual[other] -= residual[node];
    residual[node] = 0.0;
    cell_done[edge] = 1;
    if (--degree[other] == 1) leaves.push_back(other);
    degree[node] = 0;
  }
  return X;
}

}  // namespace

TableauSolution transport_simplex(const Eigen::VectorXd& supply,
                                  const Eigen::VectorXd& demand,
                                  const Eigen::MatrixXd& cost) {
  const int m = static_cast<int>(supply.size());
  const int n = static_cast<int>(demand.size());
  if (m == 0 || n == 0) throw EmptyMeasure("transportation tableau is empty");
  if (cost.rows() != m || cost.cols() != n)
    throw LengthMismatch("cost matrix shape does not match supplies/demands");

  // Perturbed data keep the northwest-corner basis nondegenerate.
  Eigen::VectorXd a = supply.array() + kPerturb;
  Eigen::VectorXd d = demand;
  d[n - 1] += m * kPerturb;

  Eigen::MatrixXd X;
  Basis basis = northwest_corner(a, d, X);
  Eigen::VectorXd u(m), v(n);

  const long max_pivots = 2000L * (m + n) * (m + n) + 10000L;
  for (long pivot = 0;; ++pivot) {
    if (pivot > max_pivots)
      throw NumericalBreakdown("transportation simplex failed to terminate");
    compute_duals(basis, cost, u, v);

    // Entering cell: Bland's rule, first negative reduced cost in row-major
    // order.
    int ei = -1, ej = -1;
    for (int i = 0; i < m && ei < 0; ++i)
      for (int j = 0; j < n; ++j)
        if (cost(i, j) - u[i] - v[j] < -kReducedCostTol) {
          ei = i;
          ej = j;
          break;
        }
    if (ei < 0) break;  // optimal

    std::vector<int> path = tree_path(basis, ei, Basis::col_node(m, ej));
    // Signs along the cycle: entering +, then alternating - / + along the
    // tree path starting from the entering row.
    double theta = std::numeric_limits<double>::infinity();
    int leaving = -1;
    for (std::size_t s = 0; s < path.size(); ++s) {
      if (s % 2 == 1) continue;  // only '-' edges limit theta
      auto [i, j] = basis.cells[path[s]];
      bool better =
          leaving < 0 || X(i, j) < theta ||
          (X(i, j) == theta &&
           std::pair{i, j} < std::pair{basis.cells[leaving].first,
                                       basis.cells[leaving].second});
      if (better) {
        leaving = path[s];
        theta = X(i, j);
      }
    }
    X(ei, ej) += theta;
    for (std::size_t s = 0; s < path.size(); ++s) {
      auto [i, j] = basis.cells[path[s]];
      X(i, j) += (s % 2 == 0) ? -theta : theta;
    }
    basis.cells[leaving] = {ei, ej};
  }

  TableauSolution out;
  out.plan = tree_flows(basis, supply, demand);
  double worst = out.plan.minCoeff();
  if (worst < -1e-8)
    throw NumericalBreakdown("exact re-solve left negative mass " +
                             std::to_string(worst));
  out.plan = out.plan.cwiseMax(0.0);
  out.row_potential = u;
  out.col_potential = v;
  out.cost = (out.plan.array() * cost.array()).sum();
  return out;
}

BipartiteInstance make_instance(const DiscreteMeasure2D& mu,
                                const DiscreteMeasure2D& nu,
                                const SeparableCost& c) {
  BipartiteInstance inst;
  const int m = static_cast<int>(mu.size()), n = static_cast<int>(nu.size());
  inst.supply.resize(m);
  inst.demand.resize(n);
  inst.cost.resize(m, n);
  for (int i = 0; i < m; ++i) {
    inst.sources.push_back(mu.atom(i).x);
    inst.supply[i] = mu.atom(i).w;
  }
  for (int j = 0; j < n; ++j) {
    inst.sinks.push_back(nu.atom(j).x);
    inst.demand[j] = nu.atom(j).w;
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      inst.cost(i, j) = c(inst.sources[i], inst.sinks[j]);
  return inst;
}

PlanResult brute_force_wc(const DiscreteMeasure2D& mu,
                          const DiscreteMeasure2D& nu,
                          const SeparableCost& c) {
  if (mu.size() * nu.size() > 10000)
    throw TooLarge("bipartite instance exceeds the 10000-cell guard");
  BipartiteInstance inst = make_instance(mu, nu, c);
  TableauSolution sol = transport_simplex(inst.supply, inst.demand, inst.cost);

  PlanResult out;
  out.cost = sol.cost;
  for (int i = 0; i < sol.plan.rows(); ++i)
    for (int j = 0; j < sol.plan.cols(); ++j)
      if (sol.plan(i, j) > 0.0)
        out.plan.entries.push_back({inst.sources[i].x(), inst.sources[i].y(),
                                    inst.sinks[j].x(), inst.sinks[j].y(),
                                    sol.plan(i, j)});
  return out;
}

Plan1DResult brute_force_w1d(const DiscreteMeasure1D& mu,
                             const DiscreteMeasure1D& nu,
                             const ConvexRadialCost& c) {
  if (mu.size() * nu.size() > 10000)
    throw TooLarge("bipartite instance exceeds the 10000-cell guard");
  const int m = static_cast<int>(mu.size()), n = static_cast<int>(nu.size());
  Eigen::VectorXd a(m), d(n);
  Eigen::MatrixXd C(m, n);
  for (int i = 0; i < m; ++i) a[i] = mu.atom(i).w;
  for (int j = 0; j < n; ++j) d[j] = nu.atom(j).w;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) C(i, j) = c(mu.atom(i).x, nu.atom(j).x);
  TableauSolution sol = transport_simplex(a, d, C);

  Plan1DResult out;
  out.cost = sol.cost;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (sol.plan(i, j) > 0.0)
        out.plan.entries.push_back({mu.atom(i).x, nu.atom(j).x, sol.plan(i, j)});
  return out;
}

PivotMeasure random_intermedium(const DiscreteMeasure2D& mu,
                                const DiscreteMeasure2D& nu,
                                std::uint64_t seed) {
  DiscreteMeasure1D rows = marginal(nu, 1);  // y1 side
  DiscreteMeasure1D cols = marginal(mu, 2);  // x2 side
  const int m = static_cast<int>(rows.size()), n = static_cast<int>(cols.size());

  std::mt19937_64 eng(seed);
  std::vector<int> rp(m), cp(n);
  std::iota(rp.begin(), rp.end(), 0);
  std::iota(cp.begin(), cp.end(), 0);
  for (int i = m - 1; i > 0; --i)
    std::swap(rp[i], rp[eng() % static_cast<std::uint64_t>(i + 1)]);
  for (int j = n - 1; j > 0; --j)
    std::swap(cp[j], cp[eng() % static_cast<std::uint64_t>(j + 1)]);

  // Northwest-corner fill in the shuffled order: a random vertex of the
  // coupling polytope.
  PivotMeasure zeta;
  int i = 0, j = 0;
  double ra = rows.atom(rp[0]).w, rb = cols.atom(cp[0]).w;
  while (i < m && j < n) {
    double t = std::min(ra, rb);
    if (t > 0.0)
      zeta.atoms.push_back({rows.atom(rp[i]).x, cols.atom(cp[j]).x, t});
    ra -= t;
    rb -= t;
    bool advance_row = ra <= rb;
    if (advance_row) {
      ++i;
      if (i < m) ra = rows.atom(rp[i]).w;
    } else {
      ++j;
      if (j < n) rb = cols.atom(cp[j]).w;
    }
  }
  std::sort(zeta.atoms.begin(), zeta.atoms.end(),
            [](const PivotAtom& a, const PivotAtom& b) {
              return std::pair{a.y1, a.x2} < std::pair{b.y1, b.x2};
            });
  return zeta;
}

}  // namespace cardot::oracle
