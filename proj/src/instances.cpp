#include "cardot/instances.hpp"

#include <cmath>

namespace cardot {

std::vector<double> dirichlet_weights(Rng& rng, int n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (double& v : w) {
    v = rng.exponential();
    total += v;
  }
  for (double& v : w) v /= total;
  return w;
}

DiscreteMeasure2D random_measure_2d(Rng& rng, int max_atoms, double lo,
                                    double hi) {
  int n = rng.uniform_int(1, max_atoms);
  std::vector<Eigen::Vector2d> pts(n);
  for (auto& p : pts) p = {rng.uniform(lo, hi), rng.uniform(lo, hi)};
  return make_measure_2d(pts, dirichlet_weights(rng, n));
}

DiscreteMeasure1D random_measure_1d(Rng& rng, int max_atoms, double lo,
                                    double hi) {
  int n = rng.uniform_int(1, max_atoms);
  std::vector<double> xs(n);
  for (double& x : xs) x = rng.uniform(lo, hi);
  std::vector<double> w = dirichlet_weights(rng, n);
  // Duplicate positions merge, which can only happen on purpose here.
  return make_measure_1d(xs, w);
}

DiscreteMeasure2D random_lattice_measure_2d(Rng& rng, int max_atoms,
                                            int side) {
  int n = rng.uniform_int(1, max_atoms);
  std::vector<Eigen::Vector2d> pts(n);
  for (auto& p : pts)
    p = {static_cast<double>(rng.uniform_int(0, side - 1)),
         static_cast<double>(rng.uniform_int(0, side - 1))};
  return make_measure_2d(pts, dirichlet_weights(rng, n));
}

InstancePair random_instance(std::uint64_t seed, int max_atoms, double lo,
                             double hi) {
  Rng rng(seed);
  DiscreteMeasure2D mu = random_measure_2d(rng, max_atoms, lo, hi);
  DiscreteMeasure2D nu = random_measure_2d(rng, max_atoms, lo, hi);
  return {std::move(mu), std::move(nu)};
}

InstancePair random_lattice_instance(std::uint64_t seed, int max_atoms,
                                     int side) {
  Rng rng(seed);
  DiscreteMeasure2D mu = random_lattice_measure_2d(rng, max_atoms, side);
  DiscreteMeasure2D nu = random_lattice_measure_2d(rng, max_atoms, side);
  return {std::move(mu), std::move(nu)};
}

InstancePair random_line_instance(std::uint64_t seed, int max_atoms) {
  Rng rng(seed);
  int n = rng.uniform_int(1, max_atoms);
  std::vector<Eigen::Vector2d> pts(n);
  for (auto& p : pts) p = {rng.uniform(0.0, 10.0), 0.0};
  DiscreteMeasure2D mu = make_measure_2d(pts, dirichlet_weights(rng, n));
  DiscreteMeasure2D nu = random_measure_2d(rng, max_atoms, 0.0, 10.0);
  return {std::move(mu), std::move(nu)};
}

LineInstance random_general_line_instance(std::uint64_t seed, int max_atoms) {
  Rng rng(seed);
  double angle = rng.uniform(0.0, 3.14159265358979323846);
  double offset = rng.uniform(-5.0, 5.0);
  LineSpec line(std::cos(angle), std::sin(angle), offset);

  Eigen::Vector2d anchor = line.anchor();
  Eigen::Vector2d direction(line.b, -line.a);
  int n = rng.uniform_int(1, max_atoms);
  std::vector<Eigen::Vector2d> pts(n);
  for (auto& p : pts) p = anchor + rng.uniform(0.0, 10.0) * direction;
  DiscreteMeasure2D mu = make_measure_2d(pts, dirichlet_weights(rng, n));
  DiscreteMeasure2D nu = random_measure_2d(rng, max_atoms, 0.0, 10.0);
  return {std::move(mu), std::move(nu), line};
}

}  // namespace cardot
