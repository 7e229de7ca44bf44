#pragma once

#include <cstdint>
#include <random>

#include "cardot/closedform.hpp"
#include "cardot/measures.hpp"

namespace cardot {

/// Deterministic RNG used by the bench harness and property tests. Uniform
/// doubles are derived from the raw engine words, so streams depend only on
/// the seed, not on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(eng_() %
                                 static_cast<std::uint64_t>(hi - lo + 1));
  }
  double exponential() { return -std::log1p(-uniform()); }
  std::uint64_t word() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

/// Flat-Dirichlet weight vector of length n.
std::vector<double> dirichlet_weights(Rng& rng, int n);

/// Up to max_atoms atoms, coordinates uniform in [lo, hi].
DiscreteMeasure2D random_measure_2d(Rng& rng, int max_atoms, double lo,
                                    double hi);
DiscreteMeasure1D random_measure_1d(Rng& rng, int max_atoms, double lo,
                                    double hi);

/// Like random_measure_2d but coordinates drawn from a small integer
/// lattice, to exercise coinciding marginal values and duplicate merging.
DiscreteMeasure2D random_lattice_measure_2d(Rng& rng, int max_atoms,
                                            int side);

struct InstancePair {
  DiscreteMeasure2D mu;
  DiscreteMeasure2D nu;
};

InstancePair random_instance(std::uint64_t seed, int max_atoms = 8,
                             double lo = 0.0, double hi = 10.0);
InstancePair random_lattice_instance(std::uint64_t seed, int max_atoms = 8,
                                     int side = 4);

/// mu supported exactly on {x2 = 0}, nu unconstrained.
InstancePair random_line_instance(std::uint64_t seed, int max_atoms = 8);

struct LineInstance {
  DiscreteMeasure2D mu;
  DiscreteMeasure2D nu;
  LineSpec line;
};

/// mu supported (to machine precision) on a random line.
LineInstance random_general_line_instance(std::uint64_t seed,
                                          int max_atoms = 8);

}  // namespace cardot
