#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cardot/errors.hpp"

namespace cardot {

/// Mass-balance tolerance: weights must sum to 1 within this bound, and
/// atom-wise weight comparisons use it throughout the library.
inline constexpr double kMassTol = 1e-9;

struct Atom1D {
  double x;
  double w;
};

struct Atom2D {
  Eigen::Vector2d x;
  double w;
};

/// Finitely supported probability measure on the real line.
///
/// Invariants, established at construction: positions are pairwise distinct
/// (exact duplicates merged), atoms sorted ascending by position, all weights
/// positive and summing to 1 within kMassTol (then renormalized exactly).
class DiscreteMeasure1D {
 public:
  explicit DiscreteMeasure1D(std::vector<Atom1D> atoms);

  const std::vector<Atom1D>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  const Atom1D& atom(std::size_t i) const { return atoms_[i]; }

  /// Weight of the atom at exactly `x`; 0 when there is none.
  double weight_at(double x) const;

  /// Cumulative weights, cum[i] = w_0 + ... + w_i.
  const std::vector<double>& cumulative() const { return cum_; }

 private:
  std::vector<Atom1D> atoms_;
  std::vector<double> cum_;
};

/// Finitely supported probability measure on a 2D product space.
/// Atoms sorted lexicographically, exact-duplicate positions merged,
/// weights positive and normalized as in the 1D case.
class DiscreteMeasure2D {
 public:
  explicit DiscreteMeasure2D(std::vector<Atom2D> atoms);

  const std::vector<Atom2D>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  const Atom2D& atom(std::size_t i) const { return atoms_[i]; }

  double weight_at(const Eigen::Vector2d& x) const;

 private:
  std::vector<Atom2D> atoms_;
};

/// Decomposition of a 2D measure into 1D conditional laws over the fibers of
/// a coordinate projection: `base` is the push-forward marginal on the
/// conditioning axis, `slices[i]` the conditional law over the other
/// coordinate given base position i.
struct Disintegration {
  int axis;  // 1 or 2: the conditioning coordinate
  DiscreteMeasure1D base;
  std::vector<DiscreteMeasure1D> slices;  // aligned with base.atoms()

  /// Index of the slice at base position `x` (exact match).
  std::size_t slice_index(double x) const;
  const DiscreteMeasure1D& conditional(double x) const {
    return slices[slice_index(x)];
  }
};

DiscreteMeasure1D make_measure_1d(const std::vector<double>& positions,
                                  const std::vector<double>& weights);

DiscreteMeasure2D make_measure_2d(const std::vector<Eigen::Vector2d>& points,
                                  const std::vector<double>& weights);

DiscreteMeasure1D dirac_1d(double x);
DiscreteMeasure2D dirac_2d(const Eigen::Vector2d& x);

/// Push-forward under the coordinate projection onto the given axis.
DiscreteMeasure1D marginal(const DiscreteMeasure2D& m, int axis);

/// Group atoms by the coordinate on `axis` and renormalize each group.
/// Reassembling base-weight * conditional reproduces `m` atom for atom.
Disintegration disintegrate(const DiscreteMeasure2D& m, int axis);

/// Rebuild the 2D measure a disintegration came from.
DiscreteMeasure2D reassemble(const Disintegration& d);

/// Push-forward under x -> A x + b; coinciding images merge.
DiscreteMeasure2D pushforward_affine(const DiscreteMeasure2D& m,
                                     const Eigen::Matrix2d& A,
                                     const Eigen::Vector2d& b);

/// Direct product: atoms are all pairs, weights multiply.
DiscreteMeasure2D product_measure(const DiscreteMeasure1D& a,
                                  const DiscreteMeasure1D& b);

/// Largest atom-wise weight difference over the union of supports
/// (exact position matching; a missing atom counts as weight 0).
double max_weight_deviation(const DiscreteMeasure1D& a,
                            const DiscreteMeasure1D& b);
double max_weight_deviation(const DiscreteMeasure2D& a,
                            const DiscreteMeasure2D& b);

}  // namespace cardot
