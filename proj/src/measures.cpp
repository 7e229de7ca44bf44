#include "cardot/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cardot {

namespace {

bool lex_less(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  if (a.x() != b.x()) return a.x() < b.x();
  return a.y() < b.y();
}

// Drops zero-weight atoms, merges exact duplicates, checks mass balance and
// renormalizes. Shared by both measure constructors via the sort/merge
// callbacks below.
template <class Atom, class Less, class Same>
std::vector<Atom> canonicalize(std::vector<Atom> atoms, Less less, Same same) {
  std::erase_if(atoms, [](const Atom& a) { return a.w == 0.0; });
  for (const Atom& a : atoms) {
    if (a.w < 0.0 || !std::isfinite(a.w))
      throw DomainError("measure weight must be finite and >= 0");
  }
  if (atoms.empty()) throw EmptyMeasure("measure has no positive-weight atom");

  std::sort(atoms.begin(), atoms.end(), less);
  std::vector<Atom> merged;
  merged.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (!merged.empty() && same(merged.back(), a))
      merged.back().w += a.w;
    else
      merged.push_back(a);
  }

  double total = 0.0;
  for (const Atom& a : merged) total += a.w;
  if (std::abs(total - 1.0) > kMassTol)
    throw UnbalancedMass("weights sum to " + std::to_string(total) +
                         ", expected 1 within 1e-9");
  for (Atom& a : merged) a.w /= total;
  return merged;
}

}  // namespace

DiscreteMeasure1D::DiscreteMeasure1D(std::vector<Atom1D> atoms)
    : atoms_(canonicalize(
          std::move(atoms),
          [](const Atom1D& a, const Atom1D& b) { return a.x < b.x; },
          [](const Atom1D& a, const Atom1D& b) { return a.x == b.x; })) {
  cum_.resize(atoms_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    acc += atoms_[i].w;
    cum_[i] = acc;
  }
}

double DiscreteMeasure1D::weight_at(double x) const {
  auto it = std::lower_bound(
      atoms_.begin(), atoms_.end(), x,
      [](const Atom1D& a, double v) { return a.x < v; });
  if (it != atoms_.end() && it->x == x) return it->w;
  return 0.0;
}

DiscreteMeasure2D::DiscreteMeasure2D(std::vector<Atom2D> atoms)
    : atoms_(canonicalize(
          std::move(atoms),
          [](const Atom2D& a, const Atom2D& b) { return lex_less(a.x, b.x); },
          [](const Atom2D& a, const Atom2D& b) {
            return a.x.x() == b.x.x() && a.x.y() == b.x.y();
          })) {}

double DiscreteMeasure2D::weight_at(const Eigen::Vector2d& x) const {
  for (const Atom2D& a : atoms_)
    if (a.x.x() == x.x() && a.x.y() == x.y()) return a.w;
  return 0.0;
}

std::size_t Disintegration::slice_index(double x) const {
  for (std::size_t i = 0; i < base.size(); ++i)
    if (base.atom(i).x == x) return i;
  throw DomainError("no disintegration slice at the requested position");
}

DiscreteMeasure1D make_measure_1d(const std::vector<double>& positions,
                                  const std::vector<double>& weights) {
  if (positions.size() != weights.size())
    throw LengthMismatch("positions and weights differ in length");
  std::vector<Atom1D> atoms(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i)
    atoms[i] = {positions[i], weights[i]};
  return DiscreteMeasure1D(std::move(atoms));
}

DiscreteMeasure2D make_measure_2d(const std::vector<Eigen::Vector2d>& points,
                                  const std::vector<double>& weights) {
  if (points.size() != weights.size())
    throw LengthMismatch("points and weights differ in length");
  std::vector<Atom2D> atoms(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    atoms[i] = {points[i], weights[i]};
  return DiscreteMeasure2D(std::move(atoms));
}

DiscreteMeasure1D dirac_1d(double x) { return make_measure_1d({x}, {1.0}); }

DiscreteMeasure2D dirac_2d(const Eigen::Vector2d& x) {
  return make_measure_2d({x}, {1.0});
}

DiscreteMeasure1D marginal(const DiscreteMeasure2D& m, int axis) {
  if (axis != 1 && axis != 2) throw DomainError("axis must be 1 or 2");
  std::vector<Atom1D> atoms;
  atoms.reserve(m.size());
  for (const Atom2D& a : m.atoms())
    atoms.push_back({axis == 1 ? a.x.x() : a.x.y(), a.w});
  return DiscreteMeasure1D(std::move(atoms));
}

Disintegration disintegrate(const DiscreteMeasure2D& m, int axis) {
  DiscreteMeasure1D base = marginal(m, axis);
  std::vector<std::vector<Atom1D>> groups(base.size());
  for (const Atom2D& a : m.atoms()) {
    double key = axis == 1 ? a.x.x() : a.x.y();
    double other = axis == 1 ? a.x.y() : a.x.x();
    std::size_t i = 0;
    while (base.atom(i).x != key) ++i;
    groups[i].push_back({other, a.w / base.atom(i).w});
  }
  std::vector<DiscreteMeasure1D> slices;
  slices.reserve(groups.size());
  for (auto& g : groups) slices.emplace_back(std::move(g));
  return Disintegration{axis, std::move(base), std::move(slices)};
}

DiscreteMeasure2D reassemble(const Disintegration& d) {
  std::vector<Atom2D> atoms;
  for (std::size_t i = 0; i < d.base.size(); ++i) {
    const Atom1D& b = d.base.atom(i);
    for (const Atom1D& c : d.slices[i].atoms()) {
      Eigen::Vector2d p = d.axis == 1 ? Eigen::Vector2d(b.x, c.x)
                                      : Eigen::Vector2d(c.x, b.x);
      atoms.push_back({p, b.w * c.w});
    }
  }
  return DiscreteMeasure2D(std::move(atoms));
}

DiscreteMeasure2D pushforward_affine(const DiscreteMeasure2D& m,
                                     const Eigen::Matrix2d& A,
                                     const Eigen::Vector2d& b) {
  std::vector<Atom2D> atoms;
  atoms.reserve(m.size());
  for (const Atom2D& a : m.atoms()) atoms.push_back({A * a.x + b, a.w});
  return DiscreteMeasure2D(std::move(atoms));
}

DiscreteMeasure2D product_measure(const DiscreteMeasure1D& a,
                                  const DiscreteMeasure1D& b) {
  std::vector<Atom2D> atoms;
  atoms.reserve(a.size() * b.size());
  for (const Atom1D& pa : a.atoms())
    for (const Atom1D& pb : b.atoms())
      atoms.push_back({Eigen::Vector2d(pa.x, pb.x), pa.w * pb.w});
  return DiscreteMeasure2D(std::move(atoms));
}

double max_weight_deviation(const DiscreteMeasure1D& a,
                            const DiscreteMeasure1D& b) {
  double dev = 0.0;
  for (const Atom1D& atom : a.atoms())
    dev = std::max(dev, std::abs(atom.w - b.weight_at(atom.x)));
  for (const Atom1D& atom : b.atoms())
    dev = std::max(dev, std::abs(atom.w - a.weight_at(atom.x)));
  return dev;
}

double max_weight_deviation(const DiscreteMeasure2D& a,
                            const DiscreteMeasure2D& b) {
  double dev = 0.0;
  for (const Atom2D& atom : a.atoms())
    dev = std::max(dev, std::abs(atom.w - b.weight_at(atom.x)));
  for (const Atom2D& atom : b.atoms())
    dev = std::max(dev, std::abs(atom.w - a.weight_at(atom.x)));
  return dev;
}

}  // namespace cardot
