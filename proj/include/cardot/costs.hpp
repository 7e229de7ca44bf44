#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "cardot/errors.hpp"

namespace cardot {

/// 1D ground cost of the form h(|x - y|) for convex h with h(0) = 0.
///
/// Built-in kind: power, h(t) = t^p with p >= 1. Custom h is accepted as an
/// opaque function; convexity stays the caller's obligation and is only
/// spot-checked on a grid at construction (midpoint test, tolerance 1e-12).
class ConvexRadialCost {
 public:
  static ConvexRadialCost power(double p);
  static ConvexRadialCost custom(std::function<double(double)> h);

  double operator()(double x, double y) const {
    double d = std::abs(x - y);
    if (p_ == 1.0) return d;
    if (p_ == 2.0) return d * d;
    if (p_ > 0.0) return std::pow(d, p_);
    return h_(d);
  }

  bool is_power() const { return p_ > 0.0; }
  /// Exponent of a power cost; 0 signals a custom cost.
  double exponent() const { return p_; }

 private:
  ConvexRadialCost(double p, std::function<double(double)> h)
      : p_(p), h_(std::move(h)) {}

  double p_ = 0.0;  // 0 means custom
  std::function<double(double)> h_;
};

/// Separable cost on a 2D product space: c(x, y) = c1(x1, y1) + c2(x2, y2).
struct SeparableCost {
  ConvexRadialCost c1;
  ConvexRadialCost c2;

  double operator()(const Eigen::Vector2d& x, const Eigen::Vector2d& y) const {
    return c1(x.x(), y.x()) + c2(x.y(), y.y());
  }
};

inline double eval_total(const SeparableCost& c, const Eigen::Vector2d& x,
                         const Eigen::Vector2d& y) {
  return c(x, y);
}

/// True iff both components are p=1 power costs, the only built-in case in
/// which each component is itself a distance.
bool is_metric(const SeparableCost& c);

SeparableCost power_cost(double p1, double p2);

/// Parse the CLI cost spec "p1:p2", e.g. "2:2". Throws DomainError.
SeparableCost parse_cost_spec(const std::string& spec);

}  // namespace cardot
