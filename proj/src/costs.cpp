#include "cardot/costs.hpp"

#include <cmath>

namespace cardot {

ConvexRadialCost ConvexRadialCost::power(double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw DomainError("power cost requires p >= 1");
  return ConvexRadialCost(p, {});
}

ConvexRadialCost ConvexRadialCost::custom(std::function<double(double)> h) {
  if (!h) throw DomainError("custom cost requires a callable");
  // Spot check on a coarse grid: h(0) = 0, nonnegativity, midpoint convexity.
  constexpr double tol = 1e-12;
  constexpr int n = 33;
  double v[n];
  for (int i = 0; i < n; ++i) v[i] = h(0.25 * i);
  if (std::abs(v[0]) > tol) throw DomainError("custom cost must have h(0) = 0");
  for (int i = 0; i < n; ++i) {
    if (!(v[i] >= -tol) || !std::isfinite(v[i]))
      throw DomainError("custom cost must be finite and nonnegative");
  }
  for (int i = 0; i + 2 < n; i += 1) {
    if (v[i + 1] > 0.5 * (v[i] + v[i + 2]) + tol)
      throw DomainError("custom cost failed the midpoint convexity check");
  }
  return ConvexRadialCost(0.0, std::move(h));
}

bool is_metric(const SeparableCost& c) {
  return c.c1.is_power() && c.c1.exponent() == 1.0 && c.c2.is_power() &&
         c.c2.exponent() == 1.0;
}

SeparableCost power_cost(double p1, double p2) {
  return SeparableCost{ConvexRadialCost::power(p1),
                       ConvexRadialCost::power(p2)};
}

SeparableCost parse_cost_spec(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw DomainError("cost spec must look like p1:p2, e.g. 2:2");
  std::size_t used1 = 0, used2 = 0;
  double p1, p2;
  try {
    p1 = std::stod(spec.substr(0, colon), &used1);
    p2 = std::stod(spec.substr(colon + 1), &used2);
  } catch (const std::exception&) {
    throw DomainError("cost spec must contain two numbers p1:p2");
  }
  if (used1 != colon || used2 != spec.size() - colon - 1)
    throw DomainError("trailing characters in cost spec");
  return power_cost(p1, p2);
}

}  // namespace cardot
