#pragma once

// Shared test fixtures: the mass-switching example (mu on the horizontal
// axis, nu on the vertical one, unique pivot delta_(0,0)) and the
// theta-functional counterexample (nu minimizes W(mu,.) + W(.,nu) without
// being the pivot).

#include "cardot/cardinal.hpp"
#include "cardot/measures.hpp"

namespace fixtures {

inline cardot::DiscreteMeasure2D switching_mu() {
  return cardot::make_measure_2d({{1.0, 0.0}, {2.0, 0.0}}, {0.5, 0.5});
}

inline cardot::DiscreteMeasure2D switching_nu() {
  return cardot::make_measure_2d({{0.0, 1.0}, {0.0, 2.0}}, {0.5, 0.5});
}

// The unique cardinal flow of the switching example.
inline cardot::CardinalFlow switching_flow() {
  cardot::CardinalFlow f;
  f.f1 = {{1.0, 0.0, 0.0, 0.5}, {2.0, 0.0, 0.0, 0.5}};
  f.f2 = {{0.0, 0.0, 1.0, 0.5}, {0.0, 0.0, 2.0, 0.5}};
  return f;
}

// The three optimal plans listed for the switching example: the product
// plan pi and the two matchings pi1, pi2.
inline cardot::TransportPlan switching_pi() {
  cardot::TransportPlan p;
  p.entries = {{1.0, 0.0, 0.0, 1.0, 0.25},
               {1.0, 0.0, 0.0, 2.0, 0.25},
               {2.0, 0.0, 0.0, 1.0, 0.25},
               {2.0, 0.0, 0.0, 2.0, 0.25}};
  return p;
}

inline cardot::TransportPlan switching_pi1() {
  cardot::TransportPlan p;
  p.entries = {{1.0, 0.0, 0.0, 1.0, 0.5}, {2.0, 0.0, 0.0, 2.0, 0.5}};
  return p;
}

inline cardot::TransportPlan switching_pi2() {
  cardot::TransportPlan p;
  p.entries = {{1.0, 0.0, 0.0, 2.0, 0.5}, {2.0, 0.0, 0.0, 1.0, 0.5}};
  return p;
}

inline cardot::DiscreteMeasure2D theta_mu() {
  return cardot::make_measure_2d({{0.0, 0.0}, {7.0, 1.0}}, {0.5, 0.5});
}

inline cardot::DiscreteMeasure2D theta_nu() {
  return cardot::make_measure_2d({{1.0, 1.0}, {8.0, 0.0}}, {0.5, 0.5});
}

// The unique pivot of the theta counterexample.
inline cardot::PivotMeasure theta_pivot() {
  cardot::PivotMeasure z;
  z.atoms = {{1.0, 0.0, 0.5}, {8.0, 1.0, 0.5}};
  return z;
}

// nu read as an intermedium candidate on Y1 x X2 (valid because mu2 = nu2).
inline cardot::PivotMeasure theta_nu_as_intermedium() {
  cardot::PivotMeasure z;
  z.atoms = {{1.0, 1.0, 0.5}, {8.0, 0.0, 0.5}};
  return z;
}

}  // namespace fixtures
