#include <doctest.h>

#include <cmath>

#include "cardot/instances.hpp"
#include "cardot/onedim.hpp"
#include "cardot/oracle.hpp"

using namespace cardot;

namespace {

DiscreteMeasure1D thirds() {
  return make_measure_1d({0.0, 1.0, 2.0}, {1.0 / 3, 1.0 / 3, 1.0 / 3});
}

DiscreteMeasure1D halves03() {
  return make_measure_1d({0.0, 3.0}, {0.5, 0.5});
}

}  // namespace

TEST_SUITE_BEGIN("onedim");

TEST_CASE("cdf examples") {
  auto d0 = dirac_1d(0.0);
  CHECK(cdf(d0, -1.0) == 0.0);
  CHECK(cdf(d0, 0.0) == 1.0);

  auto m = make_measure_1d({0.0, 1.0}, {0.5, 0.5});
  CHECK(cdf(m, 0.5) == doctest::Approx(0.5));
  CHECK(cdf(m, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("quantile examples") {
  auto m = make_measure_1d({0.0, 1.0}, {0.5, 0.5});
  CHECK(quantile(m, 0.5) == 0.0);
  CHECK(quantile(m, 0.500000001) == 1.0);

  CHECK(quantile(dirac_1d(4.0), 0.3) == 4.0);
  CHECK(quantile(dirac_1d(4.0), 1.0) == 4.0);

  CHECK(quantile(thirds(), 0.4) == 1.0);

  CHECK_THROWS_AS(quantile(m, 0.0), DomainError);
  CHECK_THROWS_AS(quantile(m, -0.1), DomainError);
  CHECK_THROWS_AS(quantile(m, 1.0 + 1e-12), DomainError);
}

TEST_CASE("quantile/cdf Galois property at breakpoints") {
  Rng rng(11);
  for (int k = 0; k < 30; ++k) {
    auto m = random_measure_1d(rng, 12, 0.0, 10.0);
    for (double cum : m.cumulative()) {
      double s = std::min(cum, 1.0);  // the last breakpoint may carry fp dust
      CHECK(cdf(m, quantile(m, s)) >= s);
    }
  }
}

TEST_CASE("comonotone merge fixture") {
  Plan1D p = comonotone_plan(thirds(), halves03());
  REQUIRE(p.entries.size() == 4);
  CHECK(p.entries[0].src == 0.0);
  CHECK(p.entries[0].dst == 0.0);
  CHECK(p.entries[0].mass == doctest::Approx(1.0 / 3));
  CHECK(p.entries[1].src == 1.0);
  CHECK(p.entries[1].dst == 0.0);
  CHECK(p.entries[1].mass == doctest::Approx(1.0 / 6));
  CHECK(p.entries[2].src == 1.0);
  CHECK(p.entries[2].dst == 3.0);
  CHECK(p.entries[2].mass == doctest::Approx(1.0 / 6));
  CHECK(p.entries[3].src == 2.0);
  CHECK(p.entries[3].dst == 3.0);
  CHECK(p.entries[3].mass == doctest::Approx(1.0 / 3));
}

TEST_CASE("comonotone identity and dirac source") {
  auto m = make_measure_1d({1.0, 4.0}, {0.25, 0.75});
  Plan1D diag = comonotone_plan(m, m);
  for (const PlanEntry1D& e : diag.entries) CHECK(e.src == e.dst);
  CHECK(plan_cost(diag, ConvexRadialCost::power(2)) == 0.0);

  Plan1D fan = comonotone_plan(dirac_1d(0.0), halves03());
  REQUIRE(fan.entries.size() == 2);
  CHECK(fan.entries[0].src == 0.0);
  CHECK(fan.entries[1].src == 0.0);
  CHECK(fan.entries[0].dst == 0.0);
  CHECK(fan.entries[1].dst == 3.0);
}

TEST_CASE("exact cumulative ties advance both pointers") {
  auto a = make_measure_1d({0.0, 1.0}, {0.5, 0.5});
  auto b = make_measure_1d({2.0, 3.0}, {0.5, 0.5});
  Plan1D p = comonotone_plan(a, b);
  REQUIRE(p.entries.size() == 2);  // no zero-mass crossing entry
  CHECK(p.entries[0].mass == doctest::Approx(0.5));
  CHECK(p.entries[1].mass == doctest::Approx(0.5));
}

TEST_CASE("w_1d examples") {
  CHECK(w_1d(dirac_1d(0.0), dirac_1d(1.0), ConvexRadialCost::power(1)) ==
        doctest::Approx(1.0));
  CHECK(w_1d(thirds(), halves03(), ConvexRadialCost::power(1)) ==
        doctest::Approx(5.0 / 6));
  auto m01 = make_measure_1d({0.0, 1.0}, {0.5, 0.5});
  auto m02 = make_measure_1d({0.0, 2.0}, {0.5, 0.5});
  CHECK(w_1d(m01, m02, ConvexRadialCost::power(2)) == doctest::Approx(0.5));
}

TEST_CASE("w1_cdf examples") {
  CHECK(w1_cdf(dirac_1d(0.0), dirac_1d(1.0)) == doctest::Approx(1.0));
  auto m = make_measure_1d({-2.0, 5.0}, {0.25, 0.75});
  CHECK(w1_cdf(m, m) == 0.0);
  CHECK(w1_cdf(thirds(), halves03()) == doctest::Approx(5.0 / 6));
}

TEST_CASE("quantile-merge W1 equals CDF-integral W1") {
  Rng rng(23);
  for (int k = 0; k < 200; ++k) {
    auto mu = random_measure_1d(rng, 12, 0.0, 10.0);
    auto nu = random_measure_1d(rng, 12, 0.0, 10.0);
    double a = w_1d(mu, nu, ConvexRadialCost::power(1));
    double b = w1_cdf(mu, nu);
    CHECK(std::abs(a - b) < 1e-10);
  }
}

TEST_CASE("comonotone plans have valid marginals and no crossings") {
  Rng rng(31);
  for (int k = 0; k < 50; ++k) {
    auto mu = random_measure_1d(rng, 10, 0.0, 10.0);
    auto nu = random_measure_1d(rng, 10, 0.0, 10.0);
    Plan1D p = comonotone_plan(mu, nu);
    CHECK(p.entries.size() <= mu.size() + nu.size() - 1);
    CHECK(max_weight_deviation(p.source_marginal(), mu) < 1e-12);
    CHECK(max_weight_deviation(p.target_marginal(), nu) < 1e-12);
    for (std::size_t i = 0; i < p.entries.size(); ++i)
      for (std::size_t j = 0; j < p.entries.size(); ++j) {
        bool crossing = p.entries[i].src < p.entries[j].src &&
                        p.entries[i].dst > p.entries[j].dst;
        CHECK_FALSE(crossing);
      }
  }
}

TEST_CASE("w_1d matches the bipartite LP oracle") {
  Rng rng(41);
  for (int k = 0; k < 60; ++k) {
    auto mu = random_measure_1d(rng, 10, 0.0, 10.0);
    auto nu = random_measure_1d(rng, 10, 0.0, 10.0);
    for (double p : {1.0, 2.0, 3.0}) {
      ConvexRadialCost c = ConvexRadialCost::power(p);
      double fast = w_1d(mu, nu, c);
      double slow = oracle::brute_force_w1d(mu, nu, c).cost;
      CHECK(fast == doctest::Approx(slow).epsilon(1e-9));
    }
  }
}

TEST_CASE("translation covariance") {
  Rng rng(53);
  for (int k = 0; k < 30; ++k) {
    auto mu = random_measure_1d(rng, 8, 0.0, 10.0);
    auto nu = random_measure_1d(rng, 8, 0.0, 10.0);
    double t = rng.uniform(-3.0, 3.0);
    std::vector<double> mx, nx, mw, nw;
    for (const Atom1D& a : mu.atoms()) mx.push_back(a.x + t), mw.push_back(a.w);
    for (const Atom1D& a : nu.atoms()) nx.push_back(a.x + t), nw.push_back(a.w);
    auto mu_t = make_measure_1d(mx, mw);
    auto nu_t = make_measure_1d(nx, nw);
    for (double p : {1.0, 2.0}) {
      ConvexRadialCost c = ConvexRadialCost::power(p);
      CHECK(w_1d(mu, nu, c) ==
            doctest::Approx(w_1d(mu_t, nu_t, c)).epsilon(1e-12));
    }
  }
}

TEST_SUITE_END();
