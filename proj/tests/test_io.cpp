#include <doctest.h>

#include <sstream>

#include "cardot/instances.hpp"
#include "cardot/io.hpp"

using namespace cardot;

TEST_SUITE_BEGIN("io");

TEST_CASE("format_double round trips") {
  for (double v : {0.5, 1.0 / 3, 1e-13, 123456.789, -2.75, 0.0}) {
    std::string s = io::format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(io::format_double(0.5) == "0.5");
  CHECK(io::format_double(1.0) == "1");
}

TEST_CASE("measure csv round trip with comments") {
  std::istringstream in(
      "# a comment\n"
      "1, 0, 0.5  # trailing comment\n"
      "\n"
      "2,0,0.5\n");
  auto m = io::read_measure_2d_csv(in);
  REQUIRE(m.size() == 2);
  CHECK(m.atom(0).x == Eigen::Vector2d(1.0, 0.0));

  std::ostringstream out;
  io::write_measure_2d_csv(m, out);
  std::istringstream again(out.str());
  auto m2 = io::read_measure_2d_csv(again);
  CHECK(max_weight_deviation(m, m2) == 0.0);
}

TEST_CASE("csv parse errors") {
  std::istringstream missing("1,0\n");
  CHECK_THROWS_AS(io::read_measure_2d_csv(missing), io::ParseError);
  std::istringstream garbage("1,zero,0.5\n");
  CHECK_THROWS_AS(io::read_measure_2d_csv(garbage), io::ParseError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(io::read_measure_2d_csv(empty), io::ParseError);
}

TEST_CASE("json mirrors") {
  Rng rng(3);
  auto m = random_measure_2d(rng, 6, 0.0, 10.0);
  std::ostringstream out;
  io::write_measure_2d_json(m, out);
  std::istringstream in(out.str());
  auto back = io::read_measure_2d_json(in);
  CHECK(max_weight_deviation(m, back) == 0.0);

  auto m1 = random_measure_1d(rng, 6, 0.0, 10.0);
  std::ostringstream out1;
  io::write_measure_1d_json(m1, out1);
  std::istringstream in1(out1.str());
  CHECK(max_weight_deviation(m1, io::read_measure_1d_json(in1)) == 0.0);

  std::istringstream bad("{\"atoms\": [{\"x\": 1, \"w\": 1}]}");
  CHECK_THROWS_AS(io::read_measure_2d_json(bad), io::ParseError);
  std::istringstream notjson("not json at all");
  CHECK_THROWS_AS(io::read_measure_2d_json(notjson), io::ParseError);
}

TEST_CASE("1d csv round trip") {
  std::istringstream in("0,0.25\n1,0.75\n");
  auto m = io::read_measure_1d_csv(in);
  REQUIRE(m.size() == 2);
  std::ostringstream out;
  io::write_measure_1d_csv(m, out);
  std::istringstream again(out.str());
  CHECK(max_weight_deviation(m, io::read_measure_1d_csv(again)) == 0.0);
}

TEST_CASE("flow and plan and pivot round trips") {
  CardinalFlow f;
  f.f1 = {{1.0, 0.0, 0.0, 0.5}, {2.0, 0.0, 0.0, 0.5}};
  f.f2 = {{0.0, 0.0, 1.0, 0.5}, {0.0, 0.0, 2.0, 0.5}};
  std::ostringstream out;
  io::write_flow_csv(f, out);
  std::istringstream in(out.str());
  CardinalFlow back = io::read_flow_csv(in);
  CHECK(max_flow_deviation(f, back) == 0.0);

  TransportPlan p;
  p.entries = {{1.0, 0.0, 0.0, 1.5, 0.25}, {2.0, 0.0, 0.0, 2.0, 0.75}};
  std::ostringstream pout;
  io::write_plan_csv(p, pout);
  std::istringstream pin(pout.str());
  TransportPlan pback = io::read_plan_csv(pin);
  REQUIRE(pback.entries.size() == 2);
  CHECK(pback.entries[1].y2 == 2.0);
  CHECK(pback.entries[1].mass == 0.75);

  PivotMeasure z;
  z.atoms = {{1.0, 0.0, 0.5}, {8.0, 1.0, 0.5}};
  std::ostringstream zout;
  io::write_pivot_csv(z, zout);
  std::istringstream zin(zout.str());
  PivotMeasure zback = io::read_pivot_csv(zin);
  REQUIRE(zback.atoms.size() == 2);
  CHECK(zback.atoms[0].y1 == 1.0);
  CHECK(zback.atoms[1].x2 == 1.0);
}

TEST_CASE("flow rows must name a component") {
  std::istringstream in("3,0,0,0,1\n");
  CHECK_THROWS_AS(io::read_flow_csv(in), io::ParseError);
}

TEST_SUITE_END();
