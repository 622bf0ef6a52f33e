#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cosim/model_core.hpp"

using namespace cosim;

TEST_CASE("registry projection returns the stored directed tuple") {
  InterfaceRegistry reg;
  reg.add_pair(1, 2, {5.0, 2000.0, 0.0, 1.0}, {0.0, 2000.0, 0.0, 1.0});
  const auto& b = reg.project(1, 2);
  CHECK(b.heat_flux == 5.0);
  CHECK(b.temperature == 2000.0);
  CHECK(b.mass_flow_rate == 0.0);
  CHECK(b.area == 1.0);
}

TEST_CASE("directed pairs are distinct entries") {
  InterfaceRegistry reg;
  reg.add_pair(1, 2, {5.0, 2000.0, 0.0, 1.0}, {-5.0, 1900.0, 0.0, 1.0});
  CHECK(reg.project(2, 1).temperature == 1900.0);
  CHECK_THROWS_AS(reg.project(1, 3), ValidationError);
  CHECK_THROWS_AS(reg.project(3, 1), ValidationError);
}

TEST_CASE("neighbor sets of a chain") {
  InterfaceRegistry reg;
  InterfaceVariables b{0.0, 2000.0, 0.0, 1.0};
  reg.add_pair(1, 2, b, b);
  reg.add_pair(2, 3, b, b);
  CHECK(reg.neighbors(2) == std::set<DomainId>{1, 3});
  CHECK(reg.neighbor_count(2) == 2);
  CHECK(reg.neighbor_count(1) == 1);
}

TEST_CASE("registry keys are symmetric by construction") {
  InterfaceRegistry reg;
  InterfaceVariables b{1.0, 2100.0, 0.0, 1.0};
  reg.add_pair(4, 7, b, b);
  for (const auto& [key, _] : reg.slots()) CHECK(reg.has(key.second, key.first));
}

TEST_CASE("set then project is identity on the written slot only") {
  InterfaceRegistry reg;
  reg.add_pair(1, 2, {5.0, 2000.0, 0.0, 1.0}, {-5.0, 2000.0, 0.0, 1.0});
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1e5, 1e5);
  for (int i = 0; i < 50; ++i) {
    InterfaceVariables v{u(rng), std::abs(u(rng)) + 1.0, u(rng), 1.0};
    const InterfaceVariables other = reg.project(2, 1);
    reg.set_interface(1, 2, v);
    const auto& got = reg.project(1, 2);
    CHECK(got.heat_flux == v.heat_flux);
    CHECK(got.temperature == v.temperature);
    CHECK(got.mass_flow_rate == v.mass_flow_rate);
    CHECK(reg.project(2, 1).heat_flux == other.heat_flux);
    CHECK(reg.project(2, 1).temperature == other.temperature);
  }
}

TEST_CASE("set with a non-finite field is rejected") {
  InterfaceRegistry reg;
  reg.add_pair(1, 2, {0.0, 2000.0, 0.0, 1.0}, {0.0, 2000.0, 0.0, 1.0});
  InterfaceVariables bad{std::nan(""), 2000.0, 0.0, 1.0};
  CHECK_THROWS_AS(reg.set_interface(1, 2, bad), ValidationError);
}

TEST_CASE("set T then project returns the new temperature") {
  InterfaceRegistry reg;
  reg.add_pair(2, 1, {0.0, 2000.0, 0.0, 1.0}, {0.0, 2000.0, 0.0, 1.0});
  InterfaceVariables v = reg.project(2, 1);
  v.temperature = 2100.0;
  reg.set_interface(2, 1, v);
  CHECK(reg.project(2, 1).temperature == 2100.0);
}

TEST_CASE("boundary schedule is a right-continuous step function") {
  BoundarySchedule b{{{0.0, 3000.0}, {4000.0, 1700.0}}, +1.0};
  b.validate();
  CHECK(b.at(0.0) == 3000.0);
  CHECK(b.at(3999.999) == 3000.0);
  CHECK(b.at(4000.0) == 1700.0);
  CHECK(b.at(1e9) == 1700.0);
  CHECK(b.at(-1.0) == 3000.0);  // before the first point: first value
}

TEST_CASE("schedule times must increase strictly") {
  BoundarySchedule b{{{0.0, 1.0}, {0.0, 2.0}}, +1.0};
  CHECK_THROWS_AS(b.validate(), ValidationError);
  BoundarySchedule c{{{0.0, 1.0}}, 0.5};
  CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("state and material validation") {
  SubdomainState s{-1.0, 2000.0};
  CHECK_THROWS_AS(s.validate(), ValidationError);
  SubdomainState s2{1.0, 0.0};
  CHECK_THROWS_AS(s2.validate(), ValidationError);
  MaterialProps m{1e4, 500.0, 2.0, 1e4, 2100.0, 0.0};
  CHECK_NOTHROW(m.validate());
  m.thermal_conductivity = 0.0;
  CHECK_THROWS_AS(m.validate(), ValidationError);
  GeometrySpec g{2.0, 2.0, 1.0, true};
  CHECK_NOTHROW(g.validate());
  g.volume = 3.0;
  CHECK_THROWS_AS(g.validate(), ValidationError);
}
