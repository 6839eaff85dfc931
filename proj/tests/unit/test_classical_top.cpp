#include <cmath>
#include <random>

#include "doctest.h"
#include "qkt/classical_top.hpp"
#include "test_helpers.hpp"

using namespace qkt;

namespace {

TopParams params(double kappa, double p) {
  TopParams t;
  t.kappa = kappa;
  t.p = p;
  return t;
}

void check_point(const ClassicalPoint& a, double x, double y, double z, double tol) {
  CHECK(std::abs(a.x - x) < tol);
  CHECK(std::abs(a.y - y) < tol);
  CHECK(std::abs(a.z - z) < tol);
}

}  // namespace

TEST_CASE("kick axis is a fixed point") {
  for (double kappa : {0.0, 1.0, 3.0, 7.5}) {
    check_point(classical_step({0, 1, 0}, params(kappa, kPi / 2)), 0, 1, 0, 1e-15);
  }
}

TEST_CASE("+x is sent to -z with no twist") {
  check_point(classical_step({1, 0, 0}, params(3.0, kPi / 2)), 0, 0, -1, 1e-15);
}

TEST_CASE("north pole at p = pi/3, kappa = 3") {
  // Frozen from tests/oracles/frozen_values.py.
  check_point(classical_step({0, 0, 1}, params(3.0, kPi / 3)), 0.8660254037844386, -0.2585744448672246,
              -0.4279477263190059, 1e-14);
}

TEST_CASE("trajectory shape") {
  const auto p = params(3.0, kPi / 2);
  const auto single = trajectory({0.6, 0.0, 0.8}, p, 0);
  REQUIRE(single.size() == 1);
  CHECK(single[0].x == 0.6);

  const auto fixed = trajectory({0, 1, 0}, p, 150);
  REQUIRE(fixed.size() == 151);
  for (const auto& pt : fixed) check_point(pt, 0, 1, 0, 1e-15);

  CHECK_THROWS_AS(trajectory({0, 0, 1}, p, -1), std::invalid_argument);
}

TEST_CASE("chaotic trajectory stays on the sphere") {
  DriftMonitor monitor;
  const auto pts = trajectory(ClassicalPoint::from_spherical({2.25, 1.1}), params(3.0, kPi / 2), 150, &monitor);
  for (const auto& pt : pts) CHECK(std::abs(pt.norm() - 1.0) < 1e-12);
  CHECK(monitor.max_drift < 1e-12);
}

TEST_CASE("norm preservation for random points and parameters") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> kappa(0.0, 10.0), angle(0.0, kPi);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto p = params(kappa(rng), angle(rng));
    auto pt = ClassicalPoint::from_spherical(test::random_direction(rng));
    const auto next = classical_step(pt, p);
    REQUIRE(std::abs(next.norm() - 1.0) < 1e-12);
    if (trial % 100 == 0) {
      for (int k = 0; k < 600; ++k) pt = classical_step(pt, p);
      REQUIRE(std::abs(pt.norm() - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("zero twist is a rotation about y") {
  std::mt19937_64 rng(11);
  const auto p = params(0.0, kPi / 2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto start = ClassicalPoint::from_spherical(test::random_direction(rng));
    auto pt = start;
    for (int k = 0; k < 4; ++k) pt = classical_step(pt, p);
    check_point(pt, start.x, start.y, start.z, 1e-12);
  }
}

TEST_CASE("analytic inverse undoes the step") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> kappa(0.0, 10.0), angle(0.0, kPi);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = params(kappa(rng), angle(rng));
    const auto start = ClassicalPoint::from_spherical(test::random_direction(rng));
    const auto back = classical_step_inverse(classical_step(start, p), p);
    check_point(back, start.x, start.y, start.z, 1e-12);
  }
}

TEST_CASE("renormalization kicks in only past the threshold") {
  DriftMonitor monitor;
  const auto out = classical_step({0.0, 1.0 + 1e-9, 0.0}, params(1.0, kPi / 2), &monitor);
  CHECK(monitor.renormalizations == 1);
  CHECK(monitor.max_drift > 1e-12);
  CHECK(std::abs(out.norm() - 1.0) < 1e-15);
}

TEST_CASE("phase portrait rows") {
  const auto p = params(3.0, kPi / 2);
  const auto rows = phase_portrait({{kPi / 2, kPi / 2}}, p, 10);
  REQUIRE(rows.size() == 11);
  for (const auto& r : rows) {
    CHECK(r.ic_index == 0);
    CHECK(std::abs(r.theta - kPi / 2) < 1e-12);
    CHECK(std::abs(r.phi - kPi / 2) < 1e-12);
  }
  CHECK(rows.back().kick == 10);
  CHECK_THROWS_AS(phase_portrait({}, p, 10), std::invalid_argument);

  const auto grid = uniform_sphere_grid(12, 12);
  REQUIRE(grid.size() == 144);
  const auto all = phase_portrait(grid, p, 150);
  CHECK(all.size() == 144 * 151);
  for (const auto& r : all) {
    CHECK(r.phi >= 0.0);
    CHECK(r.phi < kTwoPi);
    CHECK(r.theta >= 0.0);
    CHECK(r.theta <= kPi);
  }
}

TEST_CASE("kappa = 0 orbits are circles about the y axis") {
  const auto p = params(0.0, kPi / 3);
  for (const auto& ic : uniform_sphere_grid(4, 4)) {
    const auto start = ClassicalPoint::from_spherical(ic);
    for (const auto& pt : trajectory(start, p, 20)) CHECK(std::abs(pt.y - start.y) < 1e-14);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(params(-1.0, 1.0).validate(), std::invalid_argument);
  auto t = params(1.0, 1.0);
  t.tau = 2.0;
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}
