//
// Project BMC - Copyright 2026 BMC Contributors.
// SPDX-License-Identifier: Apache-2.0
//
#include <catch2/catch_amalgamated.hpp>
#include <limits>

#include "bmc/bounds.hpp"
#include "helpers.hpp"

using namespace bmc;
using namespace bmc::test;

namespace {

PointCloud two_points_at_distance_2() {
  PointCloud c;
  c.coords.resize(2, 2);
  c.coords << 0, 0, 2, 0;
  return c;
}

}  // namespace

TEST_CASE("scalar alphas scale the squared distances", "[bounds]") {
  const auto problem = build_bounds(two_points_at_distance_2(), 0.1, 10.0,
                                    ObservedDistances{}, 1);
  REQUIRE(problem.lower(0, 1) == Catch::Approx(0.4));
  REQUIRE(problem.upper(0, 1) == Catch::Approx(40.0));
  REQUIRE(problem.lower(0, 0) == 0.0);
  REQUIRE(problem.upper(1, 1) == 0.0);
}

TEST_CASE("observed pairs pin lower and upper to the squared value",
          "[bounds]") {
  ObservedDistances obs;
  obs.add(0, 1, 3.0);
  const auto problem =
      build_bounds(two_points_at_distance_2(), 0.1, 10.0, obs, 1);
  REQUIRE(problem.lower(0, 1) == 9.0);
  REQUIRE(problem.upper(0, 1) == 9.0);
  REQUIRE(problem.lower(1, 0) == 9.0);
}

TEST_CASE("unbounded sentinel upper bounds pass through", "[bounds]") {
  const auto problem = build_bounds(two_points_at_distance_2(), 0.0,
                                    kUnboundedUpper, ObservedDistances{}, 1);
  REQUIRE(problem.lower(0, 1) == 0.0);
  REQUIRE(problem.upper(0, 1) >= kUnboundedUpper);
  REQUIRE(validate(problem).empty());
}

TEST_CASE("build_bounds output always validates", "[bounds]") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    PointCloud c;
    c.coords = random_matrix(12, 3, 400 + seed);
    const auto problem =
        build_bounds(c, 0.25, 4.0, ObservedDistances{}, 4);
    CAPTURE(seed);
    REQUIRE(validate(problem).empty());
  }
}

TEST_CASE("scaling the cloud scales non-observed bounds quadratically",
          "[bounds]") {
  PointCloud c;
  c.coords = random_matrix(8, 3, 21);
  PointCloud scaled;
  scaled.coords = 3.0 * c.coords;
  const auto base = build_bounds(c, 0.5, 2.0, ObservedDistances{}, 2);
  const auto big = build_bounds(scaled, 0.5, 2.0, ObservedDistances{}, 2);
  REQUIRE(rel_frobenius(big.lower, Matrix(9.0 * base.lower)) < 1e-12);
  REQUIRE(rel_frobenius(big.upper, Matrix(9.0 * base.upper)) < 1e-12);
}

TEST_CASE("observed entries are bitwise equal between the two bounds",
          "[bounds]") {
  PointCloud c;
  c.coords = random_matrix(6, 2, 31);
  ObservedDistances obs;
  obs.add(1, 4, 0.7302951);
  obs.add(2, 3, 1.25);
  const auto problem = build_bounds(c, 0.1, 10.0, obs, 2);
  REQUIRE(problem.lower(1, 4) == problem.upper(1, 4));
  REQUIRE(problem.lower(3, 2) == problem.upper(3, 2));
}

TEST_CASE("alpha ordering and observed indices are checked", "[bounds]") {
  REQUIRE_THROWS_AS(build_bounds(two_points_at_distance_2(), 2.0, 1.0,
                                 ObservedDistances{}, 1),
                    std::invalid_argument);
  ObservedDistances obs;
  obs.add(0, 5, 1.0);
  REQUIRE_THROWS_AS(build_bounds(two_points_at_distance_2(), 0.1, 10.0, obs, 1),
                    std::out_of_range);
}

TEST_CASE("ObservedDistances rejects bad entries", "[bounds]") {
  ObservedDistances obs;
  REQUIRE_THROWS_AS(obs.add(2, 2, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(obs.add(0, 1, -1.0), std::invalid_argument);
  obs.add(0, 1, 1.0);
  REQUIRE_THROWS_AS(obs.add(1, 0, 2.0), std::invalid_argument);  // same pair
}

TEST_CASE("validate reports each kind of defect", "[bounds]") {
  PointCloud c;
  c.coords = random_matrix(4, 2, 8);
  auto problem = build_bounds(c, 0.5, 2.0, ObservedDistances{}, 2);
  REQUIRE(validate(problem).empty());

  SECTION("lower above upper") {
    problem.lower(1, 2) = problem.lower(2, 1) = 5.0;
    problem.upper(1, 2) = problem.upper(2, 1) = 1.0;
    const auto v = validate(problem);
    REQUIRE(v.size() == 1);
    REQUIRE(v[0].kind == BoundViolationKind::kOrder);
    REQUIRE(v[0].i == 1);
    REQUIRE(v[0].j == 2);
  }
  SECTION("nonzero diagonal") {
    problem.lower(0, 0) = 1.0;
    const auto v = validate(problem);
    REQUIRE_FALSE(v.empty());
    REQUIRE(v[0].kind == BoundViolationKind::kDiagonal);
  }
  SECTION("asymmetry") {
    problem.upper(0, 3) += 1e-6;
    const auto v = validate(problem);
    REQUIRE(v.size() == 1);
    REQUIRE(v[0].kind == BoundViolationKind::kAsymmetry);
  }
  SECTION("negative entry") {
    problem.lower(0, 2) = problem.lower(2, 0) = -0.5;
    const auto v = validate(problem);
    REQUIRE(v.size() == 1);
    REQUIRE(v[0].kind == BoundViolationKind::kNegative);
  }
  SECTION("non-finite entry") {
    problem.upper(1, 3) = problem.upper(3, 1) =
        std::numeric_limits<double>::infinity();
    const auto v = validate(problem);
    REQUIRE(v.size() == 1);
    REQUIRE(v[0].kind == BoundViolationKind::kNonFinite);
  }
}
