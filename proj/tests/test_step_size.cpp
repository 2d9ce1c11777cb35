#include <catch_amalgamated.hpp>

#include "support/test_util.hpp"
#include "vropt/step_size.hpp"

using namespace vropt;
using Eigen::VectorXd;

namespace {

VectorXd v2d(double a, double b) {
  VectorXd v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("bb step on the identity Hessian") {
  // f(x) = ||x||^2/2 so gradient differences equal iterate differences
  const VectorXd x1 = v2d(1.0, 2.0), x2 = v2d(0.0, 0.0);
  const auto eta = bb_eta(x1, x2, x1, x2, 1.0);
  REQUIRE(eta.has_value());
  REQUIRE(*eta == 1.0);
}

TEST_CASE("bb step hand example on a diagonal quadratic") {
  // f(x) = x' diag(1,4) x / 2, dx = (1,0): dg = (1,0)
  const VectorXd dx = v2d(1.0, 0.0), zero = v2d(0.0, 0.0);
  const auto eta = bb_eta(dx, zero, v2d(1.0, 0.0), zero, 2.0);
  REQUIRE(eta.has_value());
  REQUIRE(*eta == 0.5);
}

TEST_CASE("bb degenerate quotients return nothing") {
  const VectorXd zero = v2d(0.0, 0.0);
  REQUIRE_FALSE(bb_eta(zero, zero, v2d(1, 1), v2d(0, 0), 1.0).has_value());
  // negative curvature
  REQUIRE_FALSE(
      bb_eta(v2d(1, 0), zero, v2d(-1, 0), zero, 1.0).has_value());
  REQUIRE_THROWS_AS(bb_eta(v2d(1, 0), zero, v2d(1, 0), zero, 0.0),
                    config_error);
}

TEST_CASE("bb clamp flags when it binds") {
  const VectorXd zero = v2d(0.0, 0.0);
  bool clamped = false;
  auto eta = bb_eta(v2d(1, 0), zero, v2d(1, 0), zero, 1.0,
                    step_interval{0.1, 0.5}, &clamped);
  REQUIRE(*eta == 0.5);
  REQUIRE(clamped);
  eta = bb_eta(v2d(1, 0), zero, v2d(1, 0), zero, 1.0, step_interval{0.1, 2.0},
               &clamped);
  REQUIRE(*eta == 1.0);
  REQUIRE_FALSE(clamped);
}

TEST_CASE("modified bb convex hand example") {
  // f(x) = ||x||^2/2, m = 10, lambda = 1 -> (1/10) * 1/(1+1)
  const VectorXd dx = v2d(1.0, 0.0), zero = v2d(0.0, 0.0);
  const auto eta = modified_bb_eta(false, dx, zero, dx, zero, 10, 1.0);
  REQUIRE(eta.has_value());
  REQUIRE(*eta == 0.05);
}

TEST_CASE("modified bb nonconvex takes the absolute curvature") {
  const VectorXd zero = v2d(0.0, 0.0);
  const auto eta =
      modified_bb_eta(true, v2d(1, 0), zero, v2d(-1, 0), zero, 1, 1.0);
  REQUIRE(eta.has_value());
  REQUIRE(*eta == 0.5);

  REQUIRE_FALSE(
      modified_bb_eta(true, zero, zero, v2d(1, 0), zero, 1, 1.0).has_value());
  REQUIRE_THROWS_AS(modified_bb_eta(false, v2d(1, 0), zero, v2d(1, 0), zero,
                                    0, 1.0),
                    config_error);
  REQUIRE_THROWS_AS(modified_bb_eta(false, v2d(1, 0), zero, v2d(1, 0), zero,
                                    1, 0.0),
                    config_error);
}

TEST_CASE("controller emits eta_init until it has a snapshot pair") {
  step_size_controller c;
  c.variant = step_variant::bb;
  c.lambda_kappa = 1.0;
  c.reset(0.125);

  const VectorXd x0 = v2d(0, 0), g0 = v2d(2, 0);
  REQUIRE(c.next_eta(x0, g0) == 0.125);  // no history yet

  const VectorXd x1 = v2d(1, 0), g1 = v2d(3, 0);
  REQUIRE(c.next_eta(x1, g1) == 1.0);  // dx=(1,0), dg=(1,0)
}

TEST_CASE("controller keeps the previous step on a degenerate quotient") {
  step_size_controller c;
  c.variant = step_variant::bb;
  c.lambda_kappa = 1.0;
  c.reset(0.25);

  const VectorXd x = v2d(1, 1), g = v2d(2, 2);
  REQUIRE(c.next_eta(x, g) == 0.25);
  REQUIRE(c.next_eta(x, g) == 0.25);  // dx = 0: reuse
  REQUIRE(c.next_eta(v2d(2, 1), v2d(3, 2)) == 1.0);
}

TEST_CASE("fixed controller never changes") {
  step_size_controller c;
  c.reset(0.7);
  rng r(9);
  for (int i = 0; i < 5; ++i) {
    REQUIRE(c.next_eta(vropt_test::random_vec(r, 3),
                       vropt_test::random_vec(r, 3)) == 0.7);
  }
}
