#include "support.hpp"

#include "ticktrack/objective.hpp"

#include <doctest.h>

#include <array>
#include <cmath>

using namespace ticktrack;

TEST_CASE("mse_window")
{
  const std::vector<State> p{{1, 0}, {2, 0}};
  const std::vector<State> z{{0, 0}, {0, 0}};
  CHECK(mse_window(p, z) == 2.5);
  CHECK(mse_window(p, p) == 0.0);
  CHECK(mse_window(std::vector<State>{{3, 4}}, std::vector<State>{{0, 0}}) == 25.0);

  CHECK_THROWS_AS(mse_window(p, std::vector<State>{{0, 0}}), InvalidArgument);
  CHECK_THROWS_AS(mse_window(std::vector<State>{}, std::vector<State>{}), InvalidArgument);
}

TEST_CASE("mse_window is translation invariant")
{
  testing::Gen g(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<State> a;
    std::vector<State> b;
    const std::size_t W = g.index(1, 12);
    for (std::size_t k = 0; k < W; ++k) {
      a.push_back(g.state());
      b.push_back(g.state());
    }
    const double ox = g.uniform(-500, 500);
    const double oy = g.uniform(-500, 500);
    auto shift = [&](std::vector<State> v) {
      for (auto& s : v)
        s = {s.x + ox, s.y + oy};
      return v;
    };
    CHECK(mse_window(shift(a), shift(b)) == doctest::Approx(mse_window(a, b)).epsilon(1e-9));
  }
}

TEST_CASE("mu1 and mu2 values")
{
  CHECK(mu1({5, 5}) == 0.0);
  CHECK(mu1({10, -10}) == 0.0);
  CHECK(mu1({63.75, 0}) == 63.75);

  CHECK(mu2({31.875, 31.875}, 63.75) == 0.0);
  CHECK(mu2({0, 0}, 63.75) == 4064.0625);
  CHECK(mu2({100, 0}, 63.75) == 1314.0625);
  CHECK_THROWS_AS(mu2({1, 1}, 0.0), InvalidArgument);
}

TEST_CASE("penalties are invariant under the eight signed permutations")
{
  testing::Gen g(4);
  for (int trial = 0; trial < 200; ++trial) {
    const Control u = g.control(200);
    const std::array<Control, 8> images{{{u.vx, u.vy},
                                         {-u.vx, u.vy},
                                         {u.vx, -u.vy},
                                         {-u.vx, -u.vy},
                                         {u.vy, u.vx},
                                         {-u.vy, u.vx},
                                         {u.vy, -u.vx},
                                         {-u.vy, -u.vx}}};
    for (const auto& v : images) {
      CHECK(mu1(v) == mu1(u));
      CHECK(mu2(v, 63.75) == mu2(u, 63.75));
    }
  }
}

TEST_CASE("total_cost on perfect diagonal tracking is zero")
{
  HumanLikeParams p;
  const Control u{31.875, 31.875};
  std::vector<State> ref;
  for (std::size_t k = 1; k <= p.window; ++k)
    ref.push_back({static_cast<double>(k) * 0.283 * 31.875, static_cast<double>(k) * 0.283 * 31.875});
  const CostBreakdown c = total_cost({0, 0}, u, ref, p);
  CHECK(c.mse <= 1e-24);
  CHECK(c.mu1 == 0.0);
  CHECK(c.mu2 == 0.0);
  CHECK(c.total <= 1e-24);

  p.lambda1 = 0;
  p.lambda2 = 0;
  const std::vector<State> still(p.window, State{0, 0});
  CHECK(total_cost({0, 0}, {0, 0}, still, p).total == 0.0);
}

TEST_CASE("total_cost recomposes from independently computed terms")
{
  testing::Gen g(5);
  const HumanLikeParams p;
  for (int trial = 0; trial < 200; ++trial) {
    const State s = g.state();
    const Control u = g.control(300);
    const auto ref = g.piecewise_linear_window(s, p.window, p.dt);
    const CostBreakdown c = total_cost(s, u, ref, p);

    double sq = 0.0;
    for (std::size_t k = 1; k <= p.window; ++k) {
      const double t = static_cast<double>(k) * p.dt;
      sq += std::pow(s.x + t * u.vx - ref[k - 1].x, 2) + std::pow(s.y + t * u.vy - ref[k - 1].y, 2);
    }
    const double mse = sq / static_cast<double>(p.window);
    const double m1 = std::fabs(std::fabs(u.vx) - std::fabs(u.vy));
    const double m2 = std::pow(std::fabs(u.vx) + std::fabs(u.vy) - 63.75, 2);
    CHECK(c.mse == doctest::Approx(mse).epsilon(1e-10));
    CHECK(c.total == doctest::Approx(mse + 32.0 * m1 + 0.6 * m2).epsilon(1e-10));
    CHECK(c.total == c.mse + p.lambda1 * c.mu1 + p.lambda2 * c.mu2);
    CHECK(c.mse >= 0);
    CHECK(c.mu1 >= 0);
    CHECK(c.mu2 >= 0);
  }
}

TEST_CASE("total_cost is exactly quadratic inside a sign region")
{
  // Second differences of a quadratic are constant; across 3 collinear
  // probes inside one region of sign(vx), sign(vy), sign(|vx|-|vy|).
  testing::Gen g(6);
  const HumanLikeParams p;
  for (int trial = 0; trial < 100; ++trial) {
    const State s = g.state();
    const auto ref = g.piecewise_linear_window(s, p.window, p.dt);
    // Region vx > vy > 0 around a random interior point.
    const double vy = g.uniform(20, 80);
    const double vx = vy + g.uniform(20, 80);
    const double h = 2.0;
    auto f = [&](double dx, double dy) { return total_cost(s, {vx + dx, vy + dy}, ref, p).total; };
    const double dxx1 = f(h, 0) - 2 * f(0, 0) + f(-h, 0);
    const double dxx2 = f(2 * h, 0) - 2 * f(h, 0) + f(0, 0);
    const double dyy1 = f(0, h) - 2 * f(0, 0) + f(0, -h);
    const double dyy2 = f(0, 2 * h) - 2 * f(0, h) + f(0, 0);
    CHECK(dxx1 == doctest::Approx(dxx2).epsilon(1e-6));
    CHECK(dyy1 == doctest::Approx(dyy2).epsilon(1e-6));
  }
}

TEST_CASE("total_cost rejects a wrong-length reference")
{
  const HumanLikeParams p;
  CHECK_THROWS_AS(total_cost({0, 0}, {0, 0}, std::vector<State>(3), p), InvalidArgument);
}
