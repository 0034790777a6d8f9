#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "asymcop/grid.hpp"

using namespace asymcop;

namespace {

GridFunction random_function(const Grid& g, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(g.node_count());
  for (auto& x : v) x = d(rng);
  return GridFunction(g, std::move(v));
}

}  // namespace

TEST_CASE("grid rejects sizes that are not powers of two") {
  CHECK_THROWS_AS(Grid(0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1), std::invalid_argument);
  CHECK_THROWS_AS(Grid(12), std::invalid_argument);
  CHECK_THROWS_AS(Grid(-4), std::invalid_argument);
  const Grid g(16);
  CHECK(g.levels() == 4);
  CHECK(g.node_count() == 17u * 17u);
  CHECK(g.coord(16) == 1.0);
}

TEST_CASE("grid function validates its values") {
  const Grid g(4);
  CHECK_THROWS(GridFunction(g, std::vector<double>(24, 0.0)));
  std::vector<double> v(25, 0.0);
  v[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS(GridFunction(g, v));
}

TEST_CASE("constant function integrates to its value") {
  const Grid g(8);
  CHECK(integrate_l1(GridFunction(g, 0.75)) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(norm_lp(GridFunction(g, -2.0), 3.0) == doctest::Approx(2.0));
}

TEST_CASE("interpolation is exact at nodes and bilinear inside") {
  const Grid g(4);
  const auto f = sample([](double u, double v) { return 2 * u + 3 * v + u * v; }, g);
  CHECK(f.interpolate(0.25, 0.5) == f.at(1, 2));
  CHECK(f.interpolate(0.3, 0.7) == doctest::Approx(2 * 0.3 + 3 * 0.7 + 0.3 * 0.7));
  CHECK_THROWS_AS(f.interpolate(1.1, 0.5), std::domain_error);
}

TEST_CASE("sample reports the failing node") {
  const Grid g(4);
  try {
    (void)sample([](double u, double) { return u > 0.6 ? std::nan("") : 0.0; }, g);
    FAIL("expected SampleError");
  } catch (const SampleError& e) {
    CHECK(e.u() == doctest::Approx(0.75));
  }
}

TEST_CASE("norm_lp argument checks") {
  const GridFunction f(Grid(4), 1.0);
  CHECK_THROWS(norm_lp(f, 0.5));
  CHECK_THROWS(norm_lp(f, std::nan("")));
  CHECK(norm_lp(f, std::numeric_limits<double>::infinity()) == 1.0);
}

TEST_CASE("property: norm_lp with p = 1 equals integrate_l1 exactly") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    const auto f = random_function(Grid(16), rng);
    CHECK(norm_lp(f, 1.0) == integrate_l1(f));
  }
}

TEST_CASE("property: integrate_l1 is monotone") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> bump(0.0, 0.5);
  for (int k = 0; k < 50; ++k) {
    const Grid g(32);
    const auto f = random_function(g, rng);
    std::vector<double> larger(f.values().begin(), f.values().end());
    for (auto& x : larger) x += bump(rng);
    CHECK(integrate_l1(f) <= integrate_l1(GridFunction(g, larger)));
  }
}

TEST_CASE("property: norm_lp is bounded by the sup norm") {
  std::mt19937_64 rng(13);
  const double ps[] = {1.0, 1.5, 2.0, 4.0, 10.0};
  for (int k = 0; k < 30; ++k) {
    const auto f = random_function(Grid(16), rng, -1.0, 1.0);
    const double sup = norm_lp(f, std::numeric_limits<double>::infinity());
    for (double p : ps) CHECK(norm_lp(f, p) <= sup + 1e-15);
  }
}

TEST_CASE("property: refinement error ratio is second order for cubics") {
  // exact integral of u^3 + u v^2 - u^2 v over the unit square is 1/4
  const auto poly = [](double u, double v) { return u * u * u + u * v * v - u * u * v + 1.0; };
  const double exact = 1.25;
  double previous = 0.0;
  for (int n = 8; n <= 512; n *= 2) {
    const double err = std::abs(integrate_l1(sample(poly, Grid(n))) - exact);
    if (previous > 0.0) {
      const double ratio = previous / err;
      CHECK(ratio >= 3.0);
      CHECK(ratio <= 5.0);
    }
    previous = err;
  }
}
