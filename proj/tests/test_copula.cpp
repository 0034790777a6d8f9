#include <doctest.h>

#include <cmath>
#include <random>

#include "asymcop/copula.hpp"
#include "asymcop/families.hpp"

using namespace asymcop;

namespace {

std::vector<CopulaSpec> copula_zoo() {
  return {make_product(),   make_upper_bound_M(), make_lower_bound_W(), make_clayton(0.5),
          make_clayton(2.0), make_gumbel(1.0),    make_gumbel(2.0),
          convex_combine(make_clayton(1.0), make_upper_bound_M(), 0.3)};
}

CopulaSpec half_power() {
  return CopulaSpec::formula(SpecKind::family, "half_power", {},
                             [](double u, double v) { return std::sqrt(u) * v; });
}

}  // namespace

TEST_CASE("transpose swaps arguments") {
  const auto t = transpose(half_power());
  CHECK(t(0.25, 0.75) == doctest::Approx(0.21650635).epsilon(1e-8));
  CHECK(t.kind() == SpecKind::transpose);
}

TEST_CASE("property: transpose is an involution") {
  const Grid g(32);
  for (const auto& c : copula_zoo()) {
    const auto tt = transpose(transpose(c));
    const auto a = c.render(g);
    const auto b = tt.render(g);
    CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  }
  const auto tab = CopulaSpec::tabulated(make_clayton(1.0).render(g));
  const auto a = tab.render(g);
  const auto b = transpose(transpose(tab)).render(g);
  CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
}

TEST_CASE("convex_combine rejects weights outside [0, 1]") {
  CHECK_THROWS(convex_combine(make_product(), make_upper_bound_M(), 1.5));
  CHECK_THROWS(convex_combine(make_product(), make_upper_bound_M(), -0.1));
  const auto c = convex_combine(make_product(), make_upper_bound_M(), 0.25);
  CHECK(c(0.4, 0.6) == doctest::Approx(0.25 * 0.24 + 0.75 * 0.4));
}

TEST_CASE("axioms hold for the copula zoo") {
  for (int n : {16, 64}) {
    for (const auto& c : copula_zoo()) {
      const auto r = verify_axioms(c, Grid(n));
      CHECK_MESSAGE(r.all_pass(), c.family());
    }
  }
}

TEST_CASE("axiom checker catches each kind of violation") {
  const Grid g(16);
  const auto not_grounded = CopulaSpec::formula(SpecKind::family, "shifted", {},
                                                [](double u, double v) { return u * v + 0.01; });
  CHECK_FALSE(verify_axioms(not_grounded, g).grounded.pass);

  const auto bad_margin = CopulaSpec::formula(SpecKind::family, "half", {},
                                              [](double u, double v) { return 0.5 * u * v; });
  const auto r1 = verify_axioms(bad_margin, g);
  CHECK(r1.grounded.pass);
  CHECK_FALSE(r1.margins.pass);

  // margins and grounding fine but decreasing somewhere
  const auto bumpy = CopulaSpec::formula(SpecKind::family, "bumpy", {}, [](double u, double v) {
    return u * v + 0.2 * std::sin(6.283185307179586 * u) * std::sin(6.283185307179586 * v);
  });
  const auto r2 = verify_axioms(bumpy, g);
  CHECK(r2.grounded.pass);
  CHECK(r2.margins.pass);
  CHECK_FALSE(r2.two_increasing.pass);
  CHECK(r2.two_increasing.worst < 0.0);
  CHECK_FALSE(r2.all_pass());

  CHECK_THROWS(verify_axioms(make_product(), g, AxiomOptions{-1.0}));
}

TEST_CASE("property: passing specs are bounded and monotone along rows and columns") {
  const Grid g(32);
  for (const auto& c : copula_zoo()) {
    const auto f = c.render(g);
    if (!verify_axioms(f).all_pass()) continue;
    for (int j = 0; j <= 32; ++j) {
      for (int i = 0; i <= 32; ++i) {
        CHECK(f.at(i, j) >= -1e-12);
        CHECK(f.at(i, j) <= 1.0 + 1e-12);
        if (i > 0) CHECK(f.at(i, j) >= f.at(i - 1, j) - 1e-12);
        if (j > 0) CHECK(f.at(i, j) >= f.at(i, j - 1) - 1e-12);
      }
    }
  }
}

TEST_CASE("property: rectangle volumes are sums of cell volumes") {
  const Grid g(32);
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> d(0, 32);
  for (const auto& c : copula_zoo()) {
    const auto f = c.render(g);
    for (int k = 0; k < 50; ++k) {
      int i1 = d(rng), i2 = d(rng), j1 = d(rng), j2 = d(rng);
      if (i1 > i2) std::swap(i1, i2);
      if (j1 > j2) std::swap(j1, j2);
      double sum = 0.0;
      for (int j = j1; j < j2; ++j)
        for (int i = i1; i < i2; ++i) sum += rectangle_volume(f, i, j, i + 1, j + 1);
      CHECK(std::abs(rectangle_volume(f, i1, j1, i2, j2) - sum) <= 1e-12);
    }
  }
}

TEST_CASE("property: zero bracket exactly when symmetric") {
  const Grid g(64);
  for (const auto& c : copula_zoo()) {
    const auto f = c.render(g);
    bool symmetric = true;
    for (int j = 0; j <= 64; ++j)
      for (int i = 0; i <= 64; ++i) symmetric = symmetric && f.at(i, j) == f.at(j, i);
    CHECK((bracket(c, g).max_abs() == 0.0) == symmetric);
  }
  CHECK(bracket(make_cobb_douglas_C(0.5).ae_part(), g).max_abs() > 0.0);
}

TEST_CASE("bracket values at a node") {
  const Grid g(4);
  const double expected[] = {0.19845258, 0.10566243, 0.04245545};
  const double alphas[] = {0.25, 0.5, 0.75};
  for (int k = 0; k < 3; ++k) {
    const auto b = bracket(make_cobb_douglas_C(alphas[k]).ae_part(), g);
    CHECK(b.at(1, 3) == doctest::Approx(expected[k]).epsilon(1e-7));
    CHECK(b.at(3, 1) == b.at(1, 3));
  }
}

TEST_CASE("default tolerance depends on backing") {
  const Grid g(64);
  CHECK(default_tolerance(make_product(), g) == 1e-9);
  CHECK(default_tolerance(CopulaSpec::tabulated(make_product().render(g)), g) == 2.0 / 64);
}

TEST_CASE("sklar construct keeps the margins of the joint") {
  const Grid g(64);
  const auto F = [](double x) { return x * x; };
  const auto G = [](double y) { return y; };
  const auto H = sklar_construct(make_clayton(1.0), F, G, Box{}, g);
  const auto r = verify_axioms(H.values);
  CHECK(r.grounded.pass);
  CHECK(r.two_increasing.pass);
  for (int i = 0; i <= 64; ++i) {
    CHECK(H.values.at(i, 64) == doctest::Approx(F(H.x(i))).epsilon(1e-12));
    CHECK(H.values.at(64, i) == doctest::Approx(G(H.y(i))).epsilon(1e-12));
  }
}

TEST_CASE("sklar rejects bad margins") {
  const Grid g(16);
  const auto id = [](double x) { return x; };
  CHECK_THROWS(sklar_construct(make_product(), [](double x) { return 1.0 - x; }, id, Box{}, g));
  CHECK_THROWS(sklar_construct(make_product(), [](double x) { return 0.5 * x; }, id, Box{}, g));
}

TEST_CASE("subcopula domain must contain 0 and 1") {
  ProductDomain d;
  d.s1 = {0.0, 0.5};
  CHECK_THROWS(SubcopulaSpec(make_product(), std::nullopt, d));
}
