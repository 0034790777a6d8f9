#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "asymcop/asymmetry.hpp"
#include "asymcop/families.hpp"
#include "asymcop/worked_example.hpp"

using namespace asymcop;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 6.283185307179586;

// Product plus a sine perturbation; the density stays positive while eps * 2 pi^2 k2 < 1.
CopulaSpec perturbed(int k2, double eps) {
  return CopulaSpec::formula(SpecKind::family, "perturbed", {{"k2", k2}, {"eps", eps}},
                             [=](double u, double v) {
                               return u * v + eps * std::sin(kTwoPi * u) *
                                                  std::sin(kTwoPi * k2 * 0.5 * v);
                             });
}

std::vector<SubcopulaSpec> symmetric_specs() {
  return {make_product(), make_upper_bound_M(), make_lower_bound_W(), make_clayton(1.5),
          make_gumbel(2.0)};
}

std::vector<SubcopulaSpec> asymmetric_specs() {
  return {make_cobb_douglas_C(0.25), make_cobb_douglas_C(0.5), make_cobb_douglas_C(0.75),
          make_mixture(0.3, 0.5),    perturbed(4, 0.005),       perturbed(6, 0.005)};
}

}  // namespace

TEST_CASE("mu_1 of the Cobb-Douglas a.e. part") {
  CHECK(cobb_douglas_mu1_closed_form(0.5) == doctest::Approx(4.0 / 63.0).epsilon(1e-15));
  const double m1024 = mu_p(make_cobb_douglas_C(0.5), 1.0, Grid(1024));
  CHECK(std::abs(m1024 - 4.0 / 63.0) < 5e-4);
  CHECK(m1024 == doctest::Approx(0.0634879).epsilon(1e-6));
  const double m2048 = mu_p(make_cobb_douglas_C(0.5), 1.0, Grid(2048));
  CHECK(m2048 == doctest::Approx(0.0634906).epsilon(1e-6));
  CHECK(std::abs(m2048 - 4.0 / 63.0) < std::abs(m1024 - 4.0 / 63.0));

  const std::pair<double, double> reference[] = {{0.25, 0.123076922}, {0.75, 0.0253968},
                                                 {0.9, 0.0089968510}};
  for (const auto& [alpha, value] : reference) {
    CHECK(cobb_douglas_mu1_closed_form(alpha) == doctest::Approx(value).epsilon(1e-6));
    CHECK(std::abs(mu_p(make_cobb_douglas_C(alpha), 1.0, Grid(512)) - value) < 5e-4);
  }
  CHECK(mu_p(make_cobb_douglas_D(0.5), 1.0, Grid(256)) == 0.0);
}

TEST_CASE("property: symmetric specs have zero measure") {
  const Grid g(64);
  for (const auto& c : symmetric_specs()) {
    for (double p : {1.0, 2.0, kInf}) CHECK(mu_p(c, p, g) == 0.0);
  }
}

TEST_CASE("property: measure is transpose invariant and monotone in p") {
  const Grid g(64);
  for (const auto& c : asymmetric_specs()) {
    for (double p : {1.0, 2.0, 3.0, kInf}) CHECK(mu_p(c, p, g) == mu_p(transpose(c), p, g));
    const double m1 = mu_p(c, 1.0, g), m2 = mu_p(c, 2.0, g), mi = mu_p(c, kInf, g);
    CHECK(m1 <= m2 + 1e-6);
    CHECK(m2 <= mi + 1e-6);
  }
}

TEST_CASE("symmetric specs are minimal in the order") {
  const Grid g(64);
  for (const auto& k : symmetric_specs()) {
    for (const auto& c : asymmetric_specs()) {
      const auto r = compare_order(k, c, g, 0.0).relation;
      CHECK(r == Relation::first_more_symmetric);
    }
    for (const auto& k2 : symmetric_specs()) {
      CHECK(compare_order(k, k2, g, 0.0).relation == Relation::equivalent);
    }
  }
}

TEST_CASE("transpose pairs are equivalent") {
  const Grid g(64);
  for (const auto& c : asymmetric_specs()) {
    CHECK(compare_order(c, transpose(c), g, 1e-12).relation == Relation::equivalent);
    CHECK(equivalent(c, transpose(c), g, 1e-12).equivalent);
  }
}

TEST_CASE("perturbations with different shapes are incomparable") {
  const Grid g(64);
  const auto a = perturbed(4, 0.005);
  const auto b = perturbed(6, 0.005);
  REQUIRE(verify_axioms(a, g).all_pass());
  REQUIRE(verify_axioms(b, g).all_pass());
  const auto v = compare_order(a, b, g, 1e-9);
  CHECK(v.relation == Relation::incomparable);
  REQUIRE(v.witnesses.size() == 2);
  CHECK(v.witnesses[0].first > v.witnesses[0].second);
  CHECK(v.witnesses[1].first < v.witnesses[1].second);
}

TEST_CASE("Cobb-Douglas verdicts are flagged as a.e.") {
  const Grid g(32);
  const auto v = compare_order(make_product(), make_cobb_douglas_D(0.5), g, 1e-9);
  CHECK(v.relation == Relation::equivalent);
  CHECK(v.ae_only);
  CHECK_FALSE(compare_order(make_product(), make_clayton(1.0), g, 1e-9).ae_only);
}

TEST_CASE("compare_order rejects a negative tolerance") {
  CHECK_THROWS(compare_order(make_product(), make_product(), Grid(8), -1.0));
}

TEST_CASE("property: the order is transitive on formula-backed triples") {
  const Grid g(32);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  std::uniform_real_distribution<double> a(0.1, 0.9);
  int chains = 0;
  for (int k = 0; k < 60; ++k) {
    const double alpha = a(rng);
    std::vector<SubcopulaSpec> triple;
    for (int q = 0; q < 3; ++q) {
      // alternate between a shared shape and a mixed one so that some triples chain
      triple.push_back(k % 2 == 0 ? SubcopulaSpec(make_mixture(w(rng), alpha))
                                  : SubcopulaSpec(make_mixture(w(rng), a(rng))));
    }
    const auto r12 = compare_order(triple[0], triple[1], g, 0.0).relation;
    const auto r23 = compare_order(triple[1], triple[2], g, 0.0).relation;
    if (r12 == Relation::first_more_symmetric && r23 == Relation::first_more_symmetric) {
      ++chains;
      const auto r13 = compare_order(triple[0], triple[2], g, 0.0).relation;
      CHECK((r13 == Relation::first_more_symmetric || r13 == Relation::equivalent));
    }
  }
  CHECK(chains > 0);
}

TEST_CASE("property: equivalence bounds the difference of measures") {
  const Grid g(64);
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  std::uniform_real_distribution<double> dw(-1e-3, 1e-3);
  for (int k = 0; k < 40; ++k) {
    const double w1 = w(rng);
    const double w2 = std::clamp(w1 + dw(rng), 0.0, 1.0);
    const SubcopulaSpec c1 = make_mixture(w1, 0.5);
    const SubcopulaSpec c2 = make_mixture(w2, 0.5);
    const double tol = 5e-4;
    if (!equivalent(c1, c2, g, tol).equivalent) continue;
    for (double p : {1.0, 2.0, 4.0, kInf}) {
      CHECK(std::abs(mu_p(c1, p, g) - mu_p(c2, p, g)) <= tol + 1e-15);
    }
  }
}

TEST_CASE("distinct classes") {
  const Grid g(256);
  const std::vector<SubcopulaSpec> three{make_product(), make_cobb_douglas_C(0.25),
                                         make_cobb_douglas_C(0.5)};
  const auto p = distinct_classes(three, g, 1e-3);
  CHECK(p.count() == 3);
  const std::vector<SubcopulaSpec> with_duplicates{
      make_product(), make_cobb_douglas_C(0.5), make_upper_bound_M(),
      transpose(make_cobb_douglas_C(0.5)), make_cobb_douglas_D(0.5)};
  const auto q = distinct_classes(with_duplicates, g, 1e-3);
  REQUIRE(q.count() == 2);
  CHECK(q.classes[0] == std::vector<std::size_t>{0, 2, 4});
  CHECK(q.classes[1] == std::vector<std::size_t>{1, 3});
  CHECK(q.representatives == std::vector<std::size_t>{0, 1});
  CHECK(q.max_intra_deviation <= 1e-3);
}

TEST_CASE("golden sweep finds an interior minimum") {
  const auto r = golden_sweep([](double x) { return (x - 0.3) * (x - 0.3) + 1.0; }, 0.0, 1.0);
  CHECK_FALSE(r.non_unimodal);
  CHECK(r.argmin == doctest::Approx(0.3).epsilon(1e-5));
  CHECK(r.min_value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.params.size() == 33);
  CHECK(r.iterations > 0);
  CHECK(r.iterations <= 60);
  for (std::size_t k = 1; k < r.trace.size(); ++k) {
    CHECK(r.trace[k].hi - r.trace[k].lo < r.trace[k - 1].hi - r.trace[k - 1].lo);
  }
}

TEST_CASE("golden sweep flags several local minima") {
  const auto r = golden_sweep([](double x) { return std::cos(20.0 * x); }, 0.0, 3.0);
  CHECK(r.non_unimodal);
  CHECK(r.iterations == 0);
  const auto best = std::min_element(r.values.begin(), r.values.end());
  CHECK(r.min_value == *best);
}

TEST_CASE("golden sweep edge cases") {
  CHECK_THROWS(golden_sweep([](double x) { return x; }, 1.0, 0.0));
  CHECK_THROWS(golden_sweep([](double x) { return x; }, 1.0, 1.0));
  const auto r = golden_sweep([](double x) { return x; }, 0.5, 0.5 + 1e-12);
  CHECK(r.params.size() == 1);
  CHECK(r.argmin == 0.5);
  const auto e = golden_sweep([](double x) { return x; }, 0.0, 1.0);
  CHECK(e.argmin == 0.0);
}

TEST_CASE("most symmetric mixture weight is zero") {
  const auto r = most_symmetric([](double w) { return SubcopulaSpec(make_mixture(w, 0.5)); }, 0.0,
                                1.0, 1.0, Grid(32));
  CHECK(r.argmin == 0.0);
  CHECK(r.min_value == 0.0);
}
