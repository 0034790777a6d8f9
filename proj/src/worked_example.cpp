#include "asymcop/worked_example.hpp"

#include "asymcop/families.hpp"

namespace asymcop {

double cobb_douglas_mu1_closed_form(double alpha) {
  // For u < v the bracket (2/3)(u^a v - v^a u) has a fixed sign; integrating
  // over the triangle and doubling gives the expression below.
  return 2.0 * (1.0 - alpha) / (3.0 * (alpha + 1.0) * (alpha + 3.0));
}

WorkedExample run_worked_example(double alpha, int n, double t) {
  const Grid grid(n);
  const auto C = make_cobb_douglas_C(alpha);
  const auto D = make_cobb_douglas_D(alpha);
  const SubcopulaSpec K = make_product();

  WorkedExample e;
  e.alpha = alpha;
  e.n = n;
  e.t = t;
  e.mu1_C = mu_p(C, 1.0, grid);
  e.mu1_D = mu_p(D, 1.0, grid);
  e.mu1_C_closed_form = cobb_douglas_mu1_closed_form(alpha);
  e.product_vs_C = compare_order(K, C, grid, 1e-9).relation;
  e.product_vs_D = compare_order(K, D, grid, 1e-9).relation;
  e.classes = distinct_classes({K, make_cobb_douglas_C(0.25), C}, grid, e.class_tol);
  e.tolerance = tolerance_compare(C, D, t, 1.0, grid);
  e.D_null_bracket_sample = D.null_part()->bracket(0.5, 1.0 / 3.0);
  return e;
}

Json to_json(const WorkedExample& e) {
  return Json{
      {"alpha", e.alpha},
      {"n", e.n},
      {"mu1_C", e.mu1_C},
      {"mu1_C_closed_form", e.mu1_C_closed_form},
      {"mu1_D", e.mu1_D},
      {"product_vs_C", to_string(e.product_vs_C)},
      {"product_vs_D", to_string(e.product_vs_D)},
      {"classes", to_json(e.classes)},
      {"class_tolerance", e.class_tol},
      {"class_members", Json::array({"product", "cobb_douglas_C:0.25",
                                     "cobb_douglas_C:" + format_double(e.alpha)})},
      {"tolerance_order", to_json(e.tolerance)},
      {"D_null_bracket_at_half_third", e.D_null_bracket_sample},
      {"note", "C and D verdicts use a.e. parts; the rational-pair null parts are reported, not integrated"},
  };
}

}  // namespace asymcop
