#pragma once

#include "asymcop/asymmetry.hpp"
#include "asymcop/cz.hpp"
#include "asymcop/serialize.hpp"

namespace asymcop {

/// Cobb-Douglas subcopulas C and D side by side: their mu_1 values, the
/// position of the product copula below both, the class count of
/// {product, C(0.25), C(alpha)} and the tolerance-order verdict.
struct WorkedExample {
  double alpha = 0.5;
  int n = 1024;
  double t = 0.5;
  double class_tol = 1e-3;

  double mu1_C = 0.0;
  double mu1_D = 0.0;
  double mu1_C_closed_form = 0.0;  // 2(1-alpha) / (3(alpha+1)(alpha+3))
  Relation product_vs_C = Relation::equivalent;
  Relation product_vs_D = Relation::equivalent;
  ClassPartition classes;
  ToleranceVerdict tolerance;
  /// |D null part - transpose| at (q_n, q_m) = (1/2, 1/3).
  double D_null_bracket_sample = 0.0;
};

/// Closed form of mu_1 for the a.e. part of cobb_douglas_C(alpha).
double cobb_douglas_mu1_closed_form(double alpha);

WorkedExample run_worked_example(double alpha = 0.5, int n = 1024, double t = 0.5);

Json to_json(const WorkedExample& e);

}  // namespace asymcop
