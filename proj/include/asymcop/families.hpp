#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "asymcop/copula.hpp"

namespace asymcop {

/// Archimedean generator phi: [0,1] -> [0, inf], decreasing and convex with
/// phi(1) = 0. phi(0) may be +inf (strict generators).
struct Generator {
  std::string name;
  Params params;
  std::function<double(double)> phi;
};

Generator clayton_generator(double theta);  // (t^-theta - 1) / theta
Generator gumbel_generator(double theta);   // (-ln t)^theta

/// Generalized inverse inf{t in [0,1] : phi(t) <= s}, by bisection to 1e-13
/// (at most 200 iterations).
double generator_inverse(const std::function<double(double)>& phi, double s);

/// phi^[-1](phi(u) + phi(v)). Throws std::invalid_argument when phi(1) != 0
/// beyond 1e-12 or phi fails the decreasing/convex spot checks on 64 points.
CopulaSpec make_archimedean(const Generator& phi);

/// phi^[-1](phi(max(u,v)) + psi(min(u,v))). Requires phi strictly
/// decreasing, psi decreasing and psi - phi increasing (64-point checks).
CopulaSpec make_generalized_archimedean(const Generator& phi, const Generator& psi);

CopulaSpec make_product();
CopulaSpec make_upper_bound_M();
CopulaSpec make_lower_bound_W();
CopulaSpec make_clayton(double theta);  // theta > 0
CopulaSpec make_gumbel(double theta);   // theta >= 1

/// Cobb-Douglas form x^alpha y^beta (beta = 1 - alpha for the classical
/// utility). Evaluator behind the cobb_douglas subcopulas.
double cobb_douglas_utility(double x, double y, double alpha, double beta);

/// a.e. part (2/3) u^alpha v; the rational-pair term (1/3) q_n q_m is kept
/// as a null-part annotation. 0 < alpha < 1.
SubcopulaSpec make_cobb_douglas_C(double alpha);
/// a.e. part (2/3) u v; null part (1/3) q_n^alpha q_m. 0 < alpha < 1.
SubcopulaSpec make_cobb_douglas_D(double alpha);

/// weight * cobb_douglas_C(alpha).ae_part + (1 - weight) * product.
CopulaSpec make_mixture(double weight, double alpha);

// ---------------------------------------------------------------------------
// Registry

/// Raised for unknown family names and out-of-range parameters; the message
/// states the valid range.
class FamilyError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct ParamInfo {
  std::string name;
  double default_value;
  std::string range;  // human-readable, e.g. "(0, inf)"
  std::function<bool(double)> valid;
};

struct FamilyInfo {
  std::string name;
  std::vector<std::string> aliases;
  std::vector<ParamInfo> params;  // first entry is the primary parameter
  std::string description;
};

const std::vector<FamilyInfo>& family_registry();
const FamilyInfo& find_family(std::string_view name_or_alias);

/// Builds a registered family. Missing parameters take their defaults;
/// unknown parameter names are rejected.
SubcopulaSpec make_family(std::string_view name, const Params& params = {});

/// Parses "name" or "name:value[:value...]" (values bind to parameters in
/// registry order).
SubcopulaSpec parse_family_ref(std::string_view ref);

}  // namespace asymcop
