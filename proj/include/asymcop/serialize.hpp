#pragma once

#include <string>

#include <json.hpp>

#include "asymcop/asymmetry.hpp"
#include "asymcop/copula.hpp"
#include "asymcop/cz.hpp"
#include "asymcop/grid.hpp"

namespace asymcop {

using Json = nlohmann::json;

// GridFunction: JSON {n, values} with values flat row-major (v outer, u
// inner); CSV header "u,v,value" in the same order, 17 significant digits.
Json grid_function_to_json(const GridFunction& f);
GridFunction grid_function_from_json(const Json& j);
std::string grid_function_to_csv(const GridFunction& f);
GridFunction grid_function_from_csv(const std::string& text);

/// {kind, family, params, [operands], [weight], [table], [null_part]}
Json spec_to_json(const SubcopulaSpec& s);
Json spec_to_json(const CopulaSpec& c);
/// Inverse of spec_to_json. Family specs are rebuilt through the registry.
SubcopulaSpec spec_from_json(const Json& j);

Json to_json(const AxiomReport& r);
Json to_json(const OrderVerdict& v);
Json to_json(const Equivalence& e);
Json to_json(const ClassPartition& p);
Json to_json(const SweepResult& r);
Json to_json(const CzDecomposition& d);
Json to_json(const ToleranceVerdict& v);

/// "param,mu_p" rows of the coarse scan.
std::string sweep_to_csv(const SweepResult& r);

/// Decimal text with 17 significant digits.
std::string format_double(double x);

}  // namespace asymcop
