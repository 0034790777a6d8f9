#include "asymcop/asymcop.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "asymcop/asymmetry.hpp"
#include "asymcop/copula.hpp"
#include "asymcop/cz.hpp"
#include "asymcop/empirical.hpp"
#include "asymcop/families.hpp"
#include "asymcop/serialize.hpp"
#include "asymcop/worked_example.hpp"

struct asymcop_spec {
  asymcop::SubcopulaSpec spec;
};

struct asymcop_gridfn {
  asymcop::GridFunction f;
};

namespace {

using asymcop::Json;

thread_local std::string g_last_error;

asymcop_status fail(asymcop_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string document(Json j) {
  j["schema"] = 1;
  return j.dump();
}

// Runs `body`, translating exceptions into status codes.
template <class F>
asymcop_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return ASYMCOP_OK;
  } catch (const asymcop::SampleError& e) {
    return fail(ASYMCOP_ERR_DOMAIN, e.what());
  } catch (const asymcop::FileError& e) {
    return fail(ASYMCOP_ERR_IO, e.what());
  } catch (const asymcop::DataError& e) {
    return fail(ASYMCOP_ERR_PARSE, e.what());
  } catch (const Json::exception& e) {
    return fail(ASYMCOP_ERR_PARSE, e.what());
  } catch (const std::domain_error& e) {
    return fail(ASYMCOP_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(ASYMCOP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(ASYMCOP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ASYMCOP_ERR_INTERNAL, "unknown error");
  }
}

#define REQUIRE_ARG(cond, msg) \
  do {                         \
    if (!(cond)) return fail(ASYMCOP_ERR_INVALID_ARGUMENT, msg); \
  } while (0)

asymcop::Params parse_params(const char* params_json) {
  asymcop::Params p;
  if (params_json == nullptr || *params_json == '\0') return p;
  const Json j = Json::parse(params_json);
  if (!j.is_object()) throw std::invalid_argument("parameters must be a JSON object");
  for (const auto& [k, v] : j.items()) p[k] = v.get<double>();
  return p;
}

asymcop_spec* wrap(asymcop::SubcopulaSpec s) { return new asymcop_spec{std::move(s)}; }

}  // namespace

extern "C" {

const char* asymcop_last_error(void) { return g_last_error.c_str(); }

const char* asymcop_version(void) { return "0.1.0"; }

void asymcop_string_free(char* s) { std::free(s); }

asymcop_status asymcop_spec_from_ref(const char* ref, asymcop_spec** out) {
  REQUIRE_ARG(ref && out, "null argument");
  return guarded([&] { *out = wrap(asymcop::parse_family_ref(ref)); });
}

asymcop_status asymcop_spec_from_family(const char* name, const char* params_json,
                                        asymcop_spec** out) {
  REQUIRE_ARG(name && out, "null argument");
  return guarded([&] { *out = wrap(asymcop::make_family(name, parse_params(params_json))); });
}

asymcop_status asymcop_spec_from_json(const char* json, asymcop_spec** out) {
  REQUIRE_ARG(json && out, "null argument");
  return guarded([&] { *out = wrap(asymcop::spec_from_json(Json::parse(json))); });
}

asymcop_status asymcop_spec_from_csv_sample(const char* path, const char* x_column,
                                            const char* y_column, int n, asymcop_spec** out) {
  REQUIRE_ARG(path && x_column && y_column && out, "null argument");
  return guarded([&] {
    const asymcop::Grid grid(n);
    const auto samples = asymcop::load_csv(path, std::string(x_column), std::string(y_column));
    *out = wrap(asymcop::empirical_copula(samples, grid));
  });
}

asymcop_status asymcop_spec_transpose(const asymcop_spec* spec, asymcop_spec** out) {
  REQUIRE_ARG(spec && out, "null argument");
  return guarded([&] { *out = wrap(asymcop::transpose(spec->spec)); });
}

asymcop_status asymcop_spec_convex_combine(const asymcop_spec* first, const asymcop_spec* second,
                                           double t, asymcop_spec** out) {
  REQUIRE_ARG(first && second && out, "null argument");
  return guarded([&] {
    *out = wrap(asymcop::convex_combine(first->spec.ae_part(), second->spec.ae_part(), t));
  });
}

void asymcop_spec_free(asymcop_spec* spec) { delete spec; }

asymcop_status asymcop_spec_evaluate(const asymcop_spec* spec, double u, double v, double* out) {
  REQUIRE_ARG(spec && out, "null argument");
  REQUIRE_ARG(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0, "point outside the unit square");
  return guarded([&] { *out = spec->spec.ae_part()(u, v); });
}

asymcop_status asymcop_spec_to_json(const asymcop_spec* spec, char** out) {
  REQUIRE_ARG(spec && out, "null argument");
  return guarded([&] { *out = dup(document(asymcop::spec_to_json(spec->spec))); });
}

int asymcop_spec_is_formula(const asymcop_spec* spec) {
  return spec && spec->spec.ae_part().formula_backed() ? 1 : 0;
}

double asymcop_spec_default_tolerance(const asymcop_spec* spec, int n) {
  if (spec == nullptr || n <= 0) return 0.0;
  return spec->spec.ae_part().formula_backed() ? 1e-9 : 2.0 / n;
}

asymcop_status asymcop_family_list(char** out) {
  REQUIRE_ARG(out, "null argument");
  return guarded([&] {
    std::string s;
    for (const auto& f : asymcop::family_registry()) s += (s.empty() ? "" : ",") + f.name;
    *out = dup(s);
  });
}

// ---------------------------------------------------------------------------

asymcop_status asymcop_gridfn_from_json(const char* json, asymcop_gridfn** out) {
  REQUIRE_ARG(json && out, "null argument");
  return guarded([&] {
    *out = new asymcop_gridfn{asymcop::grid_function_from_json(Json::parse(json))};
  });
}

asymcop_status asymcop_gridfn_from_csv(const char* csv, asymcop_gridfn** out) {
  REQUIRE_ARG(csv && out, "null argument");
  const auto status =
      guarded([&] { *out = new asymcop_gridfn{asymcop::grid_function_from_csv(csv)}; });
  return status == ASYMCOP_ERR_INVALID_ARGUMENT ? ASYMCOP_ERR_PARSE : status;
}

asymcop_status asymcop_gridfn_bracket(const asymcop_spec* spec, int n, asymcop_gridfn** out) {
  REQUIRE_ARG(spec && out, "null argument");
  return guarded([&] {
    *out = new asymcop_gridfn{asymcop::bracket(spec->spec.ae_part(), asymcop::Grid(n))};
  });
}

asymcop_status asymcop_gridfn_render(const asymcop_spec* spec, int n, asymcop_gridfn** out) {
  REQUIRE_ARG(spec && out, "null argument");
  return guarded(
      [&] { *out = new asymcop_gridfn{spec->spec.ae_part().render(asymcop::Grid(n))}; });
}

void asymcop_gridfn_free(asymcop_gridfn* f) { delete f; }

int asymcop_gridfn_resolution(const asymcop_gridfn* f) { return f ? f->f.grid().cells() : 0; }

asymcop_status asymcop_gridfn_norm(const asymcop_gridfn* f, double p, double* out) {
  REQUIRE_ARG(f && out, "null argument");
  return guarded([&] { *out = asymcop::norm_lp(f->f, p); });
}

asymcop_status asymcop_gridfn_to_json(const asymcop_gridfn* f, char** out) {
  REQUIRE_ARG(f && out, "null argument");
  return guarded([&] { *out = dup(document(asymcop::grid_function_to_json(f->f))); });
}

asymcop_status asymcop_gridfn_to_csv(const asymcop_gridfn* f, char** out) {
  REQUIRE_ARG(f && out, "null argument");
  return guarded([&] { *out = dup(asymcop::grid_function_to_csv(f->f)); });
}

// ---------------------------------------------------------------------------

asymcop_status asymcop_check_axioms(const asymcop_spec* spec, int n, double tol, uint64_t seed,
                                    char** report_json, int* all_pass) {
  REQUIRE_ARG(spec && report_json, "null argument");
  REQUIRE_ARG(tol > 0.0, "tolerance must be positive");
  return guarded([&] {
    asymcop::AxiomOptions opt;
    opt.tolerance = tol;
    opt.seed = seed;
    const auto r = asymcop::verify_axioms(spec->spec.ae_part(), asymcop::Grid(n), opt);
    Json j = asymcop::to_json(r);
    j["n"] = n;
    j["seed"] = seed;
    if (spec->spec.ae_only()) j["note"] = "a.e. part of a subcopula checked";
    *report_json = dup(document(std::move(j)));
    if (all_pass) *all_pass = r.all_pass() ? 1 : 0;
  });
}

asymcop_status asymcop_measure(const asymcop_spec* spec, double p, int n, double t, double* out) {
  REQUIRE_ARG(spec && out, "null argument");
  REQUIRE_ARG(t > 0.0, "threshold t must be positive");
  return guarded([&] { *out = asymcop::mu_p(spec->spec, p, asymcop::Grid(n), t); });
}

asymcop_status asymcop_compare_order(const asymcop_spec* first, const asymcop_spec* second, int n,
                                     double tol, char** verdict_json) {
  REQUIRE_ARG(first && second && verdict_json, "null argument");
  return guarded([&] {
    const auto v = asymcop::compare_order(first->spec, second->spec, asymcop::Grid(n), tol);
    Json j = asymcop::to_json(v);
    j["mode"] = "order";
    j["n"] = n;
    *verdict_json = dup(document(std::move(j)));
  });
}

asymcop_status asymcop_compare_equivalent(const asymcop_spec* first, const asymcop_spec* second,
                                          int n, double tol, char** verdict_json) {
  REQUIRE_ARG(first && second && verdict_json, "null argument");
  return guarded([&] {
    const auto e = asymcop::equivalent(first->spec, second->spec, asymcop::Grid(n), tol);
    Json j = asymcop::to_json(e);
    j["relation"] = e.equivalent ? "equivalent" : "not_equivalent";
    j["mode"] = "equiv";
    j["n"] = n;
    j["tolerance"] = tol;
    if (first->spec.ae_only() || second->spec.ae_only()) j["note"] = "verdict valid a.e. only";
    *verdict_json = dup(document(std::move(j)));
  });
}

asymcop_status asymcop_compare_tolerance(const asymcop_spec* first, const asymcop_spec* second,
                                         double t, double p, int n, char** verdict_json) {
  REQUIRE_ARG(first && second && verdict_json, "null argument");
  return guarded([&] {
    const auto v = asymcop::tolerance_compare(first->spec, second->spec, t, p, asymcop::Grid(n));
    Json j = asymcop::to_json(v);
    j["mode"] = "tolerance";
    j["n"] = n;
    *verdict_json = dup(document(std::move(j)));
  });
}

asymcop_status asymcop_distinct_classes(const asymcop_spec* const* specs, size_t count, int n,
                                        double tol, char** partition_json) {
  REQUIRE_ARG(specs && partition_json, "null argument");
  REQUIRE_ARG(count > 0, "need at least one spec");
  return guarded([&] {
    std::vector<asymcop::SubcopulaSpec> list;
    for (std::size_t k = 0; k < count; ++k) {
      if (!specs[k]) throw std::invalid_argument("null spec in list");
      list.push_back(specs[k]->spec);
    }
    Json j = asymcop::to_json(asymcop::distinct_classes(list, asymcop::Grid(n), tol));
    j["n"] = n;
    j["tolerance"] = tol;
    *partition_json = dup(document(std::move(j)));
  });
}

asymcop_status asymcop_cz_decompose(const asymcop_gridfn* f, double t, char** decomposition_json,
                                    char** good_csv, char** bad_csv) {
  REQUIRE_ARG(f && decomposition_json, "null argument");
  return guarded([&] {
    const auto d = asymcop::cz_decompose(f->f, t);
    Json j = asymcop::to_json(d);
    j["n"] = f->f.grid().cells();
    *decomposition_json = dup(document(std::move(j)));
    if (good_csv) *good_csv = dup(asymcop::grid_function_to_csv(d.good));
    if (bad_csv) *bad_csv = dup(asymcop::grid_function_to_csv(d.bad));
  });
}

asymcop_status asymcop_sweep(const char* family, const char* base_params_json, const char* param,
                             double a, double b, double p, int n, char** summary_json,
                             char** scan_csv) {
  REQUIRE_ARG(family && summary_json, "null argument");
  return guarded([&] {
    const auto& info = asymcop::find_family(family);
    if (info.params.empty()) {
      throw asymcop::FamilyError("family " + info.name + " has no parameter to sweep");
    }
    const std::string name = param && *param ? std::string(param) : info.params.front().name;
    const auto base = parse_params(base_params_json);
    const asymcop::Grid grid(n);
    const auto r = asymcop::most_symmetric(
        [&](double x) {
          auto q = base;
          q[name] = x;
          return asymcop::make_family(info.name, q);
        },
        a, b, p, grid);
    Json j = asymcop::to_json(r);
    j["family"] = info.name;
    j["param"] = name;
    j["range"] = Json::array({a, b});
    j["p"] = std::isinf(p) ? Json("inf") : Json(p);
    j["n"] = n;
    *summary_json = dup(document(std::move(j)));
    if (scan_csv) *scan_csv = dup(asymcop::sweep_to_csv(r));
  });
}

asymcop_status asymcop_worked_example(double alpha, int n, double t, char** report_json) {
  REQUIRE_ARG(report_json, "null argument");
  return guarded(
      [&] { *report_json = dup(document(asymcop::to_json(asymcop::run_worked_example(alpha, n, t)))); });
}

}  // extern "C"
