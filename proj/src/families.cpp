#include "asymcop/families.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace asymcop {

namespace {

constexpr int kSpotChecks = 64;
constexpr double kInverseTol = 1e-13;
constexpr int kInverseMaxIter = 200;

std::string fmt_param(const char* name, double value) {
  std::ostringstream os;
  os.precision(17);
  os << name << " = " << value;
  return os.str();
}

std::vector<double> spot_samples(const std::function<double(double)>& f) {
  std::vector<double> s(kSpotChecks);
  for (int k = 1; k <= kSpotChecks; ++k) s[k - 1] = f(static_cast<double>(k) / kSpotChecks);
  return s;
}

void check_generator(const Generator& g) {
  if (!g.phi) throw std::invalid_argument("generator " + g.name + " has no function");
  if (std::abs(g.phi(1.0)) > 1e-12) {
    throw std::invalid_argument("generator " + g.name + " must vanish at 1");
  }
  const auto s = spot_samples(g.phi);
  for (int k = 0; k + 1 < kSpotChecks; ++k) {
    if (!(s[k + 1] <= s[k])) {
      throw std::invalid_argument("generator " + g.name + " is not decreasing near t = " +
                                  std::to_string((k + 1.0) / kSpotChecks));
    }
  }
  for (int k = 0; k + 2 < kSpotChecks; ++k) {
    if (s[k] - 2.0 * s[k + 1] + s[k + 2] < -1e-9) {
      throw std::invalid_argument("generator " + g.name + " is not convex near t = " +
                                  std::to_string((k + 2.0) / kSpotChecks));
    }
  }
}

}  // namespace

Generator clayton_generator(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw FamilyError(fmt_param("clayton theta", theta) + " outside valid range (0, inf)");
  }
  return {"clayton",
          {{"theta", theta}},
          [theta](double t) { return (std::pow(t, -theta) - 1.0) / theta; }};
}

Generator gumbel_generator(double theta) {
  if (!(theta >= 1.0) || !std::isfinite(theta)) {
    throw FamilyError(fmt_param("gumbel theta", theta) + " outside valid range [1, inf)");
  }
  return {"gumbel", {{"theta", theta}}, [theta](double t) { return std::pow(-std::log(t), theta); }};
}

double generator_inverse(const std::function<double(double)>& phi, double s) {
  if (s <= 0.0) return 1.0;
  if (phi(0.0) <= s) return 0.0;
  double lo = 0.0, hi = 1.0;  // phi(lo) > s >= phi(hi)
  for (int it = 0; it < kInverseMaxIter && hi - lo > kInverseTol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (phi(mid) <= s) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

CopulaSpec make_archimedean(const Generator& g) {
  check_generator(g);
  return CopulaSpec::formula(SpecKind::generator, "archimedean_" + g.name, g.params,
                             [phi = g.phi](double u, double v) {
                               return generator_inverse(phi, phi(u) + phi(v));
                             });
}

CopulaSpec make_generalized_archimedean(const Generator& phi, const Generator& psi) {
  if (!phi.phi || !psi.phi) throw std::invalid_argument("generalized archimedean needs phi and psi");
  const auto a = spot_samples(phi.phi);
  const auto b = spot_samples(psi.phi);
  for (int k = 0; k + 1 < kSpotChecks; ++k) {
    const double t = (k + 1.0) / kSpotChecks;
    if (!(a[k + 1] < a[k])) {
      throw std::invalid_argument("phi must be strictly decreasing (fails near t = " +
                                  std::to_string(t) + ")");
    }
    if (!(b[k + 1] <= b[k])) {
      throw std::invalid_argument("psi must be decreasing (fails near t = " + std::to_string(t) +
                                  ")");
    }
    if ((b[k + 1] - a[k + 1]) - (b[k] - a[k]) < -1e-12 * (1.0 + std::abs(a[k]))) {
      throw std::invalid_argument("psi - phi must be increasing (fails near t = " +
                                  std::to_string(t) + ")");
    }
  }
  Params params;
  for (const auto& [k, v] : phi.params) params["phi_" + k] = v;
  for (const auto& [k, v] : psi.params) params["psi_" + k] = v;
  return CopulaSpec::formula(SpecKind::generator, "generalized_archimedean", std::move(params),
                             [f = phi.phi, g = psi.phi](double u, double v) {
                               return generator_inverse(f, f(std::max(u, v)) + g(std::min(u, v)));
                             });
}

CopulaSpec make_product() {
  return CopulaSpec::formula(SpecKind::family, "product", {},
                             [](double u, double v) { return u * v; });
}

CopulaSpec make_upper_bound_M() {
  return CopulaSpec::formula(SpecKind::family, "frechet_upper_M", {},
                             [](double u, double v) { return std::min(u, v); });
}

CopulaSpec make_lower_bound_W() {
  return CopulaSpec::formula(SpecKind::family, "frechet_lower_W", {},
                             [](double u, double v) { return std::max(u + v - 1.0, 0.0); });
}

CopulaSpec make_clayton(double theta) { return make_archimedean(clayton_generator(theta)); }

CopulaSpec make_gumbel(double theta) { return make_archimedean(gumbel_generator(theta)); }

double cobb_douglas_utility(double x, double y, double alpha, double beta) {
  return std::pow(x, alpha) * std::pow(y, beta);
}

namespace {

void check_alpha(const char* family, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw FamilyError(std::string(family) + ": " + fmt_param("alpha", alpha) +
                      " outside valid range (0, 1)");
  }
}

ProductDomain rational_split_domain() {
  return {"[0,1] x [0,1]; rational pairs (q_n, q_m) carry the null part", {0.0, 1.0}, {0.0, 1.0}};
}

}  // namespace

SubcopulaSpec make_cobb_douglas_C(double alpha) {
  check_alpha("cobb_douglas_C", alpha);
  auto ae = CopulaSpec::formula(SpecKind::family, "cobb_douglas_C", {{"alpha", alpha}},
                                [alpha](double u, double v) {
                                  return (2.0 / 3.0) * cobb_douglas_utility(u, v, alpha, 1.0);
                                });
  NullPart null_part{"(1/3) q_n q_m on rational pairs",
                     [](double q1, double q2) { return cobb_douglas_utility(q1, q2, 1.0, 1.0) / 3.0; },
                     "0 (q_n q_m is symmetric)"};
  return SubcopulaSpec(std::move(ae), std::move(null_part), rational_split_domain());
}

SubcopulaSpec make_cobb_douglas_D(double alpha) {
  check_alpha("cobb_douglas_D", alpha);
  auto ae = CopulaSpec::formula(SpecKind::family, "cobb_douglas_D", {{"alpha", alpha}},
                                [](double u, double v) {
                                  return (2.0 / 3.0) * cobb_douglas_utility(u, v, 1.0, 1.0);
                                });
  NullPart null_part{"(1/3) q_n^alpha q_m on rational pairs",
                     [alpha](double q1, double q2) {
                       return cobb_douglas_utility(q1, q2, alpha, 1.0) / 3.0;
                     },
                     "D_s(q_n, q_m) = |(1/3) q_n^alpha q_m - (1/3) q_n q_m^alpha|"};
  return SubcopulaSpec(std::move(ae), std::move(null_part), rational_split_domain());
}

CopulaSpec make_mixture(double weight, double alpha) {
  if (!(weight >= 0.0 && weight <= 1.0)) {
    throw FamilyError("mixture: " + fmt_param("weight", weight) + " outside valid range [0, 1]");
  }
  return convex_combine(make_cobb_douglas_C(alpha).ae_part(), make_product(), weight);
}

// ---------------------------------------------------------------------------

namespace {

bool positive(double x) { return x > 0.0 && std::isfinite(x); }
bool at_least_one(double x) { return x >= 1.0 && std::isfinite(x); }
bool open_unit(double x) { return x > 0.0 && x < 1.0; }
bool closed_unit(double x) { return x >= 0.0 && x <= 1.0; }
bool half_open_unit(double x) { return x > 0.0 && x <= 1.0; }

std::vector<FamilyInfo> build_registry() {
  return {
      {"product", {"pi", "independence"}, {}, "independence copula uv"},
      {"frechet_upper_M", {"M", "upper", "comonotone"}, {}, "upper bound min(u,v)"},
      {"frechet_lower_W", {"W", "lower", "countermonotone"}, {}, "lower bound max(u+v-1,0)"},
      {"archimedean_clayton",
       {"clayton"},
       {{"theta", 1.0, "(0, inf)", positive}},
       "Clayton, generator (t^-theta - 1)/theta"},
      {"archimedean_gumbel",
       {"gumbel"},
       {{"theta", 2.0, "[1, inf)", at_least_one}},
       "Gumbel, generator (-ln t)^theta"},
      {"generalized_archimedean",
       {"generalized"},
       {{"theta", 1.0, "(0, inf)", positive}, {"psi_scale", 0.5, "(0, 1]", half_open_unit}},
       "phi^[-1](phi(max) + psi(min)) with Clayton phi and psi = psi_scale * phi"},
      {"cobb_douglas_C",
       {"cd_c"},
       {{"alpha", 0.5, "(0, 1)", open_unit}},
       "subcopula, a.e. part (2/3) u^alpha v"},
      {"cobb_douglas_D",
       {"cd_d"},
       {{"alpha", 0.5, "(0, 1)", open_unit}},
       "subcopula, a.e. part (2/3) u v"},
      {"mixture",
       {},
       {{"weight", 0.5, "[0, 1]", closed_unit}, {"alpha", 0.5, "(0, 1)", open_unit}},
       "weight * cobb_douglas_C(alpha) + (1 - weight) * product"},
  };
}

}  // namespace

const std::vector<FamilyInfo>& family_registry() {
  static const std::vector<FamilyInfo> registry = build_registry();
  return registry;
}

const FamilyInfo& find_family(std::string_view name) {
  for (const auto& f : family_registry()) {
    if (f.name == name) return f;
    if (std::find(f.aliases.begin(), f.aliases.end(), name) != f.aliases.end()) return f;
  }
  std::string known;
  for (const auto& f : family_registry()) known += (known.empty() ? "" : ", ") + f.name;
  throw FamilyError("unknown family '" + std::string(name) + "' (known: " + known + ")");
}

SubcopulaSpec make_family(std::string_view name, const Params& given) {
  const FamilyInfo& info = find_family(name);
  Params p;
  for (const auto& pi : info.params) p[pi.name] = pi.default_value;
  for (const auto& [k, v] : given) {
    const auto it = std::find_if(info.params.begin(), info.params.end(),
                                 [&](const ParamInfo& pi) { return pi.name == k; });
    if (it == info.params.end()) {
      throw FamilyError("family " + info.name + " has no parameter '" + k + "'");
    }
    if (!it->valid(v)) {
      throw FamilyError(info.name + ": " + fmt_param(k.c_str(), v) + " outside valid range " +
                        it->range);
    }
    p[k] = v;
  }

  const std::string& n = info.name;
  if (n == "product") return make_product();
  if (n == "frechet_upper_M") return make_upper_bound_M();
  if (n == "frechet_lower_W") return make_lower_bound_W();
  if (n == "archimedean_clayton") return make_clayton(p.at("theta"));
  if (n == "archimedean_gumbel") return make_gumbel(p.at("theta"));
  if (n == "generalized_archimedean") {
    const Generator phi = clayton_generator(p.at("theta"));
    const double scale = p.at("psi_scale");
    Generator psi{"scaled_clayton",
                  {{"theta", p.at("theta")}, {"scale", scale}},
                  [f = phi.phi, scale](double t) { return scale * f(t); }};
    return make_generalized_archimedean(phi, psi);
  }
  if (n == "cobb_douglas_C") return make_cobb_douglas_C(p.at("alpha"));
  if (n == "cobb_douglas_D") return make_cobb_douglas_D(p.at("alpha"));
  if (n == "mixture") return make_mixture(p.at("weight"), p.at("alpha"));
  throw FamilyError("family " + n + " is registered but has no factory");
}

SubcopulaSpec parse_family_ref(std::string_view ref) {
  auto colon = ref.find(':');
  const FamilyInfo& info = find_family(ref.substr(0, colon));
  Params p;
  std::size_t k = 0;
  while (colon != std::string_view::npos) {
    ref.remove_prefix(colon + 1);
    colon = ref.find(':');
    const std::string_view tok = ref.substr(0, colon);
    if (k >= info.params.size()) throw FamilyError("too many parameters for family " + info.name);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc() || end != tok.data() + tok.size()) {
      throw FamilyError("cannot parse parameter '" + std::string(tok) + "' for family " +
                        info.name);
    }
    p[info.params[k++].name] = value;
  }
  return make_family(info.name, p);
}

}  // namespace asymcop
