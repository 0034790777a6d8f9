#include "asymcop/serialize.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "asymcop/families.hpp"

namespace asymcop {

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

Json grid_function_to_json(const GridFunction& f) {
  return Json{{"n", f.grid().cells()},
              {"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

GridFunction grid_function_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("values")) {
    throw std::invalid_argument("grid function JSON needs fields n and values");
  }
  return GridFunction(Grid(j.at("n").get<int>()), j.at("values").get<std::vector<double>>());
}

std::string grid_function_to_csv(const GridFunction& f) {
  std::ostringstream os;
  os.precision(17);
  os << "u,v,value\n";
  const Grid& g = f.grid();
  for (int j = 0; j <= g.cells(); ++j) {
    for (int i = 0; i <= g.cells(); ++i) {
      os << g.coord(i) << ',' << g.coord(j) << ',' << f.at(i, j) << '\n';
    }
  }
  return os.str();
}

GridFunction grid_function_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::array<double, 3>> rows;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (line_no == 1 && line.rfind("u,v,value", 0) == 0) continue;
    std::istringstream ls(line);
    std::array<double, 3> r{};
    char c1 = 0, c2 = 0;
    if (!(ls >> r[0] >> c1 >> r[1] >> c2 >> r[2]) || c1 != ',' || c2 != ',') {
      throw std::invalid_argument("grid function CSV: malformed line " + std::to_string(line_no));
    }
    rows.push_back(r);
  }
  const auto side = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(rows.size()))));
  if (side * side != static_cast<long long>(rows.size()) || side < 3) {
    throw std::invalid_argument("grid function CSV: row count " + std::to_string(rows.size()) +
                                " is not (n+1)^2");
  }
  const Grid grid(static_cast<int>(side - 1));
  std::vector<double> values(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const int i = static_cast<int>(k % side), j = static_cast<int>(k / side);
    if (std::abs(rows[k][0] - grid.coord(i)) > 1e-12 || std::abs(rows[k][1] - grid.coord(j)) > 1e-12) {
      throw std::invalid_argument("grid function CSV: row " + std::to_string(k + 1) +
                                  " is not at node (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ")");
    }
    values[k] = rows[k][2];
  }
  return GridFunction(grid, std::move(values));
}

// ---------------------------------------------------------------------------

Json spec_to_json(const CopulaSpec& c) {
  Json j{{"kind", to_string(c.kind())}, {"family", c.family()}, {"params", Json::object()}};
  for (const auto& [k, v] : c.params()) j["params"][k] = v;
  if (!c.operands().empty()) {
    j["operands"] = Json::array();
    for (const auto& op : c.operands()) j["operands"].push_back(spec_to_json(op));
  }
  if (c.kind() == SpecKind::mixture) j["weight"] = c.weight();
  if (const auto* t = c.table()) j["table"] = grid_function_to_json(*t);
  return j;
}

Json spec_to_json(const SubcopulaSpec& s) {
  Json j = spec_to_json(s.ae_part());
  if (s.null_part()) {
    j["null_part"] = {{"description", s.null_part()->description},
                      {"bracket", s.null_part()->bracket_description}};
    j["domain"] = s.domain().description;
  }
  return j;
}

namespace {

Params params_of(const Json& j) {
  Params p;
  if (j.contains("params")) {
    for (const auto& [k, v] : j.at("params").items()) p[k] = v.get<double>();
  }
  return p;
}

}  // namespace

SubcopulaSpec spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw std::invalid_argument("spec JSON needs a kind");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "tabulated") {
    return CopulaSpec::tabulated(grid_function_from_json(j.at("table")),
                                 j.value("family", std::string("tabulated")));
  }
  if (kind == "transpose") {
    const auto& ops = j.at("operands");
    if (ops.size() != 1) throw std::invalid_argument("transpose spec needs one operand");
    return transpose(spec_from_json(ops[0]));
  }
  if (kind == "mixture") {
    const auto& ops = j.at("operands");
    if (ops.size() != 2) throw std::invalid_argument("mixture spec needs two operands");
    return convex_combine(spec_from_json(ops[0]).ae_part(), spec_from_json(ops[1]).ae_part(),
                          j.at("weight").get<double>());
  }
  if (kind == "family" || kind == "generator") {
    const auto family = j.at("family").get<std::string>();
    Params p = params_of(j);
    if (family == "generalized_archimedean") {
      // Stored with phi_/psi_ prefixes by make_generalized_archimedean.
      Params q;
      if (p.count("phi_theta")) q["theta"] = p["phi_theta"];
      if (p.count("psi_scale")) q["psi_scale"] = p["psi_scale"];
      p = q;
    }
    return make_family(family, p);
  }
  throw std::invalid_argument("unknown spec kind '" + kind + "'");
}

// ---------------------------------------------------------------------------

namespace {

Json node(const NodeWitness& w) { return Json::array({w.u, w.v}); }

}  // namespace

Json to_json(const AxiomReport& r) {
  auto nodecheck = [](const AxiomReport::NodeCheck& c) {
    return Json{{"pass", c.pass}, {"worst", c.worst}, {"witness", node(c.witness)}};
  };
  return Json{
      {"tolerance", r.tolerance},
      {"all_pass", r.all_pass()},
      {"grounded", nodecheck(r.grounded)},
      {"margins", nodecheck(r.margins)},
      {"two_increasing",
       {{"pass", r.two_increasing.pass},
        {"worst", r.two_increasing.worst},
        {"witness", Json::array({node(r.two_increasing.lower), node(r.two_increasing.upper)})}}},
      {"lipschitz",
       {{"pass", r.lipschitz.pass},
        {"worst", r.lipschitz.worst},
        {"witness", Json::array({node(r.lipschitz.first), node(r.lipschitz.second)})}}},
      {"fh_envelope", nodecheck(r.fh_envelope)},
  };
}

Json to_json(const OrderVerdict& v) {
  Json w = Json::array();
  for (const auto& x : v.witnesses) {
    w.push_back({{"node", node(x.node)}, {"bracket_first", x.first}, {"bracket_second", x.second}});
  }
  Json j{{"relation", to_string(v.relation)}, {"tolerance", v.tolerance}, {"witnesses", w}};
  if (v.ae_only) j["note"] = "verdict valid a.e. only";
  return j;
}

Json to_json(const Equivalence& e) {
  return Json{{"equivalent", e.equivalent}, {"sup_deviation", e.sup_deviation}};
}

Json to_json(const ClassPartition& p) {
  return Json{{"class_count", p.count()},
              {"classes", p.classes},
              {"representatives", p.representatives},
              {"max_intra_deviation", p.max_intra_deviation}};
}

Json to_json(const SweepResult& r) {
  Json trace = Json::array();
  for (const auto& b : r.trace) trace.push_back(Json::array({b.lo, b.hi}));
  return Json{{"argmin", r.argmin},
              {"value", r.min_value},
              {"iterations", r.iterations},
              {"non_unimodal", r.non_unimodal},
              {"scan_points", r.params.size()},
              {"trace", trace}};
}

std::string sweep_to_csv(const SweepResult& r) {
  std::ostringstream os;
  os.precision(17);
  os << "param,mu_p\n";
  for (std::size_t k = 0; k < r.params.size(); ++k) os << r.params[k] << ',' << r.values[k] << '\n';
  return os.str();
}

Json to_json(const CzDecomposition& d) {
  Json squares = Json::array();
  for (const auto& s : d.squares) {
    squares.push_back({{"level", s.square.level},
                       {"i", s.square.i},
                       {"j", s.square.j},
                       {"avg", s.average}});
  }
  return Json{{"t", d.threshold},
              {"squares", squares},
              {"l1_f", d.input_l1},
              {"l1_g", d.good_cells.l1()},
              {"l1_b", d.bad_cells.l1()},
              {"area_union", d.area_union()},
              {"sup_g_inside", d.sup_good_inside()},
              {"sup_g_outside", d.sup_good_outside()},
              {"square_avg_bound_2d", 4.0 * d.threshold},
              {"square_avg_bound_1d", 2.0 * d.threshold}};
}

Json to_json(const ToleranceVerdict& v) {
  Json j{{"relation", to_string(v.relation)},
         {"paper_orientation", to_string(v.paper_orientation)},
         {"t", v.threshold},
         {"p", std::isinf(v.p) ? Json("inf") : Json(v.p)},
         {"good_l1", Json::array({v.good_l1_first, v.good_l1_second})},
         {"good_lp", Json::array({v.good_lp_first, v.good_lp_second})},
         {"bad_l1", Json::array({v.bad_l1_first, v.bad_l1_second})},
         {"squares", Json::array({v.squares_first, v.squares_second})}};
  if (v.ae_only) j["note"] = "verdict valid a.e. only";
  return j;
}

}  // namespace asymcop
