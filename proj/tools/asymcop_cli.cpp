// Command-line front end. Everything numeric goes through the C interface in
// asymcop/asymcop.h; this file only parses arguments and formats output.
//
// Exit codes: 0 success, 1 axiom check failed, 2 usage or validation error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "asymcop/asymcop.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpecDeleter {
  void operator()(asymcop_spec* s) const { asymcop_spec_free(s); }
};
struct GridFnDeleter {
  void operator()(asymcop_gridfn* f) const { asymcop_gridfn_free(f); }
};
using SpecPtr = std::unique_ptr<asymcop_spec, SpecDeleter>;
using GridFnPtr = std::unique_ptr<asymcop_gridfn, GridFnDeleter>;

void check(asymcop_status s) {
  if (s != ASYMCOP_OK) throw UsageError(asymcop_last_error());
}

std::string take(char* s) {
  std::string out = s ? s : "";
  asymcop_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------

struct Common {
  int n = 256;
  bool n_given = false;
  std::optional<double> tol;
  std::string p = "1";
  double t = 1.0;
  bool t_given = false;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 0x5eed5eedULL;
};

struct FamilyFlags {
  std::string family;
  std::optional<double> theta, alpha, weight, psi_scale;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-n", c.n, "grid resolution (power of two, 4..4096)");
  cmd->add_option("--tol", c.tol, "tolerance (default: 1e-9 formula, 2/n tabulated)");
  cmd->add_option("-p", c.p, "norm exponent >= 1 or 'inf'");
  cmd->add_option("-t", c.t, "decomposition threshold in (0, 1]");
  cmd->add_option("--format", c.format, "json | text | csv")
      ->check(CLI::IsMember({"json", "text", "csv"}));
  cmd->add_option("--out", c.out, "write output to a file instead of stdout");
  cmd->add_option("--seed", c.seed, "seed for randomized checks");
}

void add_family_flags(CLI::App* cmd, FamilyFlags& f) {
  cmd->add_option("--family", f.family, "registered family name");
  cmd->add_option("--theta", f.theta, "Archimedean parameter");
  cmd->add_option("--alpha", f.alpha, "Cobb-Douglas exponent");
  cmd->add_option("--weight", f.weight, "mixture weight");
  cmd->add_option("--psi-scale", f.psi_scale, "generalized Archimedean psi = scale * phi");
}

void validate(Common& c, const CLI::App* cmd) {
  c.n_given = cmd->count("-n") > 0;
  c.t_given = cmd->count("-t") > 0;
  if (c.n < 4 || c.n > 4096 || (c.n & (c.n - 1)) != 0) {
    throw UsageError("-n must be a power of two between 4 and 4096");
  }
  if (!(c.t > 0.0 && c.t <= 1.0)) throw UsageError("-t must lie in (0, 1]");
  if (c.tol && !(*c.tol > 0.0)) throw UsageError("--tol must be positive");
}

double parse_p(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return std::numeric_limits<double>::infinity();
  double p = 0.0;
  std::size_t used = 0;
  try {
    p = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !(p >= 1.0)) throw UsageError("-p must be >= 1 or 'inf'");
  return p;
}

Json p_json(double p) { return std::isinf(p) ? Json("inf") : Json(p); }

SpecPtr spec_from_ref(const std::string& ref) {
  asymcop_spec* s = nullptr;
  if (!ref.empty() && ref.front() == '@') {
    const std::string text = read_file(ref.substr(1));
    check(asymcop_spec_from_json(text.c_str(), &s));
  } else {
    check(asymcop_spec_from_ref(ref.c_str(), &s));
  }
  return SpecPtr(s);
}

SpecPtr spec_from_flags(const FamilyFlags& f) {
  Json params = Json::object();
  if (f.theta) params["theta"] = *f.theta;
  if (f.alpha) params["alpha"] = *f.alpha;
  if (f.weight) params["weight"] = *f.weight;
  if (f.psi_scale) params["psi_scale"] = *f.psi_scale;
  asymcop_spec* s = nullptr;
  check(asymcop_spec_from_family(f.family.c_str(), params.dump().c_str(), &s));
  return SpecPtr(s);
}

SpecPtr resolve_spec(const FamilyFlags& f, const std::string& positional) {
  if (!f.family.empty() && !positional.empty()) {
    throw UsageError("give either --family or a spec reference, not both");
  }
  if (!f.family.empty()) return spec_from_flags(f);
  if (!positional.empty()) return spec_from_ref(positional);
  throw UsageError("a spec is required (--family NAME or NAME[:param] or @file.json)");
}

SpecPtr transposed(SpecPtr s) {
  asymcop_spec* t = nullptr;
  check(asymcop_spec_transpose(s.get(), &t));
  return SpecPtr(t);
}

double tolerance_for(const Common& c, const asymcop_spec* s) {
  return c.tol ? *c.tol : asymcop_spec_default_tolerance(s, c.n);
}

// ---------------------------------------------------------------------------
// Output

void flatten(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else {
    os << prefix << ": " << j.dump() << '\n';
  }
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw UsageError("cannot write " + c.out);
  f << text;
}

void emit_json(const Common& c, const Json& j) {
  if (c.format == "text") {
    std::ostringstream os;
    flatten(j, "", os);
    emit(c, os.str());
  } else {
    emit(c, j.dump() + "\n");
  }
}

void write_side_file(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_check(const Common& c, const FamilyFlags& f, const std::string& ref) {
  const auto spec = resolve_spec(f, ref);
  char* report = nullptr;
  int pass = 0;
  check(asymcop_check_axioms(spec.get(), c.n, tolerance_for(c, spec.get()), c.seed, &report, &pass));
  emit_json(c, Json::parse(take(report)));
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_measure(const Common& c, const FamilyFlags& f, const std::string& ref) {
  const auto spec = resolve_spec(f, ref);
  const double p = parse_p(c.p);
  double value = 0.0;
  check(asymcop_measure(spec.get(), p, c.n, c.t, &value));
  const std::string label = f.family.empty() ? ref : f.family;
  if (c.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "spec,p,n,mu_p\n" << label << ',' << c.p << ',' << c.n << ',' << value << '\n';
    emit(c, os.str());
    return kExitOk;
  }
  emit_json(c, Json{{"schema", 1},
                    {"command", "measure"},
                    {"spec", label},
                    {"p", p_json(p)},
                    {"n", c.n},
                    {"t", c.t},
                    {"cell_width", 1.0 / c.n},
                    {"mu_p", value}});
  return kExitOk;
}

int cmd_compare(const Common& c, const std::string& mode, const std::vector<std::string>& refs,
                bool transpose_first, bool transpose_second) {
  if (refs.size() != 2) throw UsageError("compare needs exactly two spec references");
  auto a = spec_from_ref(refs[0]);
  auto b = spec_from_ref(refs[1]);
  if (transpose_first) a = transposed(std::move(a));
  if (transpose_second) b = transposed(std::move(b));
  const double tol = c.tol ? *c.tol
                           : std::max(asymcop_spec_default_tolerance(a.get(), c.n),
                                      asymcop_spec_default_tolerance(b.get(), c.n));
  char* out = nullptr;
  if (mode == "order") {
    check(asymcop_compare_order(a.get(), b.get(), c.n, tol, &out));
  } else if (mode == "equiv") {
    check(asymcop_compare_equivalent(a.get(), b.get(), c.n, tol, &out));
  } else {
    // The tolerance order needs t strictly inside (0, 1).
    const double t = c.t_given ? c.t : 0.5;
    if (!(t < 1.0)) throw UsageError("tolerance mode needs -t in (0, 1)");
    check(asymcop_compare_tolerance(a.get(), b.get(), t, parse_p(c.p), c.n, &out));
  }
  Json j = Json::parse(take(out));
  j["specs"] = refs;
  emit_json(c, j);
  return kExitOk;
}

int cmd_cz(const Common& c, const std::string& input, const std::string& spec_ref,
           const std::string& good_csv, const std::string& bad_csv) {
  if (input.empty() == spec_ref.empty()) {
    throw UsageError("cz needs exactly one of --input FILE or --spec REF");
  }
  asymcop_gridfn* raw = nullptr;
  if (!input.empty()) {
    const std::string text = read_file(input);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
      check(asymcop_gridfn_from_json(text.c_str(), &raw));
    } else {
      check(asymcop_gridfn_from_csv(text.c_str(), &raw));
    }
  } else {
    const auto spec = spec_from_ref(spec_ref);
    check(asymcop_gridfn_bracket(spec.get(), c.n, &raw));
  }
  const GridFnPtr f(raw);
  char* json = nullptr;
  char* g = nullptr;
  char* b = nullptr;
  check(asymcop_cz_decompose(f.get(), c.t, &json, good_csv.empty() ? nullptr : &g,
                             bad_csv.empty() ? nullptr : &b));
  write_side_file(good_csv, take(g));
  write_side_file(bad_csv, take(b));
  emit_json(c, Json::parse(take(json)));
  return kExitOk;
}

int cmd_sweep(const Common& c, const FamilyFlags& f, const std::string& param,
              const std::vector<double>& range, const std::string& csv_path) {
  if (f.family.empty()) throw UsageError("sweep needs --family");
  if (range.size() != 2) throw UsageError("--range needs two values A B");
  if (!(range[0] < range[1])) throw UsageError("--range must satisfy A < B");
  Json base = Json::object();
  if (f.theta) base["theta"] = *f.theta;
  if (f.alpha) base["alpha"] = *f.alpha;
  if (f.weight) base["weight"] = *f.weight;
  if (f.psi_scale) base["psi_scale"] = *f.psi_scale;
  char* summary = nullptr;
  char* scan = nullptr;
  check(asymcop_sweep(f.family.c_str(), base.dump().c_str(), param.c_str(), range[0], range[1],
                      parse_p(c.p), c.n, &summary, &scan));
  const std::string scan_text = take(scan);
  const std::string summary_text = take(summary);
  write_side_file(csv_path, scan_text);
  if (c.format == "csv") {
    emit(c, scan_text);
  } else {
    emit_json(c, Json::parse(summary_text));
  }
  return kExitOk;
}

int cmd_empirical(const Common& c, const std::string& input, const std::string& x,
                  const std::string& y, const std::string& dump_spec) {
  asymcop_spec* raw = nullptr;
  check(asymcop_spec_from_csv_sample(input.c_str(), x.c_str(), y.c_str(), c.n, &raw));
  const SpecPtr spec(raw);
  const double p = parse_p(c.p);
  double value = 0.0;
  check(asymcop_measure(spec.get(), p, c.n, c.t, &value));
  char* report = nullptr;
  int pass = 0;
  check(asymcop_check_axioms(spec.get(), c.n, tolerance_for(c, spec.get()), c.seed, &report, &pass));
  const Json axioms = Json::parse(take(report));
  if (!dump_spec.empty()) {
    char* js = nullptr;
    check(asymcop_spec_to_json(spec.get(), &js));
    write_side_file(dump_spec, take(js) + "\n");
  }
  emit_json(c, Json{{"schema", 1},
                    {"command", "empirical"},
                    {"input", input},
                    {"columns", Json::array({x, y})},
                    {"p", p_json(p)},
                    {"n", c.n},
                    {"mu_p", value},
                    {"axioms_pass", pass == 1},
                    {"axioms", axioms}});
  return kExitOk;
}

int cmd_paper_example(const Common& c, double alpha) {
  const int n = c.n_given ? c.n : 1024;
  const double t = c.t_given ? c.t : 0.5;
  if (!(t < 1.0)) throw UsageError("paper-example needs -t in (0, 1)");
  char* out = nullptr;
  check(asymcop_worked_example(alpha, n, t, &out));
  Json j = Json::parse(take(out));
  j["command"] = "paper-example";
  emit_json(c, j);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymmetry measures and orders for bivariate copulas"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(asymcop_version()));

  Common common;
  FamilyFlags fam;
  std::string ref;

  auto* check_cmd = app.add_subcommand("check", "verify copula axioms on a grid");
  add_common(check_cmd, common);
  add_family_flags(check_cmd, fam);
  check_cmd->add_option("spec", ref, "NAME[:param] or @spec.json");

  auto* measure_cmd = app.add_subcommand("measure", "mu_p asymmetry measure");
  add_common(measure_cmd, common);
  add_family_flags(measure_cmd, fam);
  measure_cmd->add_option("spec", ref, "NAME[:param] or @spec.json");

  std::string mode = "order";
  std::vector<std::string> refs;
  bool transpose_first = false, transpose_second = false;
  auto* compare_cmd = app.add_subcommand("compare", "compare the asymmetry of two specs");
  add_common(compare_cmd, common);
  compare_cmd->add_option("--mode", mode, "order | equiv | tolerance")
      ->check(CLI::IsMember({"order", "equiv", "tolerance"}));
  compare_cmd->add_flag("--transpose-first", transpose_first, "transpose the first spec");
  compare_cmd->add_flag("--transpose-second", transpose_second, "transpose the second spec");
  compare_cmd->add_option("specs", refs, "two spec references")->expected(2);

  std::string cz_input, cz_spec, good_csv, bad_csv;
  auto* cz_cmd = app.add_subcommand("cz", "dyadic Calderon-Zygmund decomposition");
  add_common(cz_cmd, common);
  cz_cmd->add_option("--input", cz_input, "grid function file (.json or .csv)");
  cz_cmd->add_option("--spec", cz_spec, "decompose the bracket of this spec");
  cz_cmd->add_option("--good-csv", good_csv, "write the good part as CSV");
  cz_cmd->add_option("--bad-csv", bad_csv, "write the bad part as CSV");

  std::string sweep_param, sweep_csv;
  std::vector<double> range;
  auto* sweep_cmd = app.add_subcommand("sweep", "most symmetric member of a family");
  add_common(sweep_cmd, common);
  add_family_flags(sweep_cmd, fam);
  sweep_cmd->add_option("--param", sweep_param, "parameter to vary (default: primary)");
  sweep_cmd->add_option("--range", range, "A B")->expected(2);
  sweep_cmd->add_option("--csv", sweep_csv, "write the scan as param,mu_p CSV");

  std::string emp_input, emp_x = "0", emp_y = "1", emp_dump;
  auto* emp_cmd = app.add_subcommand("empirical", "empirical copula of CSV data, then mu_p");
  add_common(emp_cmd, common);
  emp_cmd->add_option("--input", emp_input, "CSV file")->required();
  emp_cmd->add_option("--x", emp_x, "x column (0-based index or header name)");
  emp_cmd->add_option("--y", emp_y, "y column (0-based index or header name)");
  emp_cmd->add_option("--dump-spec", emp_dump, "write the tabulated spec as JSON");

  double alpha = 0.5;
  auto* example_cmd = app.add_subcommand("paper-example", "Cobb-Douglas worked example");
  add_common(example_cmd, common);
  example_cmd->add_option("--alpha", alpha, "Cobb-Douglas exponent in (0, 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    validate(common, cmd);
    if (cmd == check_cmd) return cmd_check(common, fam, ref);
    if (cmd == measure_cmd) return cmd_measure(common, fam, ref);
    if (cmd == compare_cmd) return cmd_compare(common, mode, refs, transpose_first, transpose_second);
    if (cmd == cz_cmd) return cmd_cz(common, cz_input, cz_spec, good_csv, bad_csv);
    if (cmd == sweep_cmd) return cmd_sweep(common, fam, sweep_param, range, sweep_csv);
    if (cmd == emp_cmd) return cmd_empirical(common, emp_input, emp_x, emp_y, emp_dump);
    if (cmd == example_cmd) return cmd_paper_example(common, alpha);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
