#include "asymcop/copula.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace asymcop {

const char* to_string(SpecKind kind) noexcept {
  switch (kind) {
    case SpecKind::family: return "family";
    case SpecKind::generator: return "generator";
    case SpecKind::tabulated: return "tabulated";
    case SpecKind::transpose: return "transpose";
    case SpecKind::mixture: return "mixture";
  }
  return "unknown";
}

struct CopulaSpec::Node {
  SpecKind kind;
  std::string family;
  Params params;
  Evaluator eval;
  std::optional<GridFunction> table;
  std::vector<CopulaSpec> operands;
  double weight = 1.0;
  bool formula_backed = true;
};

CopulaSpec::CopulaSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

CopulaSpec CopulaSpec::formula(SpecKind kind, std::string family, Params params, Evaluator eval) {
  if (kind != SpecKind::family && kind != SpecKind::generator) {
    throw std::invalid_argument("formula specs must be of kind family or generator");
  }
  if (!eval) throw std::invalid_argument("formula spec needs an evaluator");
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->family = std::move(family);
  node->params = std::move(params);
  node->eval = std::move(eval);
  return CopulaSpec(std::move(node));
}

CopulaSpec CopulaSpec::tabulated(GridFunction table, std::string origin) {
  auto node = std::make_shared<Node>();
  node->kind = SpecKind::tabulated;
  node->family = std::move(origin);
  node->table = std::move(table);
  node->formula_backed = false;
  const GridFunction* t = &*node->table;
  node->eval = [t](double u, double v) { return t->interpolate(u, v); };
  return CopulaSpec(std::move(node));
}

double CopulaSpec::operator()(double u, double v) const { return node_->eval(u, v); }
SpecKind CopulaSpec::kind() const noexcept { return node_->kind; }
const std::string& CopulaSpec::family() const noexcept { return node_->family; }
const Params& CopulaSpec::params() const noexcept { return node_->params; }
bool CopulaSpec::formula_backed() const noexcept { return node_->formula_backed; }
const GridFunction* CopulaSpec::table() const noexcept {
  return node_->table ? &*node_->table : nullptr;
}
std::span<const CopulaSpec> CopulaSpec::operands() const noexcept { return node_->operands; }
double CopulaSpec::weight() const noexcept { return node_->weight; }

GridFunction CopulaSpec::render(const Grid& grid) const {
  if (node_->table && node_->table->grid() == grid) return *node_->table;
  return sample(node_->eval, grid);
}

CopulaSpec transpose(const CopulaSpec& c) {
  if (c.kind() == SpecKind::transpose) return c.operands().front();
  auto node = std::make_shared<CopulaSpec::Node>();
  node->kind = SpecKind::transpose;
  node->family = c.family();
  node->operands = {c};
  node->formula_backed = c.formula_backed();
  node->eval = [inner = c](double u, double v) { return inner(v, u); };
  return CopulaSpec(std::move(node));
}

CopulaSpec convex_combine(const CopulaSpec& c1, const CopulaSpec& c2, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("convex combination weight must lie in [0, 1]");
  }
  auto node = std::make_shared<CopulaSpec::Node>();
  node->kind = SpecKind::mixture;
  node->family = "mixture";
  node->operands = {c1, c2};
  node->weight = t;
  node->formula_backed = c1.formula_backed() && c2.formula_backed();
  node->eval = [c1, c2, t](double u, double v) { return t * c1(u, v) + (1.0 - t) * c2(u, v); };
  return CopulaSpec(std::move(node));
}

GridFunction bracket(const GridFunction& rendered) {
  const int np = rendered.grid().nodes_per_axis();
  std::vector<double> out(rendered.grid().node_count());
  for (int j = 0; j < np; ++j) {
    for (int i = 0; i < np; ++i) {
      out[static_cast<std::size_t>(j) * np + i] = std::abs(rendered.at(i, j) - rendered.at(j, i));
    }
  }
  return GridFunction(rendered.grid(), std::move(out));
}

GridFunction bracket(const CopulaSpec& c, const Grid& grid) { return bracket(c.render(grid)); }

double NullPart::bracket(double q1, double q2) const {
  return std::abs(value(q1, q2) - value(q2, q1));
}

namespace {

void require_pinned(const std::vector<double>& s, const char* name) {
  const bool has0 = std::find(s.begin(), s.end(), 0.0) != s.end();
  const bool has1 = std::find(s.begin(), s.end(), 1.0) != s.end();
  if (!has0 || !has1) {
    throw std::invalid_argument(std::string("subcopula domain ") + name + " must contain 0 and 1");
  }
}

}  // namespace

SubcopulaSpec::SubcopulaSpec(CopulaSpec copula)
    : ae_part_(std::move(copula)), null_part_(std::nullopt), domain_() {}

SubcopulaSpec::SubcopulaSpec(CopulaSpec ae_part, std::optional<NullPart> null_part,
                             ProductDomain domain)
    : ae_part_(std::move(ae_part)), null_part_(std::move(null_part)), domain_(std::move(domain)) {
  require_pinned(domain_.s1, "S1");
  require_pinned(domain_.s2, "S2");
}

SubcopulaSpec transpose(const SubcopulaSpec& s) {
  std::optional<NullPart> null_part;
  if (s.null_part()) {
    NullPart np = *s.null_part();
    np.description = "transpose of " + np.description;
    np.value = [inner = s.null_part()->value](double u, double v) { return inner(v, u); };
    null_part = std::move(np);
  }
  ProductDomain d{s.domain().description, s.domain().s2, s.domain().s1};
  return SubcopulaSpec(transpose(s.ae_part()), std::move(null_part), std::move(d));
}

// ---------------------------------------------------------------------------

double rectangle_volume(const GridFunction& c, int i1, int j1, int i2, int j2) noexcept {
  return c.at(i2, j2) - c.at(i2, j1) - c.at(i1, j2) + c.at(i1, j1);
}

double default_tolerance(const CopulaSpec& c, const Grid& grid) noexcept {
  return c.formula_backed() ? 1e-9 : 2.0 / grid.cells();
}

namespace {

void note(AxiomReport::NodeCheck& check, double violation, double u, double v) {
  if (violation > check.worst) {
    check.worst = violation;
    check.witness = {u, v};
  }
}

}  // namespace

AxiomReport verify_axioms(const GridFunction& c, const AxiomOptions& options) {
  if (!(options.tolerance >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");
  const Grid& grid = c.grid();
  const int n = grid.cells();
  AxiomReport r;
  r.tolerance = options.tolerance;

  for (int k = 0; k <= n; ++k) {
    const double x = grid.coord(k);
    note(r.grounded, std::abs(c.at(0, k)), 0.0, x);
    note(r.grounded, std::abs(c.at(k, 0)), x, 0.0);
    note(r.margins, std::abs(c.at(n, k) - x), 1.0, x);
    note(r.margins, std::abs(c.at(k, n) - x), x, 1.0);
  }

  bool first = true;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double vol = rectangle_volume(c, i, j, i + 1, j + 1);
      if (first || vol < r.two_increasing.worst) {
        first = false;
        r.two_increasing.worst = vol;
        r.two_increasing.lower = {grid.coord(i), grid.coord(j)};
        r.two_increasing.upper = {grid.coord(i + 1), grid.coord(j + 1)};
      }
    }
  }

  auto lipschitz_pair = [&](int i1, int j1, int i2, int j2, bool force) {
    const double excess = std::abs(c.at(i2, j2) - c.at(i1, j1)) -
                          std::abs(grid.coord(i2) - grid.coord(i1)) -
                          std::abs(grid.coord(j2) - grid.coord(j1));
    if (force || excess > r.lipschitz.worst) {
      r.lipschitz.worst = excess;
      r.lipschitz.first = {grid.coord(i1), grid.coord(j1)};
      r.lipschitz.second = {grid.coord(i2), grid.coord(j2)};
    }
  };
  lipschitz_pair(0, 0, 1, 0, true);
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i < n; ++i) {
      lipschitz_pair(i, j, i + 1, j, false);
      lipschitz_pair(j, i, j, i + 1, false);
    }
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> node(0, n);
  for (int k = 0; k < options.random_pairs; ++k) {
    const int i1 = node(rng), j1 = node(rng), i2 = node(rng), j2 = node(rng);
    lipschitz_pair(i1, j1, i2, j2, false);
  }

  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      const double u = grid.coord(i), v = grid.coord(j);
      const double lower = std::max(u + v - 1.0, 0.0);
      const double upper = std::min(u, v);
      const double val = c.at(i, j);
      note(r.fh_envelope, std::max(lower - val, val - upper), u, v);
    }
  }

  const double tol = options.tolerance;
  r.grounded.pass = r.grounded.worst <= tol;
  r.margins.pass = r.margins.worst <= tol;
  r.two_increasing.pass = r.two_increasing.worst >= -tol;
  r.lipschitz.pass = r.lipschitz.worst <= tol;
  r.fh_envelope.pass = r.fh_envelope.worst <= tol;
  return r;
}

AxiomReport verify_axioms(const CopulaSpec& c, const Grid& grid, const AxiomOptions& options) {
  return verify_axioms(c.render(grid), options);
}

// ---------------------------------------------------------------------------

double JointTable::x(int i) const noexcept {
  return box.x_min + (box.x_max - box.x_min) * values.grid().coord(i);
}

double JointTable::y(int j) const noexcept {
  return box.y_min + (box.y_max - box.y_min) * values.grid().coord(j);
}

namespace {

constexpr double kMarginSlack = 1e-12;

std::vector<double> sample_margin(const Margin& F, double lo, double hi, const Grid& grid,
                                  const char* name) {
  if (!(hi > lo)) throw std::invalid_argument(std::string("empty box along ") + name);
  std::vector<double> s(static_cast<std::size_t>(grid.nodes_per_axis()));
  for (int k = 0; k <= grid.cells(); ++k) {
    const double x = lo + (hi - lo) * grid.coord(k);
    s[k] = F(x);
    if (!std::isfinite(s[k])) {
      throw std::invalid_argument(std::string("margin ") + name + " is not finite at node " +
                                  std::to_string(k));
    }
    if (k > 0 && s[k] < s[k - 1] - kMarginSlack) {
      throw std::invalid_argument(std::string("margin ") + name + " decreases between nodes " +
                                  std::to_string(k - 1) + " and " + std::to_string(k));
    }
  }
  if (std::abs(s.front()) > kMarginSlack || std::abs(s.back() - 1.0) > kMarginSlack) {
    throw std::invalid_argument(std::string("margin ") + name +
                                " must run from 0 to 1 across the box");
  }
  return s;
}

// Maps a probability level to a normalised position in [0, 1] along the
// sampled margin. Ties resolve to the left end of a flat cell.
double pseudo_inverse(const std::vector<double>& s, double level) {
  const int n = static_cast<int>(s.size()) - 1;
  const auto it = std::lower_bound(s.begin(), s.end(), level);
  if (it == s.begin()) return 0.0;
  if (it == s.end()) return 1.0;
  const int k = static_cast<int>(it - s.begin());
  if (*it == level) {
    // Left endpoint of the first node at this level.
    return static_cast<double>(k) / n;
  }
  const double lo = s[k - 1], hi = s[k];
  const double lambda = (level - lo) / (hi - lo);
  return (k - 1 + lambda) / n;
}

void require_strict(const std::vector<double>& s, const char* name) {
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    if (s[k] - s[k - 1] <= kMarginSlack && s[k + 1] - s[k] <= kMarginSlack) {
      throw std::invalid_argument(std::string("margin ") + name +
                                  " has a plateau wider than one cell near node " +
                                  std::to_string(k));
    }
  }
}

}  // namespace

JointTable sklar_construct(const CopulaSpec& c, const Margin& F, const Margin& G, const Box& box,
                           const Grid& grid) {
  const auto fs = sample_margin(F, box.x_min, box.x_max, grid, "F");
  const auto gs = sample_margin(G, box.y_min, box.y_max, grid, "G");
  const int np = grid.nodes_per_axis();
  std::vector<double> h(grid.node_count());
  for (int j = 0; j < np; ++j) {
    // Clamp rounding spill so the copula is only queried inside I^2.
    const double gv = std::clamp(gs[j], 0.0, 1.0);
    for (int i = 0; i < np; ++i) {
      h[static_cast<std::size_t>(j) * np + i] = c(std::clamp(fs[i], 0.0, 1.0), gv);
    }
  }
  return JointTable{box, GridFunction(grid, std::move(h))};
}

CopulaSpec sklar_extract(const JointTable& joint, const Margin& F, const Margin& G,
                         const Grid& out) {
  const Grid& in = joint.values.grid();
  const auto fs = sample_margin(F, joint.box.x_min, joint.box.x_max, in, "F");
  const auto gs = sample_margin(G, joint.box.y_min, joint.box.y_max, in, "G");
  require_strict(fs, "F");
  require_strict(gs, "G");
  const int np = out.nodes_per_axis();
  std::vector<double> xs(static_cast<std::size_t>(np)), ys(static_cast<std::size_t>(np));
  for (int k = 0; k < np; ++k) {
    xs[k] = pseudo_inverse(fs, out.coord(k));
    ys[k] = pseudo_inverse(gs, out.coord(k));
  }
  std::vector<double> table(out.node_count());
  for (int j = 0; j < np; ++j) {
    for (int i = 0; i < np; ++i) {
      table[static_cast<std::size_t>(j) * np + i] = joint.values.interpolate(xs[i], ys[j]);
    }
  }
  return CopulaSpec::tabulated(GridFunction(out, std::move(table)), "sklar_extract");
}

}  // namespace asymcop
