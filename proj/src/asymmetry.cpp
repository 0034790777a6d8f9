#include "asymcop/asymmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "asymcop/cz.hpp"

namespace asymcop {

namespace {

void require_p(double p) {
  if (std::isnan(p) || p < 1.0) throw std::invalid_argument("p must be >= 1 or infinity");
}

void require_tol(double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("comparison tolerance must be >= 0");
}

}  // namespace

double mu_p(const CopulaSpec& c, double p, const Grid& grid) {
  require_p(p);
  return norm_lp(bracket(c, grid), p);
}

double mu_p(const SubcopulaSpec& c, double p, const Grid& grid, double t) {
  require_p(p);
  auto b = bracket(c.ae_part(), grid);
  // Brackets of copulas are bounded by 1, so at t = 1 nothing is selected.
  if (b.max_abs() <= t) return norm_lp(b, p);
  return norm_lp(cz_decompose(b, t).good, p);
}

const char* to_string(Relation r) noexcept {
  switch (r) {
    case Relation::first_more_symmetric: return "first_more_symmetric";
    case Relation::second_more_symmetric: return "second_more_symmetric";
    case Relation::equivalent: return "equivalent";
    case Relation::incomparable: return "incomparable";
  }
  return "unknown";
}

OrderVerdict compare_order(const SubcopulaSpec& c1, const SubcopulaSpec& c2, const Grid& grid,
                           double tol) {
  require_tol(tol);
  const auto b1 = bracket(c1.ae_part(), grid);
  const auto b2 = bracket(c2.ae_part(), grid);
  const auto v1 = b1.values();
  const auto v2 = b2.values();

  std::size_t over1 = 0, over2 = 0, widest = 0;  // argmax of b1-b2, b2-b1, |b1-b2|
  for (std::size_t k = 1; k < v1.size(); ++k) {
    if (v1[k] - v2[k] > v1[over1] - v2[over1]) over1 = k;
    if (v2[k] - v1[k] > v2[over2] - v1[over2]) over2 = k;
    if (std::abs(v1[k] - v2[k]) > std::abs(v1[widest] - v2[widest])) widest = k;
  }
  const bool first_le = v1[over1] - v2[over1] <= tol;
  const bool second_le = v2[over2] - v1[over2] <= tol;

  const int np = grid.nodes_per_axis();
  auto witness = [&](std::size_t k) {
    const int i = static_cast<int>(k % np), j = static_cast<int>(k / np);
    return BracketWitness{{grid.coord(i), grid.coord(j)}, v1[k], v2[k]};
  };

  OrderVerdict out;
  out.tolerance = tol;
  out.ae_only = c1.ae_only() || c2.ae_only();
  if (first_le && second_le) {
    out.relation = Relation::equivalent;
  } else if (first_le) {
    out.relation = Relation::first_more_symmetric;
  } else if (second_le) {
    out.relation = Relation::second_more_symmetric;
  } else {
    out.relation = Relation::incomparable;
    out.witnesses = {witness(over1), witness(over2)};
    return out;
  }
  out.witnesses = {witness(widest)};
  return out;
}

Equivalence equivalent(const SubcopulaSpec& c1, const SubcopulaSpec& c2, const Grid& grid,
                       double tol) {
  require_tol(tol);
  const auto b1 = bracket(c1.ae_part(), grid);
  const auto b2 = bracket(c2.ae_part(), grid);
  double dev = 0.0;
  for (std::size_t k = 0; k < b1.values().size(); ++k) {
    dev = std::max(dev, std::abs(b1.values()[k] - b2.values()[k]));
  }
  return {dev <= tol, dev};
}

ClassPartition distinct_classes(const std::vector<SubcopulaSpec>& specs, const Grid& grid,
                                double tol) {
  require_tol(tol);
  if (specs.empty()) throw std::invalid_argument("distinct_classes needs at least one spec");
  const std::size_t m = specs.size();

  std::vector<GridFunction> brackets;
  brackets.reserve(m);
  for (const auto& s : specs) brackets.push_back(bracket(s.ae_part(), grid));
  auto deviation = [&](std::size_t a, std::size_t b) {
    double dev = 0.0;
    for (std::size_t k = 0; k < brackets[a].values().size(); ++k) {
      dev = std::max(dev, std::abs(brackets[a].values()[k] - brackets[b].values()[k]));
    }
    return dev;
  };

  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<double>> dev(m, std::vector<double>(m, 0.0));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      dev[a][b] = dev[b][a] = deviation(a, b);
      if (dev[a][b] <= tol) {
        const auto ra = find(a), rb = find(b);
        parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }

  ClassPartition out;
  std::vector<std::ptrdiff_t> slot(m, -1);
  for (std::size_t a = 0; a < m; ++a) {
    const auto r = find(a);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(out.classes.size());
      out.classes.emplace_back();
      out.representatives.push_back(a);
    }
    out.classes[static_cast<std::size_t>(slot[r])].push_back(a);
  }
  for (const auto& cls : out.classes) {
    for (std::size_t x = 0; x < cls.size(); ++x) {
      for (std::size_t y = x + 1; y < cls.size(); ++y) {
        out.max_intra_deviation = std::max(out.max_intra_deviation, dev[cls[x]][cls[y]]);
      }
    }
  }
  return out;
}

SweepResult golden_sweep(const std::function<double(double)>& objective, double a, double b,
                         const SweepOptions& options) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw std::invalid_argument("sweep range must satisfy a < b");
  }
  if (options.scan_points < 3) throw std::invalid_argument("sweep needs at least 3 scan points");

  SweepResult r;
  if (b - a < 1e-9 * std::max({1.0, std::abs(a), std::abs(b)})) {
    r.params = {a};
    r.values = {objective(a)};
    r.argmin = a;
    r.min_value = r.values.front();
    return r;
  }

  const int m = options.scan_points;
  r.params.resize(m);
  r.values.resize(m);
  for (int k = 0; k < m; ++k) {
    r.params[k] = k == m - 1 ? b : a + (b - a) * k / (m - 1);
    r.values[k] = objective(r.params[k]);
  }
  const auto best = static_cast<int>(std::min_element(r.values.begin(), r.values.end()) -
                                     r.values.begin());
  r.argmin = r.params[best];
  r.min_value = r.values[best];

  int local_minima = 0;
  for (int k = 0; k < m; ++k) {
    const bool left = k == 0 || r.values[k] < r.values[k - 1];
    const bool right = k == m - 1 || r.values[k] < r.values[k + 1];
    if (left && right) ++local_minima;
  }
  if (local_minima > 1) {
    r.non_unimodal = true;
    return r;
  }

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = r.params[std::max(best - 1, 0)];
  double hi = r.params[std::min(best + 1, m - 1)];
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = objective(c), fd = objective(d);
  auto consider = [&](double x, double fx) {
    if (fx < r.min_value) {
      r.min_value = fx;
      r.argmin = x;
    }
  };
  consider(c, fc);
  consider(d, fd);
  const double width = options.relative_width * (b - a);
  while (hi - lo >= width && r.iterations < options.max_iterations) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = objective(c);
      consider(c, fc);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = objective(d);
      consider(d, fd);
    }
    r.trace.push_back({lo, hi});
    ++r.iterations;
  }
  const double mid = 0.5 * (lo + hi);
  consider(mid, objective(mid));
  return r;
}

SweepResult most_symmetric(const std::function<SubcopulaSpec(double)>& family, double a, double b,
                           double p, const Grid& grid, const SweepOptions& options) {
  require_p(p);
  return golden_sweep([&](double x) { return mu_p(family(x), p, grid); }, a, b, options);
}

}  // namespace asymcop
