#include "asymcop/cz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asymcop {

double DyadicSquare::side() const noexcept { return std::ldexp(1.0, -level); }

double CellFunction::l1() const noexcept {
  double s = 0.0;
  for (double x : values) s += std::abs(x);
  return s / (static_cast<double>(n) * n);
}

double CzDecomposition::area_union() const noexcept {
  double a = 0.0;
  for (const auto& s : squares) a += s.square.area();
  return a;
}

double CzDecomposition::sup_good_inside() const noexcept {
  double m = 0.0;
  for (std::size_t k = 0; k < selected_cell.size(); ++k) {
    if (selected_cell[k]) m = std::max(m, good_cells.values[k]);
  }
  return m;
}

double CzDecomposition::sup_good_outside() const noexcept {
  double m = 0.0;
  for (std::size_t k = 0; k < selected_cell.size(); ++k) {
    if (!selected_cell[k]) m = std::max(m, good_cells.values[k]);
  }
  return m;
}

namespace {

// sums[level] holds the sum of cell averages over each dyadic square of that
// level; the finest level holds the cell averages themselves.
std::vector<std::vector<double>> build_pyramid(const std::vector<double>& cells, int levels) {
  std::vector<std::vector<double>> sums(static_cast<std::size_t>(levels) + 1);
  sums[levels] = cells;
  for (int l = levels - 1; l >= 0; --l) {
    const int m = 1 << l;
    const auto& child = sums[l + 1];
    auto& cur = sums[l];
    cur.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < m; ++i) {
        const std::size_t c0 = static_cast<std::size_t>(2 * j) * (2 * m) + 2 * i;
        const std::size_t c1 = c0 + static_cast<std::size_t>(2 * m);
        cur[static_cast<std::size_t>(j) * m + i] =
            (child[c0] + child[c0 + 1]) + (child[c1] + child[c1 + 1]);
      }
    }
  }
  return sums;
}

}  // namespace

CzDecomposition cz_decompose(const GridFunction& f, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("decomposition threshold t must be positive and finite");
  }
  const Grid& grid = f.grid();
  const int n = grid.cells();
  const int levels = grid.levels();
  const int np = grid.nodes_per_axis();
  for (double x : f.values()) {
    if (x < 0.0) throw std::invalid_argument("decomposition input must be nonnegative");
  }

  std::vector<double> cells(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) cells[static_cast<std::size_t>(j) * n + i] = f.cell_average(i, j);
  }
  const auto sums = build_pyramid(cells, levels);

  std::vector<SelectedSquare> selected;
  std::vector<DyadicSquare> stack{{0, 0, 0}};
  while (!stack.empty()) {
    const DyadicSquare q = stack.back();
    stack.pop_back();
    const int m = 1 << q.level;
    const double count = std::ldexp(1.0, 2 * (levels - q.level));
    const double avg = sums[q.level][static_cast<std::size_t>(q.j) * m + q.i] / count;
    if (avg > t) {
      selected.push_back({q, avg});
    } else if (q.level < levels) {
      for (int dj = 0; dj < 2; ++dj) {
        for (int di = 0; di < 2; ++di) {
          stack.push_back({q.level + 1, 2 * q.i + di, 2 * q.j + dj});
        }
      }
    }
  }
  std::sort(selected.begin(), selected.end(),
            [](const SelectedSquare& a, const SelectedSquare& b) { return a.square < b.square; });

  CellFunction good_cells{n, cells};
  CellFunction bad_cells{n, std::vector<double>(cells.size(), 0.0)};
  std::vector<bool> mask(cells.size(), false);
  std::vector<double> good(f.values().begin(), f.values().end());
  std::vector<bool> claimed(good.size(), false);

  for (const auto& s : selected) {
    const int span = n >> s.square.level;
    const int i0 = s.square.i * span, j0 = s.square.j * span;
    for (int j = j0; j < j0 + span; ++j) {
      for (int i = i0; i < i0 + span; ++i) {
        const std::size_t k = static_cast<std::size_t>(j) * n + i;
        mask[k] = true;
        good_cells.values[k] = s.average;
        bad_cells.values[k] = cells[k] - s.average;
      }
    }
    for (int j = j0; j <= j0 + span; ++j) {
      for (int i = i0; i <= i0 + span; ++i) {
        const std::size_t k = static_cast<std::size_t>(j) * np + i;
        if (!claimed[k] || s.average > good[k]) {
          good[k] = s.average;
          claimed[k] = true;
        }
      }
    }
  }

  std::vector<double> bad(good.size());
  for (std::size_t k = 0; k < bad.size(); ++k) bad[k] = f.values()[k] - good[k];

  return CzDecomposition{
      .threshold = t,
      .squares = std::move(selected),
      .good = GridFunction(grid, std::move(good)),
      .bad = GridFunction(grid, std::move(bad)),
      .good_cells = std::move(good_cells),
      .bad_cells = std::move(bad_cells),
      .selected_cell = std::move(mask),
      .input_l1 = integrate_l1(f),
  };
}

const char* to_string(ToleranceRelation r) noexcept {
  switch (r) {
    case ToleranceRelation::first_more_symmetric_t: return "first_more_symmetric_t";
    case ToleranceRelation::second_more_symmetric_t: return "second_more_symmetric_t";
    case ToleranceRelation::tied: return "tied";
  }
  return "unknown";
}

ToleranceVerdict tolerance_compare(const SubcopulaSpec& c1, const SubcopulaSpec& c2, double t,
                                   double p, const Grid& grid) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("tolerance t must lie in (0, 1)");
  if (std::isnan(p) || p < 1.0) throw std::invalid_argument("p must be >= 1 or infinity");

  const auto d1 = cz_decompose(bracket(c1.ae_part(), grid), t);
  const auto d2 = cz_decompose(bracket(c2.ae_part(), grid), t);

  ToleranceVerdict v;
  v.threshold = t;
  v.p = p;
  v.good_l1_first = integrate_l1(d1.good);
  v.good_l1_second = integrate_l1(d2.good);
  v.good_lp_first = norm_lp(d1.good, p);
  v.good_lp_second = norm_lp(d2.good, p);
  v.bad_l1_first = d1.bad_cells.l1();
  v.bad_l1_second = d2.bad_cells.l1();
  v.squares_first = d1.squares.size();
  v.squares_second = d2.squares.size();
  v.ae_only = c1.ae_only() || c2.ae_only();

  constexpr double kTie = 1e-9;
  const double diff = v.good_l1_first - v.good_l1_second;
  if (std::abs(diff) <= kTie) {
    v.relation = ToleranceRelation::tied;
    v.paper_orientation = ToleranceRelation::tied;
  } else if (diff < 0.0) {
    v.relation = ToleranceRelation::first_more_symmetric_t;
    v.paper_orientation = ToleranceRelation::second_more_symmetric_t;
  } else {
    v.relation = ToleranceRelation::second_more_symmetric_t;
    v.paper_orientation = ToleranceRelation::first_more_symmetric_t;
  }
  return v;
}

}  // namespace asymcop
