#pragma once

#include <string>
#include <vector>

#include "asymcop/copula.hpp"
#include "asymcop/grid.hpp"

namespace asymcop {

/// [i 2^-level, (i+1) 2^-level] x [j 2^-level, (j+1) 2^-level]
struct DyadicSquare {
  int level = 0;
  int i = 0;
  int j = 0;

  double side() const noexcept;
  double area() const noexcept { return side() * side(); }
  friend auto operator<=>(const DyadicSquare&, const DyadicSquare&) = default;
};

struct SelectedSquare {
  DyadicSquare square;
  double average = 0.0;  // cell-average of f over the square
};

/// Piecewise-constant function on the n x n cells of a grid, row-major by
/// cell row (v) then column (u).
struct CellFunction {
  int n = 0;
  std::vector<double> values;

  double at(int i, int j) const noexcept {
    return values[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) +
                  static_cast<std::size_t>(i)];
  }
  double l1() const noexcept;
};

/// Result of the dyadic stopping-time split f = g + b at threshold t.
///
/// The selection and every bound are exact at cell granularity: `good_cells`
/// and `bad_cells` hold the cell values (corner means) of g and b. `good` and
/// `bad` are node-level renderings with g + b = f at every node; a node on
/// a selected closed square takes that square's average (the largest one when
/// several squares touch it).
struct CzDecomposition {
  double threshold = 0.0;
  std::vector<SelectedSquare> squares;  // sorted by (level, i, j)
  GridFunction good;
  GridFunction bad;
  CellFunction good_cells;
  CellFunction bad_cells;
  std::vector<bool> selected_cell;  // n x n mask, same layout as CellFunction
  double input_l1 = 0.0;

  double area_union() const noexcept;
  double sup_good_inside() const noexcept;
  double sup_good_outside() const noexcept;
};

/// Stopping-time recursion from the root square: a square whose cell-average
/// exceeds t is selected, otherwise it is split into its four children down
/// to single cells. Selected squares satisfy t < avg <= 4t.
///
/// Throws std::invalid_argument for t <= 0 or negative node values.
CzDecomposition cz_decompose(const GridFunction& f, double t);

enum class ToleranceRelation {
  first_more_symmetric_t,
  second_more_symmetric_t,
  tied,
};

const char* to_string(ToleranceRelation r) noexcept;

struct ToleranceVerdict {
  ToleranceRelation relation = ToleranceRelation::tied;
  /// Literal reading of the subcopula tolerance order: the spec with the
  /// larger good-part norm is labelled more symmetric.
  ToleranceRelation paper_orientation = ToleranceRelation::tied;
  double threshold = 0.0;
  double p = 1.0;
  double good_l1_first = 0.0;
  double good_l1_second = 0.0;
  double good_lp_first = 0.0;
  double good_lp_second = 0.0;
  double bad_l1_first = 0.0;
  double bad_l1_second = 0.0;
  std::size_t squares_first = 0;
  std::size_t squares_second = 0;
  bool ae_only = false;
};

/// Decomposes both brackets (a.e. parts) at threshold t and compares the L1
/// norms of the good parts; the smaller norm is more symmetric. Ties within
/// 1e-9. Throws std::invalid_argument unless 0 < t < 1 and p >= 1.
ToleranceVerdict tolerance_compare(const SubcopulaSpec& c1, const SubcopulaSpec& c2, double t,
                                   double p, const Grid& grid);

}  // namespace asymcop
