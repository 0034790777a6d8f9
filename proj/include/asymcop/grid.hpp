#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace asymcop {

/// Thrown when an evaluator fails at a grid node; carries the node coordinates.
class SampleError : public std::runtime_error {
public:
  SampleError(double u, double v, const std::string& what);

  double u() const noexcept { return u_; }
  double v() const noexcept { return v_; }

private:
  double u_;
  double v_;
};

/// Uniform grid on the unit square with n cells per axis, n a power of two.
///
/// Nodes sit at (i/n, j/n) for 0 <= i, j <= n, so 0 and 1 are represented
/// exactly. The dyadic restriction lets the stopping-time recursion in cz.hpp
/// halve squares down to single cells with no remainder.
class Grid {
public:
  explicit Grid(int n);

  int cells() const noexcept { return n_; }
  int nodes_per_axis() const noexcept { return n_ + 1; }
  std::size_t node_count() const noexcept {
    return static_cast<std::size_t>(n_ + 1) * static_cast<std::size_t>(n_ + 1);
  }
  /// log2(n)
  int levels() const noexcept;
  double coord(int i) const noexcept { return static_cast<double>(i) / n_; }
  double spacing() const noexcept { return 1.0 / n_; }

  friend bool operator==(const Grid&, const Grid&) = default;

private:
  int n_;
};

bool is_power_of_two(long long n) noexcept;

/// Real values sampled at the nodes of a Grid.
///
/// Storage is row-major by v then u: index = j * (n + 1) + i where i is the
/// u-index and j the v-index. Values must be finite.
class GridFunction {
public:
  GridFunction(Grid grid, std::vector<double> values);
  /// Constant function.
  GridFunction(Grid grid, double value);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }

  double at(int i, int j) const noexcept {
    return values_[static_cast<std::size_t>(j) * static_cast<std::size_t>(grid_.nodes_per_axis()) +
                   static_cast<std::size_t>(i)];
  }

  /// Mean of the four corner nodes of cell (i, j), 0 <= i, j < n.
  double cell_average(int i, int j) const noexcept {
    return 0.25 * (at(i, j) + at(i + 1, j) + at(i, j + 1) + at(i + 1, j + 1));
  }

  /// Bilinear interpolation at an arbitrary point of the unit square.
  double interpolate(double u, double v) const;

  double max_abs() const noexcept;

private:
  Grid grid_;
  std::vector<double> values_;
};

using Evaluator = std::function<double(double, double)>;

/// Midpoint-rule approximation of the integral of |f| over the unit square,
/// each cell contributing the mean of its four corners.
double integrate_l1(const GridFunction& f);

/// (integral |f|^p)^(1/p) with the same quadrature; p = infinity gives the
/// maximum absolute node value. Throws std::invalid_argument for p < 1.
double norm_lp(const GridFunction& f, double p);

/// Node-wise evaluation. Evaluator exceptions and non-finite results are
/// rethrown as SampleError with the node attached.
GridFunction sample(const Evaluator& f, const Grid& grid);

}  // namespace asymcop
