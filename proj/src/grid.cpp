#include "asymcop/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace asymcop {

namespace {

std::string node_message(double u, double v, const std::string& what) {
  std::ostringstream os;
  os.precision(17);
  os << "evaluation failed at node (" << u << ", " << v << "): " << what;
  return os.str();
}

}  // namespace

SampleError::SampleError(double u, double v, const std::string& what)
    : std::runtime_error(node_message(u, v, what)), u_(u), v_(v) {}

bool is_power_of_two(long long n) noexcept {
  return n > 0 && std::has_single_bit(static_cast<unsigned long long>(n));
}

Grid::Grid(int n) : n_(n) {
  if (n < 2 || !is_power_of_two(n)) {
    throw std::invalid_argument("grid resolution must be a power of two >= 2, got " +
                                std::to_string(n));
  }
}

int Grid::levels() const noexcept {
  return std::countr_zero(static_cast<unsigned>(n_));
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.node_count()) {
    throw std::invalid_argument("grid function needs " + std::to_string(grid_.node_count()) +
                                " values, got " + std::to_string(values_.size()));
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      const auto np = static_cast<std::size_t>(grid_.nodes_per_axis());
      throw std::invalid_argument("non-finite grid value at node (" + std::to_string(k % np) +
                                  ", " + std::to_string(k / np) + ")");
    }
  }
}

GridFunction::GridFunction(Grid grid, double value)
    : GridFunction(grid, std::vector<double>(grid.node_count(), value)) {}

double GridFunction::interpolate(double u, double v) const {
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
    throw std::domain_error("interpolation point outside the unit square");
  }
  const int n = grid_.cells();
  const double su = u * n;
  const double sv = v * n;
  const int i = std::min(static_cast<int>(su), n - 1);
  const int j = std::min(static_cast<int>(sv), n - 1);
  const double a = su - i;
  const double b = sv - j;
  // Exact node hits return the stored value untouched.
  if (a == 0.0 && b == 0.0) return at(i, j);
  return (1 - a) * (1 - b) * at(i, j) + a * (1 - b) * at(i + 1, j) + (1 - a) * b * at(i, j + 1) +
         a * b * at(i + 1, j + 1);
}

double GridFunction::max_abs() const noexcept {
  double m = 0.0;
  for (double x : values_) m = std::max(m, std::abs(x));
  return m;
}

double integrate_l1(const GridFunction& f) {
  const int n = f.grid().cells();
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    double row = 0.0;
    for (int i = 0; i < n; ++i) {
      row += 0.25 * (std::abs(f.at(i, j)) + std::abs(f.at(i + 1, j)) + std::abs(f.at(i, j + 1)) +
                     std::abs(f.at(i + 1, j + 1)));
    }
    total += row;
  }
  return total / (static_cast<double>(n) * n);
}

double norm_lp(const GridFunction& f, double p) {
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument("norm exponent p must be >= 1 or infinity");
  }
  if (std::isinf(p)) return f.max_abs();
  if (p == 1.0) return integrate_l1(f);
  std::vector<double> powered(f.values().begin(), f.values().end());
  for (double& x : powered) x = std::pow(std::abs(x), p);
  return std::pow(integrate_l1(GridFunction(f.grid(), std::move(powered))), 1.0 / p);
}

GridFunction sample(const Evaluator& f, const Grid& grid) {
  const int np = grid.nodes_per_axis();
  std::vector<double> values(grid.node_count());
  for (int j = 0; j < np; ++j) {
    const double v = grid.coord(j);
    for (int i = 0; i < np; ++i) {
      const double u = grid.coord(i);
      double x;
      try {
        x = f(u, v);
      } catch (const std::exception& e) {
        throw SampleError(u, v, e.what());
      }
      if (!std::isfinite(x)) throw SampleError(u, v, "non-finite value");
      values[static_cast<std::size_t>(j) * np + i] = x;
    }
  }
  return GridFunction(grid, std::move(values));
}

}  // namespace asymcop
