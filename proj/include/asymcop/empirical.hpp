#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "asymcop/copula.hpp"

namespace asymcop {

/// Bivariate observations, at least two and all finite.
class SampleSet {
public:
  explicit SampleSet(std::vector<std::pair<double, double>> pairs);

  const std::vector<std::pair<double, double>>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  /// Same observations with x and y exchanged.
  SampleSet swapped() const;

private:
  std::vector<std::pair<double, double>> pairs_;
};

/// Input problems: missing file, malformed rows (with 1-based line number),
/// unknown columns, too few rows.
class DataError : public std::runtime_error {
public:
  explicit DataError(const std::string& what, int line = 0);
  int line() const noexcept { return line_; }

private:
  int line_;
};

/// The input file could not be opened or read.
class FileError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// 0-based index or header name.
using ColumnRef = std::variant<std::size_t, std::string>;

/// Comma-separated input; the first row is a header when any of its fields
/// fails to parse as a number.
SampleSet load_csv(const std::filesystem::path& path, const ColumnRef& x_column,
                   const ColumnRef& y_column);
SampleSet parse_csv(const std::string& text, const ColumnRef& x_column, const ColumnRef& y_column);

/// Average ranks (1-based, ties share their mean rank).
std::vector<double> average_ranks(const std::vector<double>& xs);

/// Rank-based empirical copula
///   C_m(u, v) = (1/m) #{i : rx_i / (m+1) <= u and ry_i / (m+1) <= v}
/// tabulated at the grid nodes and clamped into [W, M] so that the boundary
/// conditions hold exactly.
CopulaSpec empirical_copula(const SampleSet& s, const Grid& grid);

}  // namespace asymcop
