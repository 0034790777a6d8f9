#include "asymcop/empirical.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace asymcop {

SampleSet::SampleSet(std::vector<std::pair<double, double>> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.size() < 2) throw DataError("need at least 2 observations");
  for (const auto& [x, y] : pairs_) {
    if (!std::isfinite(x) || !std::isfinite(y)) throw DataError("observations must be finite");
  }
}

SampleSet SampleSet::swapped() const {
  std::vector<std::pair<double, double>> out;
  out.reserve(pairs_.size());
  for (const auto& [x, y] : pairs_) out.emplace_back(y, x);
  return SampleSet(std::move(out));
}

DataError::DataError(const std::string& what, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(trim(std::string_view(line).substr(pos, comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto [end, ec] = std::from_chars(first, s.data() + s.size(), out);
  return ec == std::errc() && end == s.data() + s.size() && std::isfinite(out);
}

std::size_t resolve(const ColumnRef& ref, const std::vector<std::string>& header, bool has_header) {
  if (const auto* idx = std::get_if<std::size_t>(&ref)) return *idx;
  const auto& name = std::get<std::string>(ref);
  if (has_header) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it != header.end()) return static_cast<std::size_t>(it - header.begin());
  }
  // A numeric name is accepted as an index.
  double idx = 0.0;
  if (parse_number(name, idx) && idx >= 0 && idx == std::floor(idx)) {
    return static_cast<std::size_t>(idx);
  }
  throw DataError("column '" + name + "' not found" + (has_header ? "" : " (file has no header)"));
}

}  // namespace

SampleSet parse_csv(const std::string& text, const ColumnRef& x_column, const ColumnRef& y_column) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool first_row = true;
  bool has_header = false;
  std::size_t xc = 0, yc = 0;
  std::vector<std::pair<double, double>> pairs;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (first_row) {
      first_row = false;
      double dummy;
      has_header = std::any_of(fields.begin(), fields.end(),
                               [&](const std::string& f) { return !parse_number(f, dummy); });
      xc = resolve(x_column, fields, has_header);
      yc = resolve(y_column, fields, has_header);
      if (has_header) continue;
    }
    if (xc >= fields.size() || yc >= fields.size()) {
      throw DataError("missing column (row has " + std::to_string(fields.size()) + " fields)",
                      line_no);
    }
    double x, y;
    if (!parse_number(fields[xc], x)) {
      throw DataError("cannot parse '" + fields[xc] + "' as a number", line_no);
    }
    if (!parse_number(fields[yc], y)) {
      throw DataError("cannot parse '" + fields[yc] + "' as a number", line_no);
    }
    pairs.emplace_back(x, y);
  }
  if (pairs.size() < 2) {
    throw DataError("need at least 2 valid rows, found " + std::to_string(pairs.size()));
  }
  return SampleSet(std::move(pairs));
}

SampleSet load_csv(const std::filesystem::path& path, const ColumnRef& x_column,
                   const ColumnRef& y_column) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), x_column, y_column);
}

std::vector<double> average_ranks(const std::vector<double>& xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t k = 0;
  while (k < order.size()) {
    std::size_t e = k + 1;
    while (e < order.size() && xs[order[e]] == xs[order[k]]) ++e;
    // Positions k..e-1 (0-based) share the mean of ranks k+1..e.
    const double r = 0.5 * static_cast<double>(k + 1 + e);
    for (std::size_t q = k; q < e; ++q) ranks[order[q]] = r;
    k = e;
  }
  return ranks;
}

CopulaSpec empirical_copula(const SampleSet& s, const Grid& grid) {
  const std::size_t m = s.size();
  std::vector<double> xs, ys;
  xs.reserve(m);
  ys.reserve(m);
  for (const auto& [x, y] : s.pairs()) {
    xs.push_back(x);
    ys.push_back(y);
  }
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);

  // First node index whose coordinate is >= the scaled rank.
  const int n = grid.cells();
  const int np = grid.nodes_per_axis();
  auto first_node = [&](double rank) {
    const double level = rank / static_cast<double>(m + 1);
    int i = static_cast<int>(std::ceil(level * n));
    while (i > 0 && grid.coord(i - 1) >= level) --i;
    while (i <= n && grid.coord(i) < level) ++i;
    return i;
  };

  std::vector<long long> hits(static_cast<std::size_t>(np) * np, 0);
  for (std::size_t k = 0; k < m; ++k) {
    const int i = first_node(rx[k]);
    const int j = first_node(ry[k]);
    if (i <= n && j <= n) ++hits[static_cast<std::size_t>(j) * np + i];
  }
  // 2-D prefix sums give counts of points dominated by each node.
  for (int j = 0; j < np; ++j) {
    for (int i = 0; i < np; ++i) {
      auto& h = hits[static_cast<std::size_t>(j) * np + i];
      if (i > 0) h += hits[static_cast<std::size_t>(j) * np + i - 1];
      if (j > 0) h += hits[static_cast<std::size_t>(j - 1) * np + i];
      if (i > 0 && j > 0) h -= hits[static_cast<std::size_t>(j - 1) * np + i - 1];
    }
  }

  std::vector<double> table(grid.node_count());
  for (int j = 0; j < np; ++j) {
    const double v = grid.coord(j);
    for (int i = 0; i < np; ++i) {
      const double u = grid.coord(i);
      const double raw = static_cast<double>(hits[static_cast<std::size_t>(j) * np + i]) /
                         static_cast<double>(m);
      table[static_cast<std::size_t>(j) * np + i] =
          std::clamp(raw, std::max(u + v - 1.0, 0.0), std::min(u, v));
    }
  }
  return CopulaSpec::tabulated(GridFunction(grid, std::move(table)), "empirical");
}

}  // namespace asymcop
