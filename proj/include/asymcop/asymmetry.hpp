#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "asymcop/copula.hpp"
#include "asymcop/grid.hpp"

namespace asymcop {

/// L^p norm of the bracket |C - C^T|.
double mu_p(const CopulaSpec& c, double p, const Grid& grid);

/// Subcopula version, computed on the a.e. part. When the bracket exceeds the
/// threshold t somewhere, the norm is taken of the good part of its
/// Calderon-Zygmund split; otherwise the bracket is its own good part.
double mu_p(const SubcopulaSpec& c, double p, const Grid& grid, double t = 1.0);

enum class Relation {
  first_more_symmetric,
  second_more_symmetric,
  equivalent,
  incomparable,
};

const char* to_string(Relation r) noexcept;

struct BracketWitness {
  NodeWitness node;
  double first = 0.0;   // bracket of the first spec at the node
  double second = 0.0;  // bracket of the second spec at the node
};

struct OrderVerdict {
  Relation relation = Relation::equivalent;
  /// For incomparable: the node of largest first-over-second gap, then the
  /// node of largest second-over-first gap. Otherwise the single node of
  /// largest absolute gap.
  std::vector<BracketWitness> witnesses;
  double tolerance = 0.0;
  bool ae_only = false;
};

/// Pointwise bracket comparison: C1 is more symmetric when its bracket is
/// at most that of C2 (plus tol) at every node. Tolerance must be >= 0.
OrderVerdict compare_order(const SubcopulaSpec& c1, const SubcopulaSpec& c2, const Grid& grid,
                           double tol);

struct Equivalence {
  bool equivalent = false;
  double sup_deviation = 0.0;  // sup |bracket(c1) - bracket(c2)|
};

Equivalence equivalent(const SubcopulaSpec& c1, const SubcopulaSpec& c2, const Grid& grid,
                       double tol);

struct ClassPartition {
  std::vector<std::vector<std::size_t>> classes;  // each sorted; ordered by first index
  std::vector<std::size_t> representatives;       // first index of each class
  /// Largest bracket sup-deviation between two members of the same class.
  /// May exceed the tolerance: the partition is the transitive closure of a
  /// relation that is not itself transitive.
  double max_intra_deviation = 0.0;

  std::size_t count() const noexcept { return classes.size(); }
};

/// Single-linkage grouping under `equivalent`. Throws on an empty list.
ClassPartition distinct_classes(const std::vector<SubcopulaSpec>& specs, const Grid& grid,
                                double tol);

struct SweepResult {
  std::vector<double> params;
  std::vector<double> values;
  double argmin = 0.0;
  double min_value = 0.0;
  int iterations = 0;
  bool non_unimodal = false;
  struct Bracket {
    double lo;
    double hi;
  };
  std::vector<Bracket> trace;
};

struct SweepOptions {
  int scan_points = 33;
  double relative_width = 1e-6;
  int max_iterations = 60;
};

/// Coarse scan of `objective` on [a, b] followed by golden-section refinement
/// around the best scan point. A scan with more than one strict local minimum
/// is flagged non_unimodal and not refined. Throws std::invalid_argument for
/// a >= b; a range narrower than 1e-9 is evaluated once at a.
SweepResult golden_sweep(const std::function<double(double)>& objective, double a, double b,
                         const SweepOptions& options = {});

/// Most symmetric member of a one-parameter family under mu_p.
SweepResult most_symmetric(const std::function<SubcopulaSpec(double)>& family, double a, double b,
                           double p, const Grid& grid, const SweepOptions& options = {});

}  // namespace asymcop
