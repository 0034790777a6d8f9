#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asymcop/grid.hpp"

namespace asymcop {

using Params = std::map<std::string, double>;

enum class SpecKind {
  family,     // closed-form built-in family
  generator,  // Archimedean-type, evaluated through a generator inverse
  tabulated,  // bilinear interpolation of a GridFunction
  transpose,
  mixture,    // t * first + (1 - t) * second
};

const char* to_string(SpecKind kind) noexcept;

/// Symbolic description of a bivariate copula (or copula-like function).
///
/// Specs are immutable and cheap to copy; composite specs (transpose,
/// mixture) share their operands. Whether the result is actually a copula is
/// decided by verify_axioms, not by construction.
class CopulaSpec {
public:
  /// Formula-backed spec. `kind` is family or generator.
  static CopulaSpec formula(SpecKind kind, std::string family, Params params, Evaluator eval);
  static CopulaSpec tabulated(GridFunction table, std::string origin = "tabulated");

  double operator()(double u, double v) const;

  SpecKind kind() const noexcept;
  const std::string& family() const noexcept;
  const Params& params() const noexcept;
  /// False when any part of the spec goes through an interpolated table.
  bool formula_backed() const noexcept;
  /// Non-null only for tabulated specs.
  const GridFunction* table() const noexcept;
  /// One operand for transpose, two for mixture, none otherwise.
  std::span<const CopulaSpec> operands() const noexcept;
  /// Mixture weight of the first operand; 1 for non-mixtures.
  double weight() const noexcept;

  GridFunction render(const Grid& grid) const;

private:
  struct Node;
  explicit CopulaSpec(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;

  friend CopulaSpec transpose(const CopulaSpec& c);
  friend CopulaSpec convex_combine(const CopulaSpec& c1, const CopulaSpec& c2, double t);
};

/// C^T(u, v) = C(v, u). Transposing a transpose returns the original spec.
CopulaSpec transpose(const CopulaSpec& c);

/// t * c1 + (1 - t) * c2; throws std::invalid_argument unless 0 <= t <= 1.
CopulaSpec convex_combine(const CopulaSpec& c1, const CopulaSpec& c2, double t);

/// Node-wise |C(u,v) - C(v,u)|.
GridFunction bracket(const CopulaSpec& c, const Grid& grid);
/// Same, for an already rendered function.
GridFunction bracket(const GridFunction& rendered);

// ---------------------------------------------------------------------------
// Subcopulas

/// Component of a subcopula carried by a measure-zero set (for example
/// rational coordinate pairs). Never sampled onto a grid and never integrated.
struct NullPart {
  std::string description;
  Evaluator value;
  /// Human-readable bracket formula for diagnostics.
  std::string bracket_description;

  double bracket(double q1, double q2) const;
};

/// The product domain S1 x S2 on which margins are pinned.
struct ProductDomain {
  std::string description = "[0,1] x [0,1]";
  std::vector<double> s1{0.0, 1.0};
  std::vector<double> s2{0.0, 1.0};
};

class SubcopulaSpec {
public:
  /// A full copula viewed as a subcopula: no null part, full domain.
  SubcopulaSpec(CopulaSpec copula);  // NOLINT(google-explicit-constructor)
  SubcopulaSpec(CopulaSpec ae_part, std::optional<NullPart> null_part, ProductDomain domain);

  const CopulaSpec& ae_part() const noexcept { return ae_part_; }
  const std::optional<NullPart>& null_part() const noexcept { return null_part_; }
  const ProductDomain& domain() const noexcept { return domain_; }
  /// True when results computed from the a.e. part ignore a non-null annotation.
  bool ae_only() const noexcept { return null_part_.has_value(); }

private:
  CopulaSpec ae_part_;
  std::optional<NullPart> null_part_;
  ProductDomain domain_;
};

SubcopulaSpec transpose(const SubcopulaSpec& s);

// ---------------------------------------------------------------------------
// Axiom verification

struct NodeWitness {
  double u = 0.0;
  double v = 0.0;
};

struct AxiomReport {
  struct NodeCheck {
    bool pass = true;
    double worst = 0.0;  // largest violation magnitude, >= 0
    NodeWitness witness;
  };
  struct RectangleCheck {
    bool pass = true;
    double worst = 0.0;  // most negative cell volume
    NodeWitness lower;   // (u1, v1)
    NodeWitness upper;   // (u2, v2)
  };
  struct PairCheck {
    bool pass = true;
    double worst = 0.0;  // max of |dC| - |du| - |dv|
    NodeWitness first;
    NodeWitness second;
  };

  double tolerance = 0.0;
  NodeCheck grounded;
  NodeCheck margins;
  RectangleCheck two_increasing;
  PairCheck lipschitz;
  NodeCheck fh_envelope;

  bool all_pass() const noexcept {
    return grounded.pass && margins.pass && two_increasing.pass && lipschitz.pass &&
           fh_envelope.pass;
  }
};

struct AxiomOptions {
  double tolerance = 1e-9;
  std::uint64_t seed = 0x5eed5eedULL;
  int random_pairs = 10000;
};

/// Checks groundedness, uniform margins, 2-increasingness on every cell,
/// the 1-Lipschitz bound (axis neighbours plus seeded random node pairs) and
/// the envelope W <= C <= M. Failures are reported, never thrown.
AxiomReport verify_axioms(const GridFunction& rendered, const AxiomOptions& options = {});
AxiomReport verify_axioms(const CopulaSpec& c, const Grid& grid, const AxiomOptions& options = {});

/// Volume C(u2,v2) - C(u2,v1) - C(u1,v2) + C(u1,v1) between node indices.
double rectangle_volume(const GridFunction& c, int i1, int j1, int i2, int j2) noexcept;

/// 1e-9 for formula-backed specs, 2/n for anything interpolated.
double default_tolerance(const CopulaSpec& c, const Grid& grid) noexcept;

// ---------------------------------------------------------------------------
// Sklar construction / extraction

using Margin = std::function<double(double)>;

struct Box {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
};

/// Joint distribution sampled on a box; node (i, j) of `values` sits at
/// (x(i), y(j)).
struct JointTable {
  Box box;
  GridFunction values;

  double x(int i) const noexcept;
  double y(int j) const noexcept;
};

/// H(x, y) = C(F(x), G(y)) on the box. Rejects margins that decrease between
/// adjacent nodes by more than 1e-12 or that do not run from 0 to 1.
JointTable sklar_construct(const CopulaSpec& c, const Margin& F, const Margin& G, const Box& box,
                           const Grid& grid);

/// Tabulates C(u, v) = H(F^[-1](u), G^[-1](v)) on `out`, inverting the
/// sampled margins by linear interpolation and reading H bilinearly.
/// Rejects margins with a plateau wider than one cell.
CopulaSpec sklar_extract(const JointTable& joint, const Margin& F, const Margin& G,
                         const Grid& out);

}  // namespace asymcop
