#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solitonlab/expression.hpp"
#include "solitonlab/jet.hpp"
#include "solitonlab/tensor.hpp"

namespace solitonlab {

enum class MetricMode { kMetric, kFrame };
/// Basis in which structure/potential components are written.
enum class Basis { kCoordinate, kFrame };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Thresholds used by the checks. All residuals are measured in an
/// orthonormal frame.
struct Tolerances {
  double identity = 1e-8;           // structural identities
  double table = 1e-9;              // expected-value tables
  double soliton = 1e-8;            // soliton residual norm
  double positive_definite = 1e-10; // minimum metric eigenvalue
  double condition = 1e12;          // maximum metric condition number
  double division_guard = kDefaultDivisionGuard;
  double frame = 1e-12;             // frame orthonormality of the induced metric
  double rank = 1e-10;              // nullity-fit regressor threshold
  double constancy = 1e-8;          // relative spread allowed for "constant" fields
};

struct VectorFieldSpec {
  std::vector<Expression> components;
  Basis basis = Basis::kCoordinate;
};

struct CovectorFieldSpec {
  std::vector<Expression> components;
  Basis basis = Basis::kCoordinate;
};

/// Almost contact structure (φ, ξ, η). phi[i][j] is φ^i_j, i.e. column j is
/// φ applied to the j-th basis vector.
struct StructureSpec {
  Basis basis = Basis::kCoordinate;
  std::vector<std::vector<Expression>> phi;
  std::vector<Expression> xi;
  std::vector<Expression> eta;
};

/// A chart with a Riemannian metric and optional named fields.
///
/// In metric mode `metric[i][j]` holds g_ij (both triangles filled). In frame
/// mode `frame[a][i]` holds the i-th coordinate component of e_a and the
/// metric is the one making the frame orthonormal.
struct ManifoldSpec {
  std::string name;
  std::vector<std::string> coordinates;
  std::map<std::string, double> parameters;
  MetricMode mode = MetricMode::kMetric;
  std::vector<std::vector<Expression>> metric;
  std::vector<std::vector<Expression>> frame;
  std::optional<StructureSpec> structure;
  std::map<std::string, VectorFieldSpec> vector_fields;
  std::map<std::string, Expression> scalar_fields;
  std::optional<double> declared_lambda;
  std::vector<Interval> domain;
  Tolerances tolerances;

  int dim() const { return static_cast<int>(coordinates.size()); }
  SymbolTable symbols() const { return {coordinates, parameters}; }
  EvalOptions eval_options() const { return {tolerances.division_guard}; }
  Expression parse(const std::string& text) const { return Expression::parse(text, symbols()); }
};

/// Metric jets at a point; in frame mode also the frame E (frame[a][i] =
/// e_a^i as an Up-Down tensor indexed (i, a)) and its coframe θ (indexed (a, i)).
struct MetricJets {
  TensorField metric;
  std::optional<TensorField> frame;
  std::optional<TensorField> coframe;
};

MetricJets evaluate_metric(const ManifoldSpec& spec, const Point& p);

/// Inverse of a d x d jet matrix (rank-2 tensor); slots are swapped.
TensorField inverse(const TensorField& m, double guard = kDefaultDivisionGuard);

/// Deterministic low-discrepancy sample of the declared domain, kept 5% away
/// from each boundary. The seed selects a Cranley-Patterson shift of a
/// Halton sequence.
std::vector<Point> sample_points(const ManifoldSpec& spec, int count, std::uint64_t seed);

/// Checks the invariants of a spec at `probes` sample points: shapes, every
/// expression evaluates, metric symmetric and positive definite with bounded
/// condition number, frame-mode orthonormality. Throws ManifoldError naming
/// the failing identity and point.
void validate(const ManifoldSpec& spec, int probes = 10);

std::string format_point(const Point& p);

}  // namespace solitonlab
