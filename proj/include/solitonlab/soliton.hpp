#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solitonlab/contact.hpp"
#include "solitonlab/geometry.hpp"
#include "solitonlab/report.hpp"

namespace solitonlab {

enum class PotentialMode { kVector, kGradient, kTrivial };

/// A soliton question about a manifold: which potential, and either a given
/// λ or a request to fit it.
struct SolitonProblem {
  const ManifoldSpec* spec = nullptr;
  PotentialMode mode = PotentialMode::kTrivial;
  VectorFieldSpec vector;   // kVector
  Expression function;      // kGradient
  std::optional<double> lambda;
  std::string label;        // how the potential was specified, for reports
  CurvatureConvention convention = CurvatureConvention::kSectional;

  /// V itself, Du in gradient mode, 0 when trivial.
  TensorField potential_field(const Geometry& geo) const;
};

/// T = 2R4 + λ(g⊼g) + (g⊼£_V g), coordinate components.
TensorValue riemann_soliton_residual(const Geometry& geo, const TensorField& v, double lambda,
                                     CurvatureConvention c = CurvatureConvention::kSectional);
/// R4 + ½λ(g⊼g) + (g⊼Hess u), coordinate components.
TensorValue gradient_soliton_residual(const Geometry& geo, const Jet3& u, double lambda,
                                      CurvatureConvention c = CurvatureConvention::kSectional);
/// £_V g + 2/(2n-1) S + 2/(2n-1)(2nλ + div V) g. Throws Error in even dimension.
TensorValue contracted_residual(const Geometry& geo, const TensorField& v, double lambda);

/// Closed-form least-squares λ over all sample points, with the per-point
/// best λ(p) as an almost-soliton diagnostic.
struct LambdaFit {
  std::optional<double> lambda;  // empty when unidentifiable
  double residual_max = 0.0;     // Frobenius norm at the fitted λ
  double residual_rms = 0.0;
  double pointwise_min = 0.0, pointwise_max = 0.0;
  double pointwise_residual = 0.0;  // max residual when λ may vary per point
  std::vector<double> pointwise;    // λ(p) per sample
};
LambdaFit fit_lambda(const SolitonProblem& problem, const std::vector<Point>& points);

enum class Classification { kShrinking, kSteady, kExpanding, kTrivial };
const char* to_string(Classification c);
/// Sign of λ (steady when |λ| <= tol), or trivial when sup|V| <= tol.
Classification classify(double lambda, double sup_potential, double tol);

struct SolitonSummary {
  double lambda = 0.0;
  bool fitted = false;
  LambdaFit fit;
  double residual_max = 0.0;
  double residual_rms = 0.0;
  double residual_component = 0.0;  // max |frame component| of the residual
  bool holds = false;
  double div_mean = 0.0, div_spread = 0.0, div_std = 0.0;
  bool div_constant = false;
  std::vector<double> div_values;  // div V (Δu in gradient mode) per sample
  double sup_potential = 0.0;
  Classification classification = Classification::kTrivial;
};

/// Residual norms, λ fit, classification, contraction bridge and the
/// divergence relations that apply to the given structure classification.
SolitonSummary check_soliton(const SolitonProblem& problem, const std::vector<Point>& points, Report& report,
                             const StructureSummary* structure = nullptr);

/// Theorem ids accepted by theorem_audit.
const std::vector<std::string>& theorem_ids();

/// Evaluates hypotheses and conclusions of a theorem independently. Returns
/// true iff every hypothesis holds; conclusions are reported as skipped
/// otherwise.
bool theorem_audit(const SolitonProblem& problem, const std::vector<Point>& points, const std::string& theorem,
                   Report& report);

}  // namespace solitonlab
