#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solitonlab/geometry.hpp"
#include "solitonlab/report.hpp"

namespace solitonlab {

/// Structure tensors at one point, as jets where derivatives are needed
/// later and as values otherwise. All in coordinate components.
struct StructurePoint {
  StructureFields fields;
  TensorField h;        // h = ½ £_ξ φ, (1,1), order 2
  TensorField h_prime;  // h' = h∘φ, (1,1), order 2
  TensorValue ell;      // ℓ X = R(X,ξ)ξ
  Vec xi;
  Vec eta;
  TensorValue phi;
};

StructurePoint structure_at(const Geometry& geo);

/// Φ(X,Y) = g(X, φY) as a (0,2) field.
TensorField fundamental_two_form(const Geometry& geo);
/// N_φ = [φ,φ] + 2dη⊗ξ with dη(X,Y) = ½(Xη(Y) - Yη(X) - η([X,Y])); layout
/// N(k,i,j) = N(∂i,∂j)^k.
TensorValue normality_tensor(const Geometry& geo);
/// (∇_X φ)Y - g(φX,Y)ξ + η(Y)φX with layout (k, j, i) for X=∂i, Y=∂j.
TensorValue kenmotsu_residual(const Geometry& geo);
/// Orthonormal frame whose first vector is ξ.
Frame adapted_frame(const Geometry& geo, std::span<const double> xi);

/// Global least-squares fit of R(X,Y)ξ = κ{η(Y)X - η(X)Y} + μ{η(Y)h'X - η(X)h'Y}.
struct NullityFit {
  double kappa = 0.0;
  std::optional<double> mu;  // empty when the h' regressor is numerically zero
  double residual = 0.0;     // max frame component of the fitted remainder
  double h_prime_norm = 0.0; // RMS norm of the h' regressor column
};
NullityFit nullity_fit(const ManifoldSpec& spec, const std::vector<Point>& points);

/// Pointwise S = a g + b η⊗η; reports mean and spread of a and b.
struct EtaEinsteinFit {
  double a_mean = 0.0, a_spread = 0.0;
  double b_mean = 0.0, b_spread = 0.0;
  double residual = 0.0;  // max over samples of the pointwise fit remainder
  // Max deviation of (a, b) from (r/2n + 1, -(r/2n + 2n + 1)).
  double kenmotsu_form_residual = 0.0;
};
EtaEinsteinFit eta_einstein_fit(const ManifoldSpec& spec, const std::vector<Point>& points);

struct ContactTransformation {
  double lie_eta = 0.0;      // max |£_V η|
  double orthogonal = 0.0;   // max |£_V η - σ η|
  double sigma_min = 0.0, sigma_max = 0.0;
  bool conformal = false;    // £_V η = σ η
  bool strict = false;       // £_V η = 0
};
ContactTransformation contact_transformation_check(const ManifoldSpec& spec, const VectorFieldSpec& v,
                                                   const std::vector<Point>& points, double tol);

/// What a structure check established about the manifold.
struct StructureSummary {
  int n = 0;
  bool almost_contact = false;
  bool almost_kenmotsu = false;
  bool kenmotsu = false;
  double kenmotsu_residual = 0.0;  // max |(∇_X φ)Y - g(φX,Y)ξ + η(Y)φX|
  std::optional<NullityFit> nullity;
  bool nullity_holds = false;
  std::optional<EtaEinsteinFit> eta_einstein;
  bool eta_einstein_holds = false;
};

/// Runs every structure suite over the sample points and appends checks.
/// Suites whose hypotheses fail are reported as skipped; classification
/// outcomes (normal or not, nullity, η-Einstein) go into report.values.
StructureSummary check_structure(const ManifoldSpec& spec, const std::vector<Point>& points, Report& report);

/// Curvature-engine self checks: torsion, ∇g, Bianchi, R4 symmetries, and
/// the three-dimensional Ricci decomposition when d = 3.
void check_curvature_identities(const ManifoldSpec& spec, const std::vector<Point>& points, Report& report);

/// Dual-path checks of the commutation formulas for one vector field.
void check_commutation(const ManifoldSpec& spec, const VectorFieldSpec& v, const std::vector<Point>& points,
                       Report& report, const std::string& label);

}  // namespace solitonlab
