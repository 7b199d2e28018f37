#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "solitonlab/manifold.hpp"
#include "solitonlab/tensor.hpp"

namespace solitonlab {

/// Pairing used to turn the (1,3) curvature into a (0,4) tensor.
enum class CurvatureConvention {
  /// R4(X,Y,Z,W) = g(R(X,Y)W, Z); R4(X,Y,X,Y) is the sectional curvature.
  kSectional,
  /// R4(X,Y,Z,W) = g(R(X,Y)Z, W). Exploratory only.
  kStandard,
};

using Vec = std::vector<double>;

/// Orthonormal frame at a point. vectors[a] holds the coordinate components
/// of e_a, coframe[a] those of the dual 1-form θ^a.
struct Frame {
  std::vector<Vec> vectors;
  std::vector<Vec> coframe;

  int dim() const { return static_cast<int>(vectors.size()); }
  /// All components of t in this frame.
  TensorValue to_frame(const TensorValue& t) const;
  /// Frame components θ^a(v) of a coordinate vector.
  Vec components(std::span<const double> v) const;
};

/// Gram-Schmidt on `seeds` (in order) with respect to g, skipping seeds that
/// are numerically dependent on the ones already accepted.
Frame gram_schmidt(const TensorValue& g, const std::vector<Vec>& seeds);

/// Almost contact structure as coordinate-basis fields.
struct StructureFields {
  TensorField phi;  // φ^i_j
  TensorField xi;   // ξ^i
  TensorField eta;  // η_i
};

/// Differential-geometric quantities of a chart at one point, as jets.
///
/// Convention: Γ(k,i,j) = Γ^k_ij with ∇_{∂i}∂j = Γ^k_ij ∂k, and
/// R(a,b,c,d) = R^a_bcd with R(∂c,∂d)∂b = R^a_bcd ∂a where
/// R(X,Y) = ∇_X∇_Y - ∇_Y∇_X - ∇_[X,Y]. Ricci S(Y,Z) = tr(X -> R(X,Y)Z).
/// Derivative slots produced by partial/covariant derivatives come last.
///
/// Jet orders: metric 3, Christoffel 2, curvature 1. The object caches lazily
/// and is not meant to be shared between threads.
class Geometry {
 public:
  Geometry(const ManifoldSpec& spec, Point p);

  const ManifoldSpec& spec() const { return *spec_; }
  const Point& point() const { return point_; }
  int dim() const { return point_.dim(); }
  const std::vector<Jet3>& coordinates() const { return coords_; }

  const TensorField& metric() const { return metric_; }
  const TensorField& inverse_metric() const;
  const TensorField& christoffel() const;
  const TensorField& riemann() const;
  const TensorField& ricci() const;
  const TensorField& ricci_operator() const;
  const Jet3& scalar_curvature() const;
  /// (0,4) curvature R4 under the chosen pairing.
  TensorField riemann_04(CurvatureConvention c = CurvatureConvention::kSectional) const;

  /// Frame-mode only: e(i, a) = e_a^i and θ(a, i).
  const std::optional<TensorField>& frame_fields() const { return frame_; }
  const std::optional<TensorField>& coframe_fields() const { return coframe_; }

  TensorValue metric_value() const { return value_of(metric_); }
  Frame orthonormal_frame() const;

  Jet3 scalar_field(const Expression& u) const;
  TensorField vector_field(const VectorFieldSpec& v) const;
  TensorField vector_field(const std::string& name) const;
  TensorField covector_field(const CovectorFieldSpec& w) const;
  StructureFields structure() const;

  /// Coordinate partial derivatives, derivative slot appended.
  TensorField partial(const TensorField& t) const;
  TensorField covariant_derivative(const TensorField& t) const;
  /// Coordinate formula for £_V of a tensor of any valence.
  TensorField lie_derivative(const TensorField& t, const TensorField& v) const;
  TensorField lie_bracket(const TensorField& x, const TensorField& y) const;
  /// ∇_X Y for vector fields.
  TensorField covariant_derivative_along(const TensorField& x, const TensorField& y) const;

  /// (£_V g)(X,Y) = g(∇_X V, Y) + g(X, ∇_Y V).
  TensorField lie_derivative_metric(const TensorField& v) const;
  /// (£_V ∇)(k,i,j) from ∇(£_V g) via the Koszul-type commutation formula.
  TensorField lie_derivative_connection(const TensorField& v) const;
  /// (£_V ∇)(∂i,∂j) = £_V ∇_i ∂j - ∇_i £_V ∂j - ∇_[V,∂i] ∂j evaluated with
  /// vector-field brackets.
  TensorField lie_derivative_connection_direct(const TensorField& v) const;
  /// Classical coordinate formula ∂i∂jV^k + V^m∂mΓ^k_ij - Γ^m_ij∂mV^k
  /// + Γ^k_mj∂iV^m + Γ^k_im∂jV^m.
  TensorField lie_derivative_connection_formula(const TensorField& v) const;
  /// (£_V R)(X,Y)Z = (∇_X £_V∇)(Y,Z) - (∇_Y £_V∇)(X,Z); layout as riemann().
  TensorField lie_derivative_curvature(const TensorField& v) const;
  /// Leibniz definition of £_V R via lie_derivative().
  TensorField lie_derivative_curvature_direct(const TensorField& v) const;

  TensorField gradient(const Jet3& u) const;
  TensorField hessian(const Jet3& u) const;
  Jet3 laplacian(const Jet3& u) const;
  Jet3 divergence(const TensorField& v) const;

 private:
  const ManifoldSpec* spec_;
  Point point_;
  std::vector<Jet3> coords_;
  TensorField metric_;
  std::optional<TensorField> frame_;
  std::optional<TensorField> coframe_;
  mutable std::optional<TensorField> inverse_;
  mutable std::optional<TensorField> christoffel_;
  mutable std::optional<TensorField> riemann_;
  mutable std::optional<TensorField> ricci_;
  mutable std::optional<TensorField> ricci_operator_;
  mutable std::optional<Jet3> scalar_;
};

// Point-level operations.

TensorValue christoffel(const ManifoldSpec& spec, const Point& p);
/// R(X,Y)Z.
Vec riemann_13(const Geometry& geo, std::span<const double> x, std::span<const double> y,
               std::span<const double> z);
double riemann_04(const Geometry& geo, std::span<const double> x, std::span<const double> y,
                  std::span<const double> z, std::span<const double> w,
                  CurvatureConvention c = CurvatureConvention::kSectional);
/// g(R(X,Y)Y, X) after orthonormalizing {X, Y}.
double sectional_curvature(const Geometry& geo, std::span<const double> x, std::span<const double> y);
/// ∇_X T: contracts the trailing derivative slot of ∇T with X.
TensorValue covariant_derivative(const Geometry& geo, const TensorField& t, std::span<const double> x);

/// Kulkarni-Nomizu product of symmetric (0,2) tensors. Throws Error on
/// asymmetric input.
TensorValue kulkarni_nomizu(const TensorValue& a, const TensorValue& b, double symmetry_tol = 1e-9);

/// Exterior derivative of a k-form (k = 1, 2) given as an antisymmetric
/// (0,k) field; (dω)_{i0..ik} = Σ_s (-1)^s ∂_{is} ω_{..îs..}.
TensorField exterior_derivative(const TensorField& form);
/// (η∧Φ)_ijk = η_i Φ_jk - η_j Φ_ik + η_k Φ_ij.
TensorValue wedge(const TensorValue& eta, const TensorValue& phi);

/// Contraction of slots 1 and 4 of a (0,4) tensor with the inverse metric.
TensorValue trace_14(const TensorValue& t, const TensorValue& g_inverse);

Vec lower(const TensorValue& g, std::span<const double> v);
double inner(const TensorValue& g, std::span<const double> a, std::span<const double> b);
/// (1,1) tensor applied to a vector.
Vec apply(const TensorValue& op, std::span<const double> v);

}  // namespace solitonlab
