#include "solitonlab/geometry.hpp"

#include <cmath>
#include <string>

#include "solitonlab/error.hpp"

namespace solitonlab {

namespace {

Jet3 zero(int d) { return Jet3::constant(d, 0.0); }

TensorField constant_vector(int d, int i) {
  TensorField v(d, slots(1, 0), zero(d));
  v(i) = Jet3::constant(d, 1.0);
  return v;
}

}  // namespace

// ---------------------------------------------------------------- frames

TensorValue Frame::to_frame(const TensorValue& t) const {
  const int d = dim();
  TensorValue cur = t;
  for (int s = 0; s < t.rank(); ++s) {
    TensorValue next(d, t.slots(), 0.0);
    const bool up = t.slots()[static_cast<std::size_t>(s)] == Slot::kUp;
    for (std::size_t f = 0; f < next.size(); ++f) {
      std::vector<int> idx = next.unflatten(f);
      const int a = idx[static_cast<std::size_t>(s)];
      const Vec& m = up ? coframe[static_cast<std::size_t>(a)] : vectors[static_cast<std::size_t>(a)];
      double acc = 0.0;
      for (int i = 0; i < d; ++i) {
        idx[static_cast<std::size_t>(s)] = i;
        acc += m[static_cast<std::size_t>(i)] * cur.at_flat(cur.flatten(idx));
      }
      next.at_flat(f) = acc;
    }
    cur = std::move(next);
  }
  return cur;
}

Vec Frame::components(std::span<const double> v) const {
  Vec out(coframe.size(), 0.0);
  for (std::size_t a = 0; a < coframe.size(); ++a)
    for (std::size_t i = 0; i < v.size(); ++i) out[a] += coframe[a][i] * v[i];
  return out;
}

Frame gram_schmidt(const TensorValue& g, const std::vector<Vec>& seeds) {
  const int d = g.dim();
  Frame fr;
  for (const Vec& seed : seeds) {
    if (fr.dim() == d) break;
    Vec v = seed;
    const double n0 = std::sqrt(std::max(0.0, inner(g, v, v)));
    if (n0 == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vec& e : fr.vectors) {
        const double c = inner(g, v, e);
        for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i)] -= c * e[static_cast<std::size_t>(i)];
      }
    }
    const double n = std::sqrt(std::max(0.0, inner(g, v, v)));
    if (n < 1e-6 * n0) continue;
    for (double& x : v) x /= n;
    fr.vectors.push_back(v);
  }
  if (fr.dim() != d) throw Error("Gram-Schmidt could not complete an orthonormal frame");
  for (const Vec& e : fr.vectors) fr.coframe.push_back(lower(g, e));
  return fr;
}

Vec lower(const TensorValue& g, std::span<const double> v) {
  const int d = g.dim();
  Vec out(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out[static_cast<std::size_t>(i)] += g(i, j) * v[static_cast<std::size_t>(j)];
  return out;
}

double inner(const TensorValue& g, std::span<const double> a, std::span<const double> b) {
  const int d = g.dim();
  double s = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s += g(i, j) * a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
  return s;
}

Vec apply(const TensorValue& op, std::span<const double> v) {
  const int d = op.dim();
  Vec out(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out[static_cast<std::size_t>(i)] += op(i, j) * v[static_cast<std::size_t>(j)];
  return out;
}

// ---------------------------------------------------------------- Geometry

Geometry::Geometry(const ManifoldSpec& spec, Point p)
    : spec_(&spec), point_(std::move(p)), coords_(lift_coordinates(point_)) {
  MetricJets mj = evaluate_metric(spec, point_);
  metric_ = std::move(mj.metric);
  frame_ = std::move(mj.frame);
  coframe_ = std::move(mj.coframe);
}

const TensorField& Geometry::inverse_metric() const {
  if (!inverse_) inverse_ = inverse(metric_, spec_->tolerances.division_guard);
  return *inverse_;
}

const TensorField& Geometry::christoffel() const {
  if (christoffel_) return *christoffel_;
  const int d = dim();
  const TensorField dg = partial(metric_);  // dg(i,j,k) = ∂k g_ij
  const TensorField& gi = inverse_metric();
  TensorField gam(d, {Slot::kUp, Slot::kDown, Slot::kDown});
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        Jet3 s = zero(d);
        for (int l = 0; l < d; ++l) s += gi(k, l) * (dg(j, l, i) + dg(i, l, j) - dg(i, j, l));
        s *= 0.5;
        gam(k, i, j) = s;
        gam(k, j, i) = s;
      }
  christoffel_ = std::move(gam);
  return *christoffel_;
}

const TensorField& Geometry::riemann() const {
  if (riemann_) return *riemann_;
  const int d = dim();
  const TensorField& G = christoffel();
  const TensorField dG = partial(G);  // dG(a,i,j,m) = ∂m Γ^a_ij
  TensorField R(d, slots(1, 3));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = c; e < d; ++e) {
          if (c == e) {
            R(a, b, c, e) = zero(d).truncated(1);
            continue;
          }
          Jet3 s = dG(a, e, b, c) - dG(a, c, b, e);
          for (int m = 0; m < d; ++m) s += G(a, c, m) * G(m, e, b) - G(a, e, m) * G(m, c, b);
          R(a, b, c, e) = s;
          R(a, b, e, c) = -s;
        }
  riemann_ = std::move(R);
  return *riemann_;
}

const TensorField& Geometry::ricci() const {
  if (ricci_) return *ricci_;
  const int d = dim();
  const TensorField& R = riemann();
  TensorField S(d, slots(0, 2));
  for (int y = 0; y < d; ++y)
    for (int z = 0; z < d; ++z) {
      Jet3 s = zero(d);
      for (int c = 0; c < d; ++c) s += R(c, z, c, y);
      S(y, z) = s;
    }
  ricci_ = std::move(S);
  return *ricci_;
}

const TensorField& Geometry::ricci_operator() const {
  if (ricci_operator_) return *ricci_operator_;
  const int d = dim();
  const TensorField& S = ricci();
  const TensorField& gi = inverse_metric();
  TensorField Q(d, slots(1, 1));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Jet3 s = zero(d);
      for (int c = 0; c < d; ++c) s += gi(a, c) * S(c, b);
      Q(a, b) = s;
    }
  ricci_operator_ = std::move(Q);
  return *ricci_operator_;
}

const Jet3& Geometry::scalar_curvature() const {
  if (scalar_) return *scalar_;
  const TensorField& Q = ricci_operator();
  Jet3 r = zero(dim());
  for (int a = 0; a < dim(); ++a) r += Q(a, a);
  scalar_ = std::move(r);
  return *scalar_;
}

TensorField Geometry::riemann_04(CurvatureConvention conv) const {
  const int d = dim();
  const TensorField& R = riemann();
  TensorField out(d, slots(0, 4));
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z)
        for (int w = 0; w < d; ++w) {
          Jet3 s = zero(d);
          for (int a = 0; a < d; ++a) {
            s += conv == CurvatureConvention::kSectional ? metric_(z, a) * R(a, w, x, y)
                                                         : metric_(w, a) * R(a, z, x, y);
          }
          out(x, y, z, w) = s;
        }
  return out;
}

Frame Geometry::orthonormal_frame() const {
  const int d = dim();
  std::vector<Vec> seeds;
  for (int i = 0; i < d; ++i) {
    Vec e(static_cast<std::size_t>(d), 0.0);
    e[static_cast<std::size_t>(i)] = 1.0;
    seeds.push_back(e);
  }
  return gram_schmidt(metric_value(), seeds);
}

Jet3 Geometry::scalar_field(const Expression& u) const {
  Jet3 j = u.evaluate(std::span<const Jet3>(coords_), spec_->eval_options());
  if (j.dim() == 0) j = Jet3::constant(dim(), j.value());
  return j;
}

TensorField Geometry::vector_field(const VectorFieldSpec& v) const {
  const int d = dim();
  if (static_cast<int>(v.components.size()) != d) throw ManifoldError("vector field has wrong component count");
  TensorField out(d, slots(1, 0));
  std::vector<Jet3> comps;
  for (const auto& e : v.components) comps.push_back(scalar_field(e));
  if (v.basis == Basis::kCoordinate) {
    for (int i = 0; i < d; ++i) out(i) = comps[static_cast<std::size_t>(i)];
    return out;
  }
  if (!frame_) throw ManifoldError("frame-basis vector field on a manifold without a frame");
  for (int i = 0; i < d; ++i) {
    Jet3 s = zero(d);
    for (int a = 0; a < d; ++a) s += (*frame_)(i, a) * comps[static_cast<std::size_t>(a)];
    out(i) = s;
  }
  return out;
}

TensorField Geometry::vector_field(const std::string& name) const {
  const auto it = spec_->vector_fields.find(name);
  if (it == spec_->vector_fields.end()) throw ManifoldError("no vector field named '" + name + "'");
  return vector_field(it->second);
}

TensorField Geometry::covector_field(const CovectorFieldSpec& w) const {
  const int d = dim();
  if (static_cast<int>(w.components.size()) != d) throw ManifoldError("covector field has wrong component count");
  TensorField out(d, slots(0, 1));
  std::vector<Jet3> comps;
  for (const auto& e : w.components) comps.push_back(scalar_field(e));
  if (w.basis == Basis::kCoordinate) {
    for (int i = 0; i < d; ++i) out(i) = comps[static_cast<std::size_t>(i)];
    return out;
  }
  if (!coframe_) throw ManifoldError("frame-basis covector on a manifold without a frame");
  for (int i = 0; i < d; ++i) {
    Jet3 s = zero(d);
    for (int a = 0; a < d; ++a) s += comps[static_cast<std::size_t>(a)] * (*coframe_)(a, i);
    out(i) = s;
  }
  return out;
}

StructureFields Geometry::structure() const {
  if (!spec_->structure) throw ManifoldError("manifold '" + spec_->name + "' declares no almost contact structure");
  const StructureSpec& st = *spec_->structure;
  const int d = dim();
  StructureFields out;
  out.xi = vector_field(VectorFieldSpec{st.xi, st.basis});
  out.eta = covector_field(CovectorFieldSpec{st.eta, st.basis});
  TensorField phi(d, slots(1, 1));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) phi(i, j) = scalar_field(st.phi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  if (st.basis == Basis::kFrame) {
    if (!frame_) throw ManifoldError("frame-basis structure on a manifold without a frame");
    TensorField conv(d, slots(1, 1));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Jet3 s = zero(d);
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) s += (*frame_)(i, a) * phi(a, b) * (*coframe_)(b, j);
        conv(i, j) = s;
      }
    phi = std::move(conv);
  }
  out.phi = std::move(phi);
  return out;
}

TensorField Geometry::partial(const TensorField& t) const {
  const int d = dim();
  std::vector<Slot> s = t.slots();
  s.push_back(Slot::kDown);
  TensorField out(d, s);
  for (std::size_t f = 0; f < t.size(); ++f)
    for (int m = 0; m < d; ++m) out.at_flat(f * static_cast<std::size_t>(d) + static_cast<std::size_t>(m)) = t.at_flat(f).partial(m);
  return out;
}

TensorField Geometry::covariant_derivative(const TensorField& t) const {
  const int d = dim();
  const TensorField& G = christoffel();
  TensorField out = partial(t);
  const int r = t.rank();
  for (std::size_t f = 0; f < out.size(); ++f) {
    std::vector<int> idx = out.unflatten(f);
    const int m = idx.back();
    idx.pop_back();
    Jet3& acc = out.at_flat(f);
    for (int s = 0; s < r; ++s) {
      const int orig = idx[static_cast<std::size_t>(s)];
      const bool up = t.slots()[static_cast<std::size_t>(s)] == Slot::kUp;
      for (int k = 0; k < d; ++k) {
        idx[static_cast<std::size_t>(s)] = k;
        const Jet3& tk = t.at_flat(t.flatten(idx));
        if (up) {
          acc += G(orig, m, k) * tk;
        } else {
          acc -= G(k, m, orig) * tk;
        }
      }
      idx[static_cast<std::size_t>(s)] = orig;
    }
  }
  return out;
}

TensorField Geometry::lie_derivative(const TensorField& t, const TensorField& v) const {
  const int d = dim();
  const TensorField dt = partial(t);
  const TensorField dv = partial(v);  // dv(k, m) = ∂m V^k
  TensorField out(d, t.slots());
  const int r = t.rank();
  for (std::size_t f = 0; f < out.size(); ++f) {
    std::vector<int> idx = out.unflatten(f);
    Jet3 acc = zero(d);
    for (int m = 0; m < d; ++m) acc += v(m) * dt.at_flat(f * static_cast<std::size_t>(d) + static_cast<std::size_t>(m));
    for (int s = 0; s < r; ++s) {
      const int orig = idx[static_cast<std::size_t>(s)];
      const bool up = t.slots()[static_cast<std::size_t>(s)] == Slot::kUp;
      for (int m = 0; m < d; ++m) {
        idx[static_cast<std::size_t>(s)] = m;
        const Jet3& tm = t.at_flat(t.flatten(idx));
        if (up) {
          acc -= tm * dv(orig, m);
        } else {
          acc += tm * dv(m, orig);
        }
      }
      idx[static_cast<std::size_t>(s)] = orig;
    }
    out.at_flat(f) = std::move(acc);
  }
  return out;
}

TensorField Geometry::lie_bracket(const TensorField& x, const TensorField& y) const {
  const int d = dim();
  const TensorField dx = partial(x);
  const TensorField dy = partial(y);
  TensorField out(d, slots(1, 0));
  for (int k = 0; k < d; ++k) {
    Jet3 s = zero(d);
    for (int m = 0; m < d; ++m) s += x(m) * dy(k, m) - y(m) * dx(k, m);
    out(k) = s;
  }
  return out;
}

TensorField Geometry::covariant_derivative_along(const TensorField& x, const TensorField& y) const {
  const int d = dim();
  const TensorField dy = covariant_derivative(y);  // dy(k, m) = ∇m Y^k
  TensorField out(d, slots(1, 0));
  for (int k = 0; k < d; ++k) {
    Jet3 s = zero(d);
    for (int m = 0; m < d; ++m) s += x(m) * dy(k, m);
    out(k) = s;
  }
  return out;
}

TensorField Geometry::lie_derivative_metric(const TensorField& v) const {
  const int d = dim();
  const TensorField dv = covariant_derivative(v);  // dv(k, i) = ∇i V^k
  TensorField L(d, slots(0, 2));
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Jet3 s = zero(d);
      for (int k = 0; k < d; ++k) s += metric_(k, j) * dv(k, i) + metric_(i, k) * dv(k, j);
      L(i, j) = s;
      L(j, i) = s;
    }
  return L;
}

TensorField Geometry::lie_derivative_connection(const TensorField& v) const {
  const int d = dim();
  const TensorField DL = covariant_derivative(lie_derivative_metric(v));  // DL(y,z,x) = (∇x L)(y,z)
  const TensorField& gi = inverse_metric();
  TensorField C(d, {Slot::kUp, Slot::kDown, Slot::kDown});
  for (int x = 0; x < d; ++x)
    for (int y = x; y < d; ++y) {
      std::vector<Jet3> low(static_cast<std::size_t>(d));
      for (int z = 0; z < d; ++z) low[static_cast<std::size_t>(z)] = 0.5 * (DL(y, z, x) + DL(z, x, y) - DL(x, y, z));
      for (int k = 0; k < d; ++k) {
        Jet3 s = zero(d);
        for (int z = 0; z < d; ++z) s += gi(k, z) * low[static_cast<std::size_t>(z)];
        C(k, x, y) = s;
        C(k, y, x) = s;
      }
    }
  return C;
}

TensorField Geometry::lie_derivative_connection_direct(const TensorField& v) const {
  const int d = dim();
  const TensorField& G = christoffel();
  TensorField C(d, {Slot::kUp, Slot::kDown, Slot::kDown});
  for (int i = 0; i < d; ++i) {
    const TensorField X = constant_vector(d, i);
    const TensorField VX = lie_bracket(v, X);
    for (int j = 0; j < d; ++j) {
      const TensorField Y = constant_vector(d, j);
      TensorField nablaXY(d, slots(1, 0));
      for (int k = 0; k < d; ++k) nablaXY(k) = G(k, i, j);
      const TensorField t1 = lie_bracket(v, nablaXY);
      const TensorField t2 = covariant_derivative_along(X, lie_bracket(v, Y));
      const TensorField t3 = covariant_derivative_along(VX, Y);
      for (int k = 0; k < d; ++k) C(k, i, j) = t1(k) - t2(k) - t3(k);
    }
  }
  return C;
}

TensorField Geometry::lie_derivative_connection_formula(const TensorField& v) const {
  const int d = dim();
  const TensorField& G = christoffel();
  const TensorField dv = partial(v);    // dv(k,i) = ∂i V^k
  const TensorField ddv = partial(dv);  // ddv(k,i,j) = ∂j∂i V^k
  const TensorField dG = partial(G);
  TensorField C(d, {Slot::kUp, Slot::kDown, Slot::kDown});
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Jet3 s = ddv(k, i, j);
        for (int m = 0; m < d; ++m) {
          s += v(m) * dG(k, i, j, m) - G(m, i, j) * dv(k, m) + G(k, m, j) * dv(m, i) + G(k, i, m) * dv(m, j);
        }
        C(k, i, j) = s;
      }
  return C;
}

TensorField Geometry::lie_derivative_curvature(const TensorField& v) const {
  const int d = dim();
  const TensorField DC = covariant_derivative(lie_derivative_connection(v));  // DC(k,i,j,m) = (∇m £∇)^k_ij
  TensorField out(d, slots(1, 3));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) out(a, b, c, e) = DC(a, e, b, c) - DC(a, c, b, e);
  return out;
}

TensorField Geometry::lie_derivative_curvature_direct(const TensorField& v) const {
  return lie_derivative(riemann(), v);
}

TensorField Geometry::gradient(const Jet3& u) const {
  const int d = dim();
  const TensorField& gi = inverse_metric();
  TensorField out(d, slots(1, 0));
  for (int i = 0; i < d; ++i) {
    Jet3 s = zero(d);
    for (int j = 0; j < d; ++j) s += gi(i, j) * u.partial(j);
    out(i) = s;
  }
  return out;
}

TensorField Geometry::hessian(const Jet3& u) const {
  const int d = dim();
  const TensorField& G = christoffel();
  TensorField H(d, slots(0, 2));
  std::vector<Jet3> du;
  for (int k = 0; k < d; ++k) du.push_back(u.partial(k));
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Jet3 s = du[static_cast<std::size_t>(i)].partial(j);
      for (int k = 0; k < d; ++k) s -= G(k, i, j) * du[static_cast<std::size_t>(k)];
      H(i, j) = s;
      H(j, i) = s;
    }
  return H;
}

Jet3 Geometry::laplacian(const Jet3& u) const {
  const int d = dim();
  const TensorField H = hessian(u);
  const TensorField& gi = inverse_metric();
  Jet3 s = zero(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s += gi(i, j) * H(i, j);
  return s;
}

Jet3 Geometry::divergence(const TensorField& v) const {
  const int d = dim();
  const TensorField& G = christoffel();
  Jet3 s = zero(d);
  for (int i = 0; i < d; ++i) {
    s += v(i).partial(i);
    for (int k = 0; k < d; ++k) s += G(i, i, k) * v(k);
  }
  return s;
}

// ---------------------------------------------------------------- point level

TensorValue christoffel(const ManifoldSpec& spec, const Point& p) {
  return value_of(Geometry(spec, p).christoffel());
}

Vec riemann_13(const Geometry& geo, std::span<const double> x, std::span<const double> y,
               std::span<const double> z) {
  const int d = geo.dim();
  const TensorField& R = geo.riemann();
  Vec out(static_cast<std::size_t>(d), 0.0);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e)
          out[static_cast<std::size_t>(a)] += R(a, b, c, e).value() * z[static_cast<std::size_t>(b)] *
                                              x[static_cast<std::size_t>(c)] * y[static_cast<std::size_t>(e)];
  return out;
}

double riemann_04(const Geometry& geo, std::span<const double> x, std::span<const double> y,
                  std::span<const double> z, std::span<const double> w, CurvatureConvention c) {
  const TensorValue g = geo.metric_value();
  if (c == CurvatureConvention::kSectional) return inner(g, riemann_13(geo, x, y, w), z);
  return inner(g, riemann_13(geo, x, y, z), w);
}

double sectional_curvature(const Geometry& geo, std::span<const double> x, std::span<const double> y) {
  const TensorValue g = geo.metric_value();
  Vec e1(x.begin(), x.end());
  const double n1 = std::sqrt(inner(g, e1, e1));
  for (double& v : e1) v /= n1;
  Vec e2(y.begin(), y.end());
  const double c = inner(g, e2, e1);
  for (std::size_t i = 0; i < e2.size(); ++i) e2[i] -= c * e1[i];
  const double n2 = std::sqrt(inner(g, e2, e2));
  if (!(n2 > 1e-12 * std::sqrt(inner(g, y, y)))) throw Error("sectional curvature of a degenerate plane");
  for (double& v : e2) v /= n2;
  return inner(g, riemann_13(geo, e1, e2, e2), e1);
}

TensorValue covariant_derivative(const Geometry& geo, const TensorField& t, std::span<const double> x) {
  const TensorValue dt = value_of(geo.covariant_derivative(t));
  const int d = geo.dim();
  TensorValue out(d, t.slots(), 0.0);
  for (std::size_t f = 0; f < out.size(); ++f)
    for (int m = 0; m < d; ++m) out.at_flat(f) += dt.at_flat(f * static_cast<std::size_t>(d) + static_cast<std::size_t>(m)) * x[static_cast<std::size_t>(m)];
  return out;
}

TensorValue kulkarni_nomizu(const TensorValue& a, const TensorValue& b, double tol) {
  const int d = a.dim();
  const auto check = [&](const TensorValue& t, const char* name) {
    if (t.rank() != 2 || t.covariant() != 2 || t.dim() != d) throw Error(std::string(name) + " must be a (0,2) tensor");
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (std::abs(t(i, j) - t(j, i)) > tol * std::max(1.0, std::abs(t(i, j)))) {
          throw Error(std::string("Kulkarni-Nomizu product needs symmetric input; ") + name + " is not symmetric");
        }
  };
  check(a, "A");
  check(b, "B");
  TensorValue out(d, slots(0, 4), 0.0);
  for (int x1 = 0; x1 < d; ++x1)
    for (int x2 = 0; x2 < d; ++x2)
      for (int x3 = 0; x3 < d; ++x3)
        for (int x4 = 0; x4 < d; ++x4)
          out(x1, x2, x3, x4) = a(x1, x3) * b(x2, x4) + a(x2, x4) * b(x1, x3) - a(x1, x4) * b(x2, x3) -
                                a(x2, x3) * b(x1, x4);
  return out;
}

TensorField exterior_derivative(const TensorField& form) {
  const int k = form.rank();
  if (k < 1 || k > 2 || form.contravariant() != 0) throw Error("exterior_derivative takes a 1-form or a 2-form");
  const int d = form.dim();
  TensorField out(d, slots(0, k + 1));
  for (std::size_t f = 0; f < out.size(); ++f) {
    const std::vector<int> idx = out.unflatten(f);
    Jet3 s;
    for (int p = 0; p <= k; ++p) {
      std::vector<int> rest;
      for (int q = 0; q <= k; ++q)
        if (q != p) rest.push_back(idx[static_cast<std::size_t>(q)]);
      const Jet3 term = form.at_flat(form.flatten(rest)).partial(idx[static_cast<std::size_t>(p)]);
      if (p % 2 == 0) {
        s += term;
      } else {
        s -= term;
      }
    }
    out.at_flat(f) = std::move(s);
  }
  return out;
}

TensorValue wedge(const TensorValue& eta, const TensorValue& phi) {
  const int d = eta.dim();
  TensorValue out(d, slots(0, 3), 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) out(i, j, k) = eta(i) * phi(j, k) - eta(j) * phi(i, k) + eta(k) * phi(i, j);
  return out;
}

TensorValue trace_14(const TensorValue& t, const TensorValue& gi) {
  const int d = t.dim();
  TensorValue out(d, slots(0, 2), 0.0);
  for (int y = 0; y < d; ++y)
    for (int z = 0; z < d; ++z)
      for (int x = 0; x < d; ++x)
        for (int w = 0; w < d; ++w) out(y, z) += gi(x, w) * t(x, y, z, w);
  return out;
}

}  // namespace solitonlab
