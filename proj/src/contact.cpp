#include "solitonlab/contact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "solitonlab/error.hpp"

namespace solitonlab {

namespace {

TensorValue identity(int d) {
  TensorValue t(d, slots(1, 1), 0.0);
  for (int i = 0; i < d; ++i) t(i, i) = 1.0;
  return t;
}

TensorValue vec_tensor(const Vec& v, Slot s) {
  TensorValue t(static_cast<int>(v.size()), {s}, 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) t.at_flat(i) = v[i];
  return t;
}

TensorValue compose(const TensorValue& a, const TensorValue& b) {
  const int d = a.dim();
  TensorValue r(d, slots(1, 1), 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int m = 0; m < d; ++m) r(i, j) += a(i, m) * b(m, j);
  return r;
}

double trace(const TensorValue& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a(i, i);
  return s;
}

// g(A·, ·) - g(·, A·): zero iff A is self-adjoint.
TensorValue self_adjoint_defect(const TensorValue& g, const TensorValue& a) {
  const int d = g.dim();
  TensorValue r(d, slots(0, 2), 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int m = 0; m < d; ++m) r(i, j) += g(j, m) * a(m, i) - g(i, m) * a(m, j);
  return r;
}

double fnorm(const Frame& f, const TensorValue& t) { return max_abs(f.to_frame(t)); }

int half_dim(int d) { return (d - 1) / 2; }

}  // namespace

StructurePoint structure_at(const Geometry& geo) {
  const int d = geo.dim();
  StructurePoint sp;
  sp.fields = geo.structure();
  sp.h = geo.lie_derivative(sp.fields.phi, sp.fields.xi);
  for (Jet3& j : sp.h.data()) j *= 0.5;
  sp.h_prime = TensorField(d, slots(1, 1));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Jet3 s = Jet3::constant(d, 0.0);
      for (int m = 0; m < d; ++m) s += sp.h(i, m) * sp.fields.phi(m, j);
      sp.h_prime(i, j) = s;
    }
  sp.phi = value_of(sp.fields.phi);
  sp.xi.assign(static_cast<std::size_t>(d), 0.0);
  sp.eta.assign(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i) {
    sp.xi[static_cast<std::size_t>(i)] = sp.fields.xi(i).value();
    sp.eta[static_cast<std::size_t>(i)] = sp.fields.eta(i).value();
  }
  const TensorField& R = geo.riemann();
  sp.ell = TensorValue(d, slots(1, 1), 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int b = 0; b < d; ++b)
        for (int e = 0; e < d; ++e)
          sp.ell(i, j) += R(i, b, j, e).value() * sp.xi[static_cast<std::size_t>(b)] * sp.xi[static_cast<std::size_t>(e)];
  return sp;
}

TensorField fundamental_two_form(const Geometry& geo) {
  const int d = geo.dim();
  const StructureFields f = geo.structure();
  const TensorField& g = geo.metric();
  TensorField phi2(d, slots(0, 2));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Jet3 s = Jet3::constant(d, 0.0);
      for (int k = 0; k < d; ++k) s += g(i, k) * f.phi(k, j);
      phi2(i, j) = s;
    }
  return phi2;
}

TensorValue normality_tensor(const Geometry& geo) {
  const int d = geo.dim();
  const StructureFields f = geo.structure();
  const TensorValue dphi = value_of(geo.partial(f.phi));  // dphi(k,j,m) = ∂m φ^k_j
  const TensorValue deta = value_of(geo.partial(f.eta));  // deta(j,i) = ∂i η_j
  const TensorValue phi = value_of(f.phi);
  TensorValue n(d, slots(1, 2), 0.0);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int m = 0; m < d; ++m) {
          s += phi(m, i) * dphi(k, j, m) - phi(m, j) * dphi(k, i, m) - phi(k, m) * (dphi(m, j, i) - dphi(m, i, j));
        }
        s += (deta(j, i) - deta(i, j)) * f.xi(k).value();
        n(k, i, j) = s;
      }
  return n;
}

TensorValue kenmotsu_residual(const Geometry& geo) {
  const int d = geo.dim();
  const StructureFields f = geo.structure();
  const TensorValue dphi = value_of(geo.covariant_derivative(f.phi));  // (k,j,i) = ((∇_i φ)∂j)^k
  const TensorValue g = geo.metric_value();
  const TensorValue phi = value_of(f.phi);
  TensorValue r(d, slots(1, 2), 0.0);
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) {
        double gphi = 0.0;
        for (int m = 0; m < d; ++m) gphi += g(j, m) * phi(m, i);
        r(k, j, i) = dphi(k, j, i) - gphi * f.xi(k).value() + f.eta(j).value() * phi(k, i);
      }
  return r;
}

Frame adapted_frame(const Geometry& geo, std::span<const double> xi) {
  const int d = geo.dim();
  std::vector<Vec> seeds{Vec(xi.begin(), xi.end())};
  for (int i = 0; i < d; ++i) {
    Vec e(static_cast<std::size_t>(d), 0.0);
    e[static_cast<std::size_t>(i)] = 1.0;
    seeds.push_back(e);
  }
  return gram_schmidt(geo.metric_value(), seeds);
}

NullityFit nullity_fit(const ManifoldSpec& spec, const std::vector<Point>& points) {
  struct Row {
    Vec r, a, b;
  };
  std::vector<Row> rows;
  double saa = 0, sab = 0, sbb = 0, sar = 0, sbr = 0;
  for (const Point& p : points) {
    Geometry geo(spec, p);
    const StructurePoint sp = structure_at(geo);
    const Frame fr = adapted_frame(geo, sp.xi);
    const TensorValue hp = value_of(sp.h_prime);
    const int d = geo.dim();
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) {
        const Vec& x = fr.vectors[static_cast<std::size_t>(a)];
        const Vec& y = fr.vectors[static_cast<std::size_t>(b)];
        double ex = 0, ey = 0;
        for (int i = 0; i < d; ++i) {
          ex += sp.eta[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
          ey += sp.eta[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
        }
        const Vec hx = solitonlab::apply(hp, x);
        const Vec hy = solitonlab::apply(hp, y);
        Vec av(static_cast<std::size_t>(d)), bv(static_cast<std::size_t>(d));
        for (std::size_t i = 0; i < av.size(); ++i) {
          av[i] = ey * x[i] - ex * y[i];
          bv[i] = ey * hx[i] - ex * hy[i];
        }
        Row row{fr.components(riemann_13(geo, x, y, sp.xi)), fr.components(av), fr.components(bv)};
        for (std::size_t i = 0; i < row.r.size(); ++i) {
          saa += row.a[i] * row.a[i];
          sab += row.a[i] * row.b[i];
          sbb += row.b[i] * row.b[i];
          sar += row.a[i] * row.r[i];
          sbr += row.b[i] * row.r[i];
        }
        rows.push_back(std::move(row));
      }
  }
  NullityFit fit;
  if (rows.empty() || saa <= 0.0) throw Error("nullity fit needs at least one sample and dimension >= 2");
  fit.h_prime_norm = std::sqrt(sbb / static_cast<double>(rows.size()));
  if (fit.h_prime_norm < spec.tolerances.rank) {
    fit.kappa = sar / saa;
  } else {
    const double det = saa * sbb - sab * sab;
    if (std::abs(det) <= 1e-14 * saa * sbb) {
      // h' proportional to the identity on the sampled planes: μ not separable.
      fit.kappa = sar / saa;
    } else {
      fit.kappa = (sar * sbb - sbr * sab) / det;
      fit.mu = (saa * sbr - sab * sar) / det;
    }
  }
  const double mu = fit.mu.value_or(0.0);
  for (const Row& row : rows)
    for (std::size_t i = 0; i < row.r.size(); ++i)
      fit.residual = std::max(fit.residual, std::abs(row.r[i] - fit.kappa * row.a[i] - mu * row.b[i]));
  return fit;
}

EtaEinsteinFit eta_einstein_fit(const ManifoldSpec& spec, const std::vector<Point>& points) {
  EtaEinsteinFit fit;
  if (points.empty()) return fit;
  double amin = std::numeric_limits<double>::infinity(), amax = -amin, bmin = amin, bmax = -amin;
  double asum = 0, bsum = 0;
  for (const Point& p : points) {
    Geometry geo(spec, p);
    const StructureFields f = geo.structure();
    const int d = geo.dim();
    const int n = half_dim(d);
    Vec xi(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) xi[static_cast<std::size_t>(i)] = f.xi(i).value();
    const Frame fr = adapted_frame(geo, xi);
    const TensorValue s = fr.to_frame(value_of(geo.ricci()));
    double a = 0.0;
    for (int c = 1; c < d; ++c) a += s(c, c);
    a /= static_cast<double>(d - 1);
    const double b = s(0, 0) - a;
    double res = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const double model = (i == j ? a : 0.0) + (i == 0 && j == 0 ? b : 0.0);
        res = std::max(res, std::abs(s(i, j) - model));
      }
    fit.residual = std::max(fit.residual, res);
    const double r = geo.scalar_curvature().value();
    const double a_k = r / (2.0 * n) + 1.0;
    const double b_k = -(r / (2.0 * n) + 2.0 * n + 1.0);
    fit.kenmotsu_form_residual = std::max({fit.kenmotsu_form_residual, std::abs(a - a_k), std::abs(b - b_k)});
    asum += a;
    bsum += b;
    amin = std::min(amin, a);
    amax = std::max(amax, a);
    bmin = std::min(bmin, b);
    bmax = std::max(bmax, b);
  }
  const double m = static_cast<double>(points.size());
  fit.a_mean = asum / m;
  fit.b_mean = bsum / m;
  fit.a_spread = amax - amin;
  fit.b_spread = bmax - bmin;
  return fit;
}

ContactTransformation contact_transformation_check(const ManifoldSpec& spec, const VectorFieldSpec& v,
                                                   const std::vector<Point>& points, double tol) {
  ContactTransformation out;
  out.sigma_min = std::numeric_limits<double>::infinity();
  out.sigma_max = -out.sigma_min;
  for (const Point& p : points) {
    Geometry geo(spec, p);
    const StructureFields f = geo.structure();
    const TensorValue lie = value_of(geo.lie_derivative(f.eta, geo.vector_field(v)));
    const int d = geo.dim();
    double sigma = 0.0;
    for (int j = 0; j < d; ++j) sigma += lie(j) * f.xi(j).value();
    TensorValue orth = lie;
    for (int j = 0; j < d; ++j) orth(j) -= sigma * f.eta(j).value();
    const Frame fr = geo.orthonormal_frame();
    out.lie_eta = std::max(out.lie_eta, fnorm(fr, lie));
    out.orthogonal = std::max(out.orthogonal, fnorm(fr, orth));
    out.sigma_min = std::min(out.sigma_min, sigma);
    out.sigma_max = std::max(out.sigma_max, sigma);
  }
  out.conformal = out.orthogonal < tol;
  out.strict = out.lie_eta < tol;
  return out;
}

StructureSummary check_structure(const ManifoldSpec& spec, const std::vector<Point>& points, Report& report) {
  StructureSummary sum;
  const int d = spec.dim();
  const double tol = spec.tolerances.identity;
  if (!spec.structure) throw ManifoldError("manifold '" + spec.name + "' declares no almost contact structure (phi, xi, eta)");
  if (d % 2 == 0 || d < 3) {
    report.check("almost contact", "dimension is odd (2n+1, n >= 1)", 1.0, 0.0, "dimension " + std::to_string(d));
    return sum;
  }
  const int n = half_dim(d);
  sum.n = n;
  const double dn = static_cast<double>(n);

  Tally ac, ak, cls, st, ken;
  for (const Point& p : points) {
    Geometry geo(spec, p);
    const Frame fr = geo.orthonormal_frame();
    const StructurePoint sp = structure_at(geo);
    const TensorValue g = geo.metric_value();
    const TensorValue id = identity(d);
    const TensorValue& phi = sp.phi;
    const TensorValue xi_eta = [&] {
      TensorValue t(d, slots(1, 1), 0.0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) t(i, j) = sp.xi[static_cast<std::size_t>(i)] * sp.eta[static_cast<std::size_t>(j)];
      return t;
    }();

    // almost contact metric axioms
    ac.observe("almost contact", "phi^2 X = -X + eta(X) xi", fnorm(fr, compose(phi, phi) + id - xi_eta), tol);
    double eta_xi = 0.0;
    for (int i = 0; i < d; ++i) eta_xi += sp.eta[static_cast<std::size_t>(i)] * sp.xi[static_cast<std::size_t>(i)];
    ac.observe("almost contact", "eta(xi) = 1", std::abs(eta_xi - 1.0), tol);
    TensorValue compat(d, slots(0, 2), 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) s += phi(a, i) * g(a, b) * phi(b, j);
        compat(i, j) = s - g(i, j) + sp.eta[static_cast<std::size_t>(i)] * sp.eta[static_cast<std::size_t>(j)];
      }
    ac.observe("almost contact", "g(phi X, phi Y) = g(X,Y) - eta(X) eta(Y)", fnorm(fr, compat), tol);
    const Vec xi_flat = lower(g, sp.xi);
    TensorValue dual(d, slots(0, 1), 0.0);
    for (int i = 0; i < d; ++i) dual(i) = sp.eta[static_cast<std::size_t>(i)] - xi_flat[static_cast<std::size_t>(i)];
    ac.observe("almost contact", "eta = g(xi, .)", fnorm(fr, dual), tol);

    // almost Kenmotsu
    const TensorValue deta = value_of(exterior_derivative(sp.fields.eta));
    ak.observe("almost Kenmotsu", "d eta = 0", fnorm(fr, deta), tol);
    const TensorField two_form = fundamental_two_form(geo);
    const TensorValue dphi = value_of(exterior_derivative(two_form));
    const TensorValue w = wedge(vec_tensor(sp.eta, Slot::kDown), value_of(two_form));
    ak.observe("almost Kenmotsu", "d Phi = 2 eta ^ Phi", fnorm(fr, dphi - 2.0 * w), tol);

    // classification data
    cls.observe("classification", "normality tensor", fnorm(fr, normality_tensor(geo)), tol);
    cls.observe("classification", "Kenmotsu (nabla_X phi)Y", fnorm(fr, kenmotsu_residual(geo)), tol);
    const TensorValue h = value_of(sp.h);
    const TensorValue hp = value_of(sp.h_prime);
    cls.observe("classification", "|h|", fnorm(fr, h), tol);

    // structure tensors of an almost Kenmotsu manifold
    const TensorValue dxi = value_of(geo.covariant_derivative(sp.fields.xi));  // (k,i) = ∇_i ξ^k
    st.observe("structure tensors", "nabla_X xi = X - eta(X) xi + h'X", fnorm(fr, dxi - id + xi_eta - hp), tol);
    st.observe("structure tensors", "h xi = 0", fnorm(fr, vec_tensor(solitonlab::apply(h, sp.xi), Slot::kUp)), tol);
    st.observe("structure tensors", "l xi = 0", fnorm(fr, vec_tensor(solitonlab::apply(sp.ell, sp.xi), Slot::kUp)), tol);
    st.observe("structure tensors", "tr h = 0", std::abs(trace(h)), tol);
    st.observe("structure tensors", "tr h' = 0", std::abs(trace(hp)), tol);
    st.observe("structure tensors", "h phi + phi h = 0", fnorm(fr, compose(h, phi) + compose(phi, h)), tol);
    st.observe("structure tensors", "h and h' are self-adjoint",
               std::max(fnorm(fr, self_adjoint_defect(g, h)), fnorm(fr, self_adjoint_defect(g, hp))), tol);
    st.observe("structure tensors", "tr l = -2n - tr h^2", std::abs(trace(sp.ell) + 2.0 * dn + trace(compose(h, h))), tol);

    // Kenmotsu identities
    const TensorValue Q = value_of(geo.ricci_operator());
    const TensorValue R = value_of(geo.riemann());
    ken.observe("Kenmotsu", "nabla_X xi = X - eta(X) xi", fnorm(fr, dxi - id + xi_eta), tol);
    TensorValue rxi(d, slots(1, 2), 0.0);
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double s = 0.0;
          for (int b = 0; b < d; ++b) s += R(k, b, i, j) * sp.xi[static_cast<std::size_t>(b)];
          rxi(k, i, j) = s - (sp.eta[static_cast<std::size_t>(i)] * id(k, j) - sp.eta[static_cast<std::size_t>(j)] * id(k, i));
        }
    ken.observe("Kenmotsu", "R(X,Y) xi = eta(X) Y - eta(Y) X", fnorm(fr, rxi), tol);
    Vec qxi = solitonlab::apply(Q, sp.xi);
    for (int k = 0; k < d; ++k) qxi[static_cast<std::size_t>(k)] += 2.0 * dn * sp.xi[static_cast<std::size_t>(k)];
    ken.observe("Kenmotsu", "Q xi = -2n xi", fnorm(fr, vec_tensor(qxi, Slot::kUp)), tol);
    const TensorValue dQ = value_of(geo.covariant_derivative(geo.ricci_operator()));  // (k,j,i) = ((∇_i Q)∂j)^k
    TensorValue a1(d, slots(1, 1), 0.0), a2(d, slots(1, 1), 0.0);
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i) {
        double s1 = Q(k, i) + 2.0 * dn * id(k, i);
        double s2 = 2.0 * Q(k, i) + 4.0 * dn * id(k, i);
        for (int j = 0; j < d; ++j) {
          s1 += dQ(k, j, i) * sp.xi[static_cast<std::size_t>(j)];
          s2 += dQ(k, i, j) * sp.xi[static_cast<std::size_t>(j)];
        }
        a1(k, i) = s1;
        a2(k, i) = s2;
      }
    ken.observe("Kenmotsu", "(nabla_X Q) xi = -QX - 2nX", fnorm(fr, a1), tol);
    ken.observe("Kenmotsu", "(nabla_xi Q) X = -2QX - 4nX", fnorm(fr, a2), tol);
  }

  Report local;
  ac.emit(local);
  report.append(local);
  sum.almost_contact = local.passed();

  nlohmann::ordered_json cl;
  cl["n"] = n;
  cl["almost_contact"] = sum.almost_contact;
  if (!sum.almost_contact) {
    report.skip("almost Kenmotsu", "almost Kenmotsu conditions", "structure is not almost contact metric");
    report.values["structure"] = cl;
    return sum;
  }
  Report akr;
  ak.emit(akr);
  report.append(akr);
  sum.almost_kenmotsu = akr.passed();
  cl["almost_kenmotsu"] = sum.almost_kenmotsu;
  const double normal_res = cls.max("classification", "normality tensor");
  const double ken_res = cls.max("classification", "Kenmotsu (nabla_X phi)Y");
  sum.kenmotsu = sum.almost_kenmotsu && ken_res < tol;
  sum.kenmotsu_residual = ken_res;
  cl["normality_residual"] = normal_res;
  cl["kenmotsu_residual"] = ken_res;
  cl["h_norm"] = cls.max("classification", "|h|");
  cl["normal"] = normal_res < tol;
  cl["kenmotsu"] = sum.kenmotsu;

  if (!sum.almost_kenmotsu) {
    report.skip("structure tensors", "h, h', l identities", "structure is not almost Kenmotsu");
    report.skip("Kenmotsu", "Kenmotsu identities", "structure is not almost Kenmotsu");
    report.skip("(kappa,mu)'", "nullity identities", "structure is not almost Kenmotsu");
    report.values["structure"] = cl;
    return sum;
  }
  st.emit(report);
  if (sum.kenmotsu) {
    ken.emit(report);
  } else {
    report.skip("Kenmotsu", "Kenmotsu identities", "not Kenmotsu ((nabla_X phi)Y residual " + std::to_string(ken_res) + ")");
  }

  // (κ,μ)' nullity
  const NullityFit nf = nullity_fit(spec, points);
  sum.nullity = nf;
  sum.nullity_holds = nf.residual < tol;
  nlohmann::ordered_json nj;
  nj["kappa"] = nf.kappa;
  if (nf.mu) {
    nj["mu"] = *nf.mu;
  } else {
    nj["mu"] = "undetermined";
  }
  nj["residual"] = nf.residual;
  nj["h_prime_norm"] = nf.h_prime_norm;
  nj["holds"] = sum.nullity_holds;
  cl["nullity"] = nj;

  const EtaEinsteinFit ef = eta_einstein_fit(spec, points);
  sum.eta_einstein = ef;
  sum.eta_einstein_holds = ef.residual < tol;
  nlohmann::ordered_json ej;
  ej["a"] = ef.a_mean;
  ej["a_spread"] = ef.a_spread;
  ej["b"] = ef.b_mean;
  ej["b_spread"] = ef.b_spread;
  ej["residual"] = ef.residual;
  ej["holds"] = sum.eta_einstein_holds;
  cl["eta_einstein"] = ej;
  if (sum.kenmotsu && sum.eta_einstein_holds) {
    report.check("eta-Einstein", "S = (r/2n + 1) g - (r/2n + 2n + 1) eta x eta", ef.kenmotsu_form_residual, tol);
  }

  const bool run_km = !sum.kenmotsu && sum.nullity_holds && nf.mu.has_value() && nf.kappa < -1.0;
  if (!run_km) {
    std::string why = sum.kenmotsu ? "Kenmotsu (h' = 0)"
                      : !sum.nullity_holds ? "nullity condition does not hold"
                      : !nf.mu ? "mu undetermined"
                               : "kappa >= -1";
    report.skip("(kappa,mu)'", "nullity identities", why);
    report.values["structure"] = cl;
    return sum;
  }
  report.check("(kappa,mu)'", "R(X,Y) xi = kappa{..} + mu{..} (fitted)", nf.residual, tol,
               "kappa " + std::to_string(nf.kappa) + ", mu " + std::to_string(*nf.mu));
  const double kappa = nf.kappa;
  Tally km;
  for (const Point& p : points) {
    Geometry geo(spec, p);
    const Frame fr = geo.orthonormal_frame();
    const StructurePoint sp = structure_at(geo);
    const TensorValue g = geo.metric_value();
    const TensorValue id = identity(d);
    const TensorValue hp = value_of(sp.h_prime);
    const TensorValue Q = value_of(geo.ricci_operator());
    TensorValue xi_eta(d, slots(1, 1), 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) xi_eta(i, j) = sp.xi[static_cast<std::size_t>(i)] * sp.eta[static_cast<std::size_t>(j)];

    km.observe("(kappa,mu)'", "h'^2 = (kappa+1) phi^2",
               fnorm(fr, compose(hp, hp) - (kappa + 1.0) * compose(sp.phi, sp.phi)), tol);
    Vec qxi = solitonlab::apply(Q, sp.xi);
    for (int k = 0; k < d; ++k) qxi[static_cast<std::size_t>(k)] -= 2.0 * dn * kappa * sp.xi[static_cast<std::size_t>(k)];
    km.observe("(kappa,mu)'", "Q xi = 2n kappa xi", fnorm(fr, vec_tensor(qxi, Slot::kUp)), tol);
    const TensorValue q_model = (-2.0 * dn) * id + (2.0 * dn * (kappa + 1.0)) * xi_eta - (2.0 * dn) * hp;
    km.observe("(kappa,mu)'", "QX = -2nX + 2n(kappa+1) eta(X) xi - 2n h'X", fnorm(fr, Q - q_model), tol);
    km.observe("(kappa,mu)'", "r = 2n(kappa - 2n)",
               std::abs(geo.scalar_curvature().value() - 2.0 * dn * (kappa - 2.0 * dn)), tol);

    const TensorValue dh = value_of(geo.covariant_derivative(sp.h_prime));  // (k,j,i) = ((∇_i h')∂j)^k
    TensorValue A(d, slots(0, 2), 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double gh = 0.0;
        for (int m = 0; m < d; ++m) gh += g(j, m) * hp(m, i);
        A(i, j) = (kappa + 1.0) * g(i, j) - gh;
      }
    TensorValue res(d, slots(0, 3), 0.0);
    const Vec& eta = sp.eta;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int z = 0; z < d; ++z) {
          double lhs = 0.0;
          for (int k = 0; k < d; ++k) lhs += g(z, k) * dh(k, j, i);
          const double rhs = A(i, j) * eta[static_cast<std::size_t>(z)] + eta[static_cast<std::size_t>(j)] * A(i, z) -
                             2.0 * (kappa + 1.0) * eta[static_cast<std::size_t>(i)] * eta[static_cast<std::size_t>(j)] *
                                 eta[static_cast<std::size_t>(z)];
          res(i, j, z) = lhs - rhs;
        }
    km.observe("(kappa,mu)'", "g((nabla_X h')Y,Z) formula", fnorm(fr, res), tol);
    TensorValue divh(d, slots(0, 1), 0.0), trh(d, slots(0, 1), 0.0);
    for (int x = 0; x < d; ++x) {
      double s1 = 0.0, s2 = 0.0;
      for (int i = 0; i < d; ++i) {
        s1 += dh(i, x, i);
        s2 += dh(i, i, x);
      }
      divh(x) = s1 - 2.0 * dn * (kappa + 1.0) * eta[static_cast<std::size_t>(x)];
      trh(x) = s2;
    }
    km.observe("(kappa,mu)'", "(div h')X = 2n(kappa+1) eta(X)", fnorm(fr, divh), tol);
    km.observe("(kappa,mu)'", "tr(nabla_X h') = 0", fnorm(fr, trh), tol);
  }
  km.emit(report);
  report.values["structure"] = cl;
  return sum;
}

void check_curvature_identities(const ManifoldSpec& spec, const std::vector<Point>& points, Report& report) {
  const double tol = spec.tolerances.identity;
  const int d = spec.dim();
  Tally t;
  for (const Point& p : points) {
    Geometry geo(spec, p);
    const Frame fr = geo.orthonormal_frame();
    const TensorValue G = value_of(geo.christoffel());
    double tors = 0.0;
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) tors = std::max(tors, std::abs(G(k, i, j) - G(k, j, i)));
    t.observe("curvature", "torsion-free", tors, 0.0, "exact");
    t.observe("curvature", "nabla g = 0", fnorm(fr, value_of(geo.covariant_derivative(geo.metric()))), tol);
    const TensorValue R = value_of(geo.riemann());
    TensorValue bianchi(d, slots(1, 3), 0.0);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e) bianchi(a, b, c, e) = R(a, b, c, e) + R(a, c, e, b) + R(a, e, b, c);
    t.observe("curvature", "first Bianchi identity", fnorm(fr, bianchi), tol);
    const TensorValue R4 = fr.to_frame(value_of(geo.riemann_04()));
    double sym = 0.0;
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y)
        for (int z = 0; z < d; ++z)
          for (int w = 0; w < d; ++w) {
            sym = std::max({sym, std::abs(R4(x, y, z, w) + R4(y, x, z, w)), std::abs(R4(x, y, z, w) + R4(x, y, w, z)),
                            std::abs(R4(x, y, z, w) - R4(z, w, x, y))});
          }
    t.observe("curvature", "R4 antisymmetry and pair symmetry", sym, tol);
    const TensorValue S = value_of(geo.ricci());
    double ssym = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) ssym = std::max(ssym, std::abs(S(i, j) - S(j, i)));
    t.observe("curvature", "Ricci tensor symmetric", ssym, tol);
    if (d == 3) {
      const TensorValue g = geo.metric_value();
      const TensorValue Q = value_of(geo.ricci_operator());
      const double r = geo.scalar_curvature().value();
      TensorValue dec(d, slots(1, 3), 0.0);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          for (int c = 0; c < d; ++c)
            for (int e = 0; e < d; ++e) {
              const double dac = a == c ? 1.0 : 0.0, dae = a == e ? 1.0 : 0.0;
              const double model = g(e, b) * Q(a, c) - g(c, b) * Q(a, e) + S(e, b) * dac - S(c, b) * dae -
                                   0.5 * r * (g(e, b) * dac - g(c, b) * dae);
              dec(a, b, c, e) = R(a, b, c, e) - model;
            }
      t.observe("curvature", "three-dimensional Ricci decomposition of R", fnorm(fr, dec), tol);
    }
  }
  t.emit(report);
}

void check_commutation(const ManifoldSpec& spec, const VectorFieldSpec& v, const std::vector<Point>& points,
                       Report& report, const std::string& label) {
  const double tol = spec.tolerances.identity;
  const int d = spec.dim();
  const std::string group = "commutation (" + label + ")";
  Tally t;
  const auto rel = [](const Frame& fr, const TensorValue& a, const TensorValue& b) {
    const double scale = std::max({1.0, max_abs(fr.to_frame(a)), max_abs(fr.to_frame(b))});
    return max_abs(fr.to_frame(a - b)) / scale;
  };
  for (const Point& p : points) {
    Geometry geo(spec, p);
    const Frame fr = geo.orthonormal_frame();
    const TensorField V = geo.vector_field(v);
    const TensorValue g = geo.metric_value();
    const TensorValue c_formula = value_of(geo.lie_derivative_connection_formula(V));
    const TensorValue c_koszul = value_of(geo.lie_derivative_connection(V));
    const TensorValue c_bracket = value_of(geo.lie_derivative_connection_direct(V));
    const TensorValue DL = value_of(geo.covariant_derivative(geo.lie_derivative_metric(V)));
    TensorValue lhs(d, slots(0, 3), 0.0), rhs(d, slots(0, 3), 0.0);
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y)
        for (int z = 0; z < d; ++z) {
          double s = 0.0;
          for (int k = 0; k < d; ++k) s += g(z, k) * c_formula(k, x, y);
          lhs(x, y, z) = 2.0 * s;
          rhs(x, y, z) = DL(y, z, x) + DL(z, x, y) - DL(x, y, z);
        }
    t.observe(group, "2g((L_V nabla)(X,Y),Z) = (nabla_X L_V g)(Y,Z) + (nabla_Y L_V g)(Z,X) - (nabla_Z L_V g)(X,Y)",
              rel(fr, lhs, rhs), tol, "relative to max(1, |terms|)");
    t.observe(group, "(L_V nabla)(X,Y) = L_V nabla_X Y - nabla_X L_V Y - nabla_[V,X] Y", rel(fr, c_koszul, c_bracket), tol,
              "relative to max(1, |terms|)");
    const TensorValue lr1 = value_of(geo.lie_derivative_curvature(V));
    const TensorValue lr2 = value_of(geo.lie_derivative_curvature_direct(V));
    t.observe(group, "(L_V R)(X,Y)Z = (nabla_X L_V nabla)(Y,Z) - (nabla_Y L_V nabla)(X,Z)", rel(fr, lr1, lr2), tol,
              "relative to max(1, |terms|)");
    const TensorValue L = value_of(geo.lie_derivative_metric(V));
    const TensorValue gi = value_of(geo.inverse_metric());
    double tr = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) tr += gi(i, j) * L(i, j);
    const double div = geo.divergence(V).value();
    t.observe(group, "tr L_V g = 2 div V", std::abs(tr - 2.0 * div) / std::max(1.0, std::abs(div)), tol,
              "relative to max(1, |div V|)");
  }
  t.emit(report);
}

}  // namespace solitonlab
