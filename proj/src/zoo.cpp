#include "solitonlab/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "solitonlab/contact.hpp"
#include "solitonlab/error.hpp"

namespace solitonlab {

const char* to_string(Source s) {
  switch (s) {
    case Source::kPublished: return "published";
    case Source::kDerived: return "derived";
    case Source::kTrivial: return "trivial";
  }
  return "?";
}

namespace {

double max_diff(const Vec& a, const Vec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Vec unit(int d, int i) {
  Vec v(static_cast<std::size_t>(d), 0.0);
  v[static_cast<std::size_t>(i)] = 1.0;
  return v;
}

// ∇_{∂i}∂j in coordinates.
Vec nabla_coord(const Geometry& geo, int i, int j) {
  const TensorField& G = geo.christoffel();
  Vec out(static_cast<std::size_t>(geo.dim()));
  for (int k = 0; k < geo.dim(); ++k) out[static_cast<std::size_t>(k)] = G(k, i, j).value();
  return out;
}

Vec curvature_coord(const Geometry& geo, int a, int b, int c) {
  const int d = geo.dim();
  return riemann_13(geo, unit(d, a), unit(d, b), unit(d, c));
}

TensorField frame_column(const Geometry& geo, int a) {
  const TensorField& e = *geo.frame_fields();
  TensorField col(geo.dim(), slots(1, 0));
  for (int i = 0; i < geo.dim(); ++i) col(i) = e(i, a);
  return col;
}

Vec values(const TensorField& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v.at_flat(i).value();
  return out;
}

// Frame components θ^a(v).
Vec to_frame(const Geometry& geo, const Vec& v) {
  const TensorField& th = *geo.coframe_fields();
  const int d = geo.dim();
  Vec out(static_cast<std::size_t>(d), 0.0);
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < d; ++i) out[static_cast<std::size_t>(a)] += th(a, i).value() * v[static_cast<std::size_t>(i)];
  return out;
}

Vec frame_bracket(const Geometry& geo, int a, int b) {
  return to_frame(geo, values(geo.lie_bracket(frame_column(geo, a), frame_column(geo, b))));
}

Vec frame_nabla(const Geometry& geo, int a, int b) {
  return to_frame(geo, values(geo.covariant_derivative_along(frame_column(geo, a), frame_column(geo, b))));
}

Vec frame_curvature(const Geometry& geo, int a, int b, int c) {
  return to_frame(geo, riemann_13(geo, values(frame_column(geo, a)), values(frame_column(geo, b)),
                                  values(frame_column(geo, c))));
}

std::vector<std::string> split_coords(int n) {
  std::vector<std::string> c{"t"};
  for (int i = 1; i <= n; ++i) {
    c.push_back("x" + std::to_string(i));
    c.push_back("y" + std::to_string(i));
  }
  return c;
}

std::vector<std::vector<Expression>> diagonal(const ManifoldSpec& spec, const std::vector<std::string>& diag) {
  const std::size_t d = diag.size();
  std::vector<std::vector<Expression>> m(d, std::vector<Expression>(d, spec.parse("0")));
  for (std::size_t i = 0; i < d; ++i) m[i][i] = spec.parse(diag[i]);
  return m;
}

std::vector<Expression> parse_all(const ManifoldSpec& spec, const std::vector<std::string>& texts) {
  std::vector<Expression> out;
  for (const auto& t : texts) out.push_back(spec.parse(t));
  return out;
}

std::vector<std::vector<Expression>> parse_rows(const ManifoldSpec& spec,
                                                const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Expression>> out;
  for (const auto& r : rows) out.push_back(parse_all(spec, r));
  return out;
}

}  // namespace

ZooEntry zoo_example_3_6(double a) {
  if (a == 0.0 || !std::isfinite(a)) throw Error("example-3-6 needs a nonzero finite parameter a");
  ZooEntry e;
  e.name = "example-3-6";
  e.description = "Kenmotsu 3-manifold g = 1/2 exp(2z)(dx^2+dy^2) + dz^2, rotational potential, lambda = 1";
  ManifoldSpec& s = e.spec;
  s.name = e.name;
  s.coordinates = {"x", "y", "z"};
  s.parameters = {{"a", a}};
  s.mode = MetricMode::kMetric;
  s.metric = diagonal(s, {"0.5*exp(2*z)", "0.5*exp(2*z)", "1"});
  s.structure = StructureSpec{Basis::kCoordinate, parse_rows(s, {{"0", "-1", "0"}, {"1", "0", "0"}, {"0", "0", "0"}}),
                              parse_all(s, {"0", "0", "1"}), parse_all(s, {"0", "0", "1"})};
  s.vector_fields["V"] = VectorFieldSpec{parse_all(s, {"a*y", "-a*x", "0"}), Basis::kCoordinate};
  s.declared_lambda = 1.0;
  s.domain = {{-2, 2}, {-2, 2}, {0.1, 2}};

  const auto half_e2z = [](const Geometry& g) { return 0.5 * std::exp(2.0 * g.point()[2]); };
  const auto connection = [&](std::string name, int i, int j, std::function<Vec(const Geometry&)> expect) {
    e.table.push_back({std::move(name), Source::kPublished,
                       [i, j, expect](const Geometry& g) { return max_diff(nabla_coord(g, i, j), expect(g)); }});
  };
  const auto zero3 = [](const Geometry&) { return Vec{0, 0, 0}; };
  connection("nabla_dx dx = -1/2 exp(2z) dz", 0, 0, [&](const Geometry& g) { return Vec{0, 0, -half_e2z(g)}; });
  connection("nabla_dx dy = 0", 0, 1, zero3);
  connection("nabla_dx dz = dx", 0, 2, [](const Geometry&) { return Vec{1, 0, 0}; });
  connection("nabla_dy dx = 0", 1, 0, zero3);
  connection("nabla_dy dy = -1/2 exp(2z) dz", 1, 1, [&](const Geometry& g) { return Vec{0, 0, -half_e2z(g)}; });
  connection("nabla_dy dz = dy", 1, 2, [](const Geometry&) { return Vec{0, 1, 0}; });
  connection("nabla_dz dx = dx", 2, 0, [](const Geometry&) { return Vec{1, 0, 0}; });
  connection("nabla_dz dy = dy", 2, 1, [](const Geometry&) { return Vec{0, 1, 0}; });
  connection("nabla_dz dz = 0", 2, 2, zero3);

  const auto curvature = [&](std::string name, int a, int b, int c, std::function<Vec(const Geometry&)> expect) {
    e.table.push_back({std::move(name), Source::kPublished, [a, b, c, expect](const Geometry& g) {
                         return max_diff(curvature_coord(g, a, b, c), expect(g));
                       }});
  };
  curvature("R(dx,dy)dz = 0", 0, 1, 2, zero3);
  curvature("R(dx,dz)dy = 0", 0, 2, 1, zero3);
  curvature("R(dx,dz)dz = -dx", 0, 2, 2, [](const Geometry&) { return Vec{-1, 0, 0}; });
  curvature("R(dx,dy)dx = 1/2 exp(2z) dy", 0, 1, 0, [&](const Geometry& g) { return Vec{0, half_e2z(g), 0}; });
  curvature("R(dx,dy)dy = -1/2 exp(2z) dx", 0, 1, 1, [&](const Geometry& g) { return Vec{-half_e2z(g), 0, 0}; });
  curvature("R(dx,dz)dx = 1/2 exp(2z) dz", 0, 2, 0, [&](const Geometry& g) { return Vec{0, 0, half_e2z(g)}; });
  curvature("R(dy,dz)dx = 0", 1, 2, 0, zero3);
  curvature("R(dy,dz)dy = 1/2 exp(2z) dz", 1, 2, 1, [&](const Geometry& g) { return Vec{0, 0, half_e2z(g)}; });
  curvature("R(dy,dz)dz = -dy", 1, 2, 2, [](const Geometry&) { return Vec{0, -1, 0}; });

  const auto ricci = [&](std::string name, int i, std::function<double(const Geometry&)> expect) {
    e.table.push_back({std::move(name), Source::kPublished,
                       [i, expect](const Geometry& g) { return std::abs(g.ricci()(i, i).value() - expect(g)); }});
  };
  ricci("S(dx,dx) = -exp(2z)", 0, [&](const Geometry& g) { return -2.0 * half_e2z(g); });
  ricci("S(dy,dy) = -exp(2z)", 1, [&](const Geometry& g) { return -2.0 * half_e2z(g); });
  ricci("S(dz,dz) = -2", 2, [](const Geometry&) { return -2.0; });
  e.table.push_back({"S = -2n g", Source::kPublished, [](const Geometry& g) {
                       return max_abs(value_of(g.ricci()) - (-2.0) * g.metric_value());
                     }});
  e.table.push_back({"R(X,Y)Z = -{g(Y,Z)X - g(X,Z)Y}", Source::kPublished, [](const Geometry& g) {
                       const TensorValue R = value_of(g.riemann());
                       const TensorValue m = g.metric_value();
                       double r = 0.0;
                       for (int a = 0; a < 3; ++a)
                         for (int b = 0; b < 3; ++b)
                           for (int c = 0; c < 3; ++c)
                             for (int d = 0; d < 3; ++d) {
                               const double model = -(m(d, b) * (a == c) - m(c, b) * (a == d));
                               r = std::max(r, std::abs(R(a, b, c, d) - model));
                             }
                       return r;
                     }});
  e.table.push_back({"L_V g = 0", Source::kPublished, [](const Geometry& g) {
                       return max_abs(value_of(g.lie_derivative_metric(g.vector_field("V"))));
                     }});
  e.table.push_back({"div V = 0", Source::kDerived,
                     [](const Geometry& g) { return std::abs(g.divergence(g.vector_field("V")).value()); }});
  e.table.push_back({"metric g_xx = 1/2 exp(2z)", Source::kPublished,
                     [&](const Geometry& g) { return std::abs(g.metric()(0, 0).value() - half_e2z(g)); }});

  e.globals = {{"lambda", 1.0, Source::kPublished},
               {"div_V", 0.0, Source::kDerived},
               {"scalar_curvature", -6.0, Source::kDerived},
               {"sectional_curvature", -1.0, Source::kPublished},
               {"kappa", -1.0, Source::kDerived},
               {"eta_einstein_a", -2.0, Source::kPublished},
               {"eta_einstein_b", 0.0, Source::kPublished}};
  return e;
}

ZooEntry zoo_example_4_5() {
  ZooEntry e;
  e.name = "example-4-5";
  e.description = "(-2,-2)' almost Kenmotsu 3-manifold from the orthonormal frame e1 = -dx + 2y dy - dz, e2 = dy, e3 = dz";
  ManifoldSpec& s = e.spec;
  s.name = e.name;
  s.coordinates = {"x", "y", "z"};
  s.mode = MetricMode::kFrame;
  s.frame = parse_rows(s, {{"-1", "2*y", "-1"}, {"0", "1", "0"}, {"0", "0", "1"}});
  s.structure = StructureSpec{Basis::kFrame, parse_rows(s, {{"0", "0", "0"}, {"0", "0", "-1"}, {"0", "1", "0"}}),
                              parse_all(s, {"1", "0", "0"}), parse_all(s, {"1", "0", "0"})};
  s.vector_fields["V"] = VectorFieldSpec{parse_all(s, {"0", "exp(-2*x)", "4*(x-z)"}), Basis::kCoordinate};
  s.scalar_fields["u"] = s.parse("-2*(z-x)^2");
  s.declared_lambda = 4.0;
  s.domain = {{-1, 1}, {-1, 1}, {0.1, 1}};

  const auto row = [&](std::string name, Source src, std::function<Vec(const Geometry&)> got, Vec want) {
    e.table.push_back({std::move(name), src, [got, want](const Geometry& g) { return max_diff(got(g), want); }});
  };
  row("[e1,e2] = -2 e2", Source::kPublished, [](const Geometry& g) { return frame_bracket(g, 0, 1); }, {0, -2, 0});
  row("[e2,e3] = 0", Source::kPublished, [](const Geometry& g) { return frame_bracket(g, 1, 2); }, {0, 0, 0});
  row("[e1,e3] = 0", Source::kPublished, [](const Geometry& g) { return frame_bracket(g, 0, 2); }, {0, 0, 0});

  const std::vector<std::vector<Vec>> nabla = {
      {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}},
      {{0, 2, 0}, {-2, 0, 0}, {0, 0, 0}},
      {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}},
  };
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      std::ostringstream name;
      name << "nabla_e" << a + 1 << " e" << b + 1 << " = ";
      const Vec& w = nabla[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if (w == Vec{0, 0, 0}) {
        name << "0";
      } else {
        for (int c = 0; c < 3; ++c)
          if (w[static_cast<std::size_t>(c)] != 0.0) name << w[static_cast<std::size_t>(c)] << " e" << c + 1;
      }
      row(name.str(), Source::kPublished, [a, b](const Geometry& g) { return frame_nabla(g, a, b); }, w);
    }

  struct Curv {
    int a, b, c;
    Vec want;
    const char* name;
  };
  const std::vector<Curv> curv = {
      {0, 1, 0, {0, 4, 0}, "R(e1,e2)e1 = 4 e2"},  {0, 1, 1, {-4, 0, 0}, "R(e1,e2)e2 = -4 e1"},
      {0, 1, 2, {0, 0, 0}, "R(e1,e2)e3 = 0"},     {0, 2, 0, {0, 0, 0}, "R(e1,e3)e1 = 0"},
      {0, 2, 1, {0, 0, 0}, "R(e1,e3)e2 = 0"},     {0, 2, 2, {0, 0, 0}, "R(e1,e3)e3 = 0"},
      {1, 2, 0, {0, 0, 0}, "R(e2,e3)e1 = 0"},     {1, 2, 1, {0, 0, 0}, "R(e2,e3)e2 = 0"},
      {1, 2, 2, {0, 0, 0}, "R(e2,e3)e3 = 0"},
  };
  for (const Curv& c : curv) {
    const int a = c.a, b = c.b, cc = c.c;
    row(c.name, Source::kPublished, [a, b, cc](const Geometry& g) { return frame_curvature(g, a, b, cc); }, c.want);
  }
  e.table.push_back({"R4(e1,e2,e1,e2) = -4", Source::kDerived, [](const Geometry& g) {
                       const Vec e1 = values(frame_column(g, 0)), e2 = values(frame_column(g, 1));
                       return std::abs(riemann_04(g, e1, e2, e1, e2) + 4.0);
                     }});

  const std::vector<Vec> hp = {{0, 0, 0}, {0, 1, 0}, {0, 0, -1}};
  const char* hp_names[] = {"h'(e1) = 0", "h'(e2) = e2", "h'(e3) = -e3"};
  for (int a = 0; a < 3; ++a) {
    row(hp_names[a], Source::kPublished,
        [a](const Geometry& g) {
          const TensorValue h = value_of(structure_at(g).h_prime);
          return to_frame(g, solitonlab::apply(h, values(frame_column(g, a))));
        },
        hp[static_cast<std::size_t>(a)]);
  }

  const double lie[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, -8}};
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      std::ostringstream name;
      name << "(L_V g)(e" << a + 1 << ",e" << b + 1 << ") = " << lie[a][b];
      const double want = lie[a][b];
      e.table.push_back({name.str(), Source::kPublished, [a, b, want](const Geometry& g) {
                           const TensorValue L = value_of(g.lie_derivative_metric(g.vector_field("V")));
                           const Vec ea = values(frame_column(g, a)), eb = values(frame_column(g, b));
                           double s = 0.0;
                           for (int i = 0; i < 3; ++i)
                             for (int j = 0; j < 3; ++j)
                               s += L(i, j) * ea[static_cast<std::size_t>(i)] * eb[static_cast<std::size_t>(j)];
                           return std::abs(s - want);
                         }});
    }
  e.table.push_back({"div V = -4", Source::kPublished,
                     [](const Geometry& g) { return std::abs(g.divergence(g.vector_field("V")).value() + 4.0); }});
  e.table.push_back({"r = -8", Source::kPublished,
                     [](const Geometry& g) { return std::abs(g.scalar_curvature().value() + 8.0); }});
  e.table.push_back({"tr l = -4", Source::kDerived,
                     [](const Geometry& g) {
                       const TensorValue l = structure_at(g).ell;
                       return std::abs(l(0, 0) + l(1, 1) + l(2, 2) + 4.0);
                     }});
  e.table.push_back({"Q e3 = 0", Source::kDerived, [](const Geometry& g) {
                       const Vec q = solitonlab::apply(value_of(g.ricci_operator()), values(frame_column(g, 2)));
                       return max_diff(q, {0, 0, 0});
                     }});

  e.globals = {{"lambda", 4.0, Source::kPublished},
               {"kappa", -2.0, Source::kPublished},
               {"mu", -2.0, Source::kPublished},
               {"div_V", -4.0, Source::kPublished},
               {"scalar_curvature", -8.0, Source::kPublished},
               {"theorem_lambda", 4.0, Source::kPublished},
               {"gradient_lambda", 4.0, Source::kDerived}};
  return e;
}

ZooEntry zoo_hyperbolic(int n) {
  if (n < 1 || 2 * n + 1 > 7) throw Error("hyperbolic-n needs 1 <= n <= 3 (dimension at most 7)");
  ZooEntry e;
  e.name = "hyperbolic-" + std::to_string(n);
  e.description = "hyperbolic space H^" + std::to_string(2 * n + 1) + " as dt^2 + e^{2t}(flat), Kenmotsu, trivial soliton";
  ManifoldSpec& s = e.spec;
  s.name = e.name;
  s.coordinates = split_coords(n);
  const int d = 2 * n + 1;
  std::vector<std::string> diag{"1"};
  for (int i = 1; i < d; ++i) diag.push_back("exp(2*t)");
  s.metric = diagonal(s, diag);
  std::vector<std::vector<std::string>> phi(static_cast<std::size_t>(d), std::vector<std::string>(static_cast<std::size_t>(d), "0"));
  for (int i = 0; i < n; ++i) {
    const auto x = static_cast<std::size_t>(1 + 2 * i), y = x + 1;
    phi[y][x] = "1";   // φ ∂x = ∂y
    phi[x][y] = "-1";  // φ ∂y = -∂x
  }
  std::vector<std::string> xi(static_cast<std::size_t>(d), "0");
  xi[0] = "1";
  s.structure = StructureSpec{Basis::kCoordinate, parse_rows(s, phi), parse_all(s, xi), parse_all(s, xi)};
  s.vector_fields["V"] = VectorFieldSpec{parse_all(s, std::vector<std::string>(static_cast<std::size_t>(d), "0")),
                                         Basis::kCoordinate};
  std::vector<std::string> rot(static_cast<std::size_t>(d), "0");
  rot[1] = "y1";
  rot[2] = "-x1";
  s.vector_fields["K"] = VectorFieldSpec{parse_all(s, rot), Basis::kCoordinate};
  s.scalar_fields["u"] = s.parse("0");
  s.declared_lambda = 1.0;
  s.domain.assign(static_cast<std::size_t>(d), Interval{-2, 2});
  s.domain[0] = {-1, 1};

  e.table.push_back({"sectional curvature = -1 on every coordinate plane", Source::kDerived, [](const Geometry& g) {
                       double r = 0.0;
                       for (int i = 0; i < g.dim(); ++i)
                         for (int j = i + 1; j < g.dim(); ++j)
                           r = std::max(r, std::abs(sectional_curvature(g, unit(g.dim(), i), unit(g.dim(), j)) + 1.0));
                       return r;
                     }});
  e.table.push_back({"R4 = -1/2 g^g", Source::kDerived, [](const Geometry& g) {
                       const TensorValue m = g.metric_value();
                       return max_abs(value_of(g.riemann_04()) + 0.5 * kulkarni_nomizu(m, m));
                     }});
  e.table.push_back({"S = -2n g", Source::kDerived, [n](const Geometry& g) {
                       return max_abs(value_of(g.ricci()) + (2.0 * n) * g.metric_value());
                     }});
  e.table.push_back({"K is Killing", Source::kTrivial, [](const Geometry& g) {
                       return max_abs(value_of(g.lie_derivative_metric(g.vector_field("K"))));
                     }});
  const double dn = n;
  e.globals = {{"lambda", 1.0, Source::kDerived},
               {"gradient_lambda", 1.0, Source::kTrivial},
               {"div_V", 0.0, Source::kTrivial},
               {"scalar_curvature", -2.0 * dn * (2.0 * dn + 1.0), Source::kDerived},
               {"sectional_curvature", -1.0, Source::kDerived},
               {"kappa", -1.0, Source::kDerived},
               {"eta_einstein_a", -2.0 * dn, Source::kTrivial},
               {"eta_einstein_b", 0.0, Source::kTrivial}};
  return e;
}

ZooEntry zoo_product_h2xr() {
  ZooEntry e;
  e.name = "product-h2xr";
  e.description = "Riemannian product H^2(-4) x R as dt^2 + e^{4t}dx^2 + dy^2, (-2,-2)' structure, lambda = 4";
  ManifoldSpec& s = e.spec;
  s.name = e.name;
  s.coordinates = {"t", "x", "y"};
  s.metric = diagonal(s, {"1", "exp(4*t)", "1"});
  s.structure = StructureSpec{Basis::kCoordinate,
                              parse_rows(s, {{"0", "0", "0"}, {"0", "0", "-exp(-2*t)"}, {"0", "exp(2*t)", "0"}}),
                              parse_all(s, {"1", "0", "0"}), parse_all(s, {"1", "0", "0"})};
  s.vector_fields["V"] = VectorFieldSpec{parse_all(s, {"0", "0", "-4*y"}), Basis::kCoordinate};
  s.scalar_fields["u"] = s.parse("-2*y^2");
  s.declared_lambda = 4.0;
  s.domain = {{-1, 1}, {-2, 2}, {-2, 2}};

  e.table.push_back({"K(dt,dx) = -4", Source::kDerived, [](const Geometry& g) {
                       return std::abs(sectional_curvature(g, unit(3, 0), unit(3, 1)) + 4.0);
                     }});
  e.table.push_back({"K(dt,dx) = -f''/f with f = e^{2t}", Source::kDerived, [](const Geometry& g) {
                       const Jet3 f = exp(2.0 * g.coordinates()[0]);
                       const double closed = -f.d(0, 0) / f.value();
                       return std::abs(sectional_curvature(g, unit(3, 0), unit(3, 1)) - closed);
                     }});
  e.table.push_back({"K(dt,dy) = 0", Source::kTrivial,
                     [](const Geometry& g) { return std::abs(sectional_curvature(g, unit(3, 0), unit(3, 2))); }});
  e.table.push_back({"K(dx,dy) = 0", Source::kTrivial,
                     [](const Geometry& g) { return std::abs(sectional_curvature(g, unit(3, 1), unit(3, 2))); }});
  e.table.push_back({"r = -8", Source::kDerived,
                     [](const Geometry& g) { return std::abs(g.scalar_curvature().value() + 8.0); }});
  e.globals = {{"lambda", 4.0, Source::kDerived},
               {"gradient_lambda", 4.0, Source::kDerived},
               {"kappa", -2.0, Source::kDerived},
               {"mu", -2.0, Source::kDerived},
               {"div_V", -4.0, Source::kDerived},
               {"scalar_curvature", -8.0, Source::kDerived},
               {"theorem_lambda", 4.0, Source::kDerived}};
  return e;
}

std::vector<std::string> zoo_names() {
  return {"example-3-6", "example-4-5", "hyperbolic-1", "hyperbolic-2", "product-h2xr"};
}

ZooEntry zoo_entry(const std::string& name) {
  if (name == "example-3-6") return zoo_example_3_6();
  if (name.rfind("example-3-6:a=", 0) == 0) {
    const std::string v = name.substr(14);
    char* end = nullptr;
    const double a = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0') throw Error("bad parameter in '" + name + "'");
    ZooEntry e = zoo_example_3_6(a);
    return e;
  }
  if (name == "example-4-5") return zoo_example_4_5();
  if (name == "product-h2xr") return zoo_product_h2xr();
  if (name.rfind("hyperbolic-", 0) == 0) {
    const std::string v = name.substr(11);
    if (v.size() == 1 && v[0] >= '1' && v[0] <= '3') return zoo_hyperbolic(v[0] - '0');
  }
  throw Error("unknown zoo entry '" + name + "'");
}

void check_table(const ZooEntry& entry, const std::vector<Point>& points, Report& report) {
  const double tol = entry.spec.tolerances.table;
  std::vector<double> worst(entry.table.size(), 0.0);
  for (const Point& p : points) {
    Geometry geo(entry.spec, p);
    for (std::size_t r = 0; r < entry.table.size(); ++r) {
      const double v = entry.table[r].residual(geo);
      if (std::isnan(v) || v > worst[r]) worst[r] = v;
    }
  }
  for (std::size_t r = 0; r < entry.table.size(); ++r)
    report.check("expected values", entry.table[r].name, worst[r], tol, to_string(entry.table[r].source));
}

}  // namespace solitonlab
