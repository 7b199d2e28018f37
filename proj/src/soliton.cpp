#include "solitonlab/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "solitonlab/error.hpp"

namespace solitonlab {

TensorField SolitonProblem::potential_field(const Geometry& geo) const {
  switch (mode) {
    case PotentialMode::kVector: return geo.vector_field(vector);
    case PotentialMode::kGradient: return geo.gradient(geo.scalar_field(function));
    case PotentialMode::kTrivial: break;
  }
  return TensorField(geo.dim(), slots(1, 0), Jet3::constant(geo.dim(), 0.0));
}

namespace {

TensorValue gg(const Geometry& geo) {
  const TensorValue g = geo.metric_value();
  return kulkarni_nomizu(g, g);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_of(const std::vector<double>& a, const std::vector<double>& b, double lambda) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] + lambda * b[i]) * (a[i] + lambda * b[i]);
  return std::sqrt(s);
}

// Frame components of the λ-independent part A and the λ coefficient B.
struct Affine {
  std::vector<double> a, b;
};

Affine affine_parts(const SolitonProblem& p, const Geometry& geo, const Frame& fr) {
  Affine out;
  if (p.mode == PotentialMode::kGradient) {
    const TensorValue r0 = gradient_soliton_residual(geo, geo.scalar_field(p.function), 0.0, p.convention);
    out.a = fr.to_frame(r0).data();
    out.b = fr.to_frame(0.5 * gg(geo)).data();
  } else {
    const TensorValue r0 = riemann_soliton_residual(geo, p.potential_field(geo), 0.0, p.convention);
    out.a = fr.to_frame(r0).data();
    out.b = fr.to_frame(gg(geo)).data();
  }
  return out;
}

double potential_norm(const Geometry& geo, const TensorField& v) {
  Vec x(static_cast<std::size_t>(geo.dim()));
  for (int i = 0; i < geo.dim(); ++i) x[static_cast<std::size_t>(i)] = v(i).value();
  return std::sqrt(std::max(0.0, inner(geo.metric_value(), x, x)));
}

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

TensorValue riemann_soliton_residual(const Geometry& geo, const TensorField& v, double lambda, CurvatureConvention c) {
  const TensorValue g = geo.metric_value();
  const TensorValue L = value_of(geo.lie_derivative_metric(v));
  return 2.0 * value_of(geo.riemann_04(c)) + lambda * kulkarni_nomizu(g, g) + kulkarni_nomizu(g, L);
}

TensorValue gradient_soliton_residual(const Geometry& geo, const Jet3& u, double lambda, CurvatureConvention c) {
  const TensorValue g = geo.metric_value();
  const TensorValue H = value_of(geo.hessian(u));
  return value_of(geo.riemann_04(c)) + (0.5 * lambda) * kulkarni_nomizu(g, g) + kulkarni_nomizu(g, H);
}

TensorValue contracted_residual(const Geometry& geo, const TensorField& v, double lambda) {
  const int d = geo.dim();
  if (d % 2 == 0 || d < 3) throw Error("the contracted soliton equation needs odd dimension 2n+1 with n >= 1");
  const double n = (d - 1) / 2;
  const double c = 2.0 / (2.0 * n - 1.0);
  const TensorValue g = geo.metric_value();
  const double div = geo.divergence(v).value();
  return value_of(geo.lie_derivative_metric(v)) + c * value_of(geo.ricci()) + (c * (2.0 * n * lambda + div)) * g;
}

LambdaFit fit_lambda(const SolitonProblem& problem, const std::vector<Point>& points) {
  LambdaFit fit;
  std::vector<Affine> parts;
  double sab = 0.0, sbb = 0.0;
  for (const Point& p : points) {
    Geometry geo(*problem.spec, p);
    parts.push_back(affine_parts(problem, geo, geo.orthonormal_frame()));
    sab += dot(parts.back().a, parts.back().b);
    sbb += dot(parts.back().b, parts.back().b);
  }
  if (parts.empty() || sbb == 0.0) return fit;
  const double lambda = -sab / sbb;
  fit.lambda = lambda;
  double sq = 0.0;
  fit.pointwise_min = std::numeric_limits<double>::infinity();
  fit.pointwise_max = -fit.pointwise_min;
  for (const Affine& af : parts) {
    const double r = norm_of(af.a, af.b, lambda);
    fit.residual_max = std::max(fit.residual_max, r);
    sq += r * r;
    const double lp = -dot(af.a, af.b) / dot(af.b, af.b);
    fit.pointwise.push_back(lp);
    fit.pointwise_min = std::min(fit.pointwise_min, lp);
    fit.pointwise_max = std::max(fit.pointwise_max, lp);
    fit.pointwise_residual = std::max(fit.pointwise_residual, norm_of(af.a, af.b, lp));
  }
  fit.residual_rms = std::sqrt(sq / static_cast<double>(parts.size()));
  return fit;
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::kShrinking: return "shrinking";
    case Classification::kSteady: return "steady";
    case Classification::kExpanding: return "expanding";
    case Classification::kTrivial: return "trivial";
  }
  return "?";
}

Classification classify(double lambda, double sup_potential, double tol) {
  if (sup_potential <= tol) return Classification::kTrivial;
  if (std::abs(lambda) <= tol) return Classification::kSteady;
  return lambda < 0 ? Classification::kShrinking : Classification::kExpanding;
}

SolitonSummary check_soliton(const SolitonProblem& problem, const std::vector<Point>& points, Report& report,
                             const StructureSummary* structure) {
  const ManifoldSpec& spec = *problem.spec;
  const Tolerances& tol = spec.tolerances;
  const int d = spec.dim();
  const bool gradient = problem.mode == PotentialMode::kGradient;
  SolitonSummary sum;
  sum.fit = fit_lambda(problem, points);
  if (problem.lambda) {
    sum.lambda = *problem.lambda;
  } else if (sum.fit.lambda) {
    sum.lambda = *sum.fit.lambda;
    sum.fitted = true;
  } else {
    report.check("soliton", "lambda identifiable", 1.0, 0.0, "lambda undetermined");
    return sum;
  }

  const bool odd = d % 2 == 1 && d >= 3;
  const double n = odd ? (d - 1) / 2 : 0.0;
  double sq = 0.0;
  double bridge = 0.0, bridge_literal = 0.0, consistency = 0.0, spot312 = 0.0;
  double curvature_spread = 0.0;
  const bool kenmotsu = structure && structure->kenmotsu;
  for (const Point& p : points) {
    Geometry geo(spec, p);
    const Frame fr = geo.orthonormal_frame();
    const Affine af = affine_parts(problem, geo, fr);
    const double r = norm_of(af.a, af.b, sum.lambda);
    sum.residual_max = std::max(sum.residual_max, r);
    sq += r * r;
    for (std::size_t k = 0; k < af.a.size(); ++k)
      sum.residual_component = std::max(sum.residual_component, std::abs(af.a[k] + sum.lambda * af.b[k]));
    const TensorField V = problem.potential_field(geo);
    sum.div_values.push_back(geo.divergence(V).value());
    sum.sup_potential = std::max(sum.sup_potential, potential_norm(geo, V));
    const TensorValue gi = value_of(geo.inverse_metric());
    if (odd && !gradient) {
      const TensorValue T = riemann_soliton_residual(geo, V, sum.lambda, problem.convention);
      const TensorValue tr = trace_14(T, gi);
      const TensorValue e = contracted_residual(geo, V, sum.lambda);
      bridge = std::max(bridge, max_abs(fr.to_frame(tr + (2.0 * n - 1.0) * e)));
      bridge_literal = std::max(bridge_literal, max_abs(fr.to_frame(tr - (2.0 * n - 1.0) * e)));
    }
    if (gradient) {
      const TensorValue tv = riemann_soliton_residual(geo, V, sum.lambda, problem.convention);
      const TensorValue tu = gradient_soliton_residual(geo, geo.scalar_field(problem.function), sum.lambda,
                                                       problem.convention);
      consistency = std::max(consistency, max_abs(fr.to_frame(tv - 2.0 * tu)));
    }
    if (kenmotsu && odd && !gradient) {
      // (£_V∇)(X,ξ) = 2/(2n-1) QX + 4n/(2n-1) X
      const StructureFields f = geo.structure();
      const TensorValue C = value_of(geo.lie_derivative_connection(V));
      const TensorValue Q = value_of(geo.ricci_operator());
      TensorValue res(d, slots(1, 1), 0.0);
      for (int k = 0; k < d; ++k)
        for (int x = 0; x < d; ++x) {
          double s = 0.0;
          for (int j = 0; j < d; ++j) s += C(k, x, j) * f.xi(j).value();
          res(k, x) = s - (2.0 / (2.0 * n - 1.0)) * Q(k, x) - (k == x ? 4.0 * n / (2.0 * n - 1.0) : 0.0);
        }
      spot312 = std::max(spot312, max_abs(fr.to_frame(res)));
    }
    // spread of the pointwise sectional curvature, used for trivial solitons
    const TensorValue R4 = fr.to_frame(value_of(geo.riemann_04(problem.convention)));
    double kmin = std::numeric_limits<double>::infinity(), kmax = -kmin;
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) {
        kmin = std::min(kmin, R4(a, b, a, b));
        kmax = std::max(kmax, R4(a, b, a, b));
      }
    if (d >= 2) curvature_spread = std::max(curvature_spread, kmax - kmin);
  }
  sum.residual_rms = points.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(points.size()));
  sum.holds = sum.residual_max < tol.soliton;
  sum.div_mean = mean(sum.div_values);
  sum.div_std = stddev(sum.div_values);
  if (!sum.div_values.empty()) {
    const auto [lo, hi] = std::minmax_element(sum.div_values.begin(), sum.div_values.end());
    sum.div_spread = *hi - *lo;
  }
  sum.div_constant = sum.div_std < tol.constancy * (1.0 + std::abs(sum.div_mean));
  sum.classification = classify(sum.lambda, sum.sup_potential, tol.identity);

  const std::string eq = gradient ? "R + 1/2 lambda g^g + g^Hess u = 0" : "2R + lambda g^g + g^L_V g = 0";
  char note[160];
  std::snprintf(note, sizeof note,
                "max Frobenius norm in an orthonormal frame, lambda %s; max frame component %.6g",
                sum.fitted ? "fitted" : "given", sum.residual_component);
  report.check("soliton", eq, sum.residual_max, tol.soliton, note);
  if (odd && !gradient) {
    report.check("soliton", "trace_14(T) = -(2n-1) (L_V g + 2/(2n-1) S + 2/(2n-1)(2n lambda + div V) g)", bridge,
                 tol.table, "contraction of slots 1 and 4");
  }
  if (gradient) {
    report.check("soliton", "V = Du: 2R + lambda g^g + g^L_V g = 2(R + 1/2 lambda g^g + g^Hess u)", consistency,
                 tol.table);
  }
  if (sum.classification == Classification::kTrivial) {
    report.check("soliton", "trivial soliton has constant sectional curvature", curvature_spread, tol.identity);
  }

  nlohmann::ordered_json j;
  j["potential"] = problem.label;
  j["mode"] = gradient ? "gradient" : problem.mode == PotentialMode::kVector ? "vector" : "trivial";
  j["lambda"] = sum.lambda;
  j["lambda_source"] = sum.fitted ? "fit" : "given";
  nlohmann::ordered_json fj;
  if (sum.fit.lambda) {
    fj["lambda"] = *sum.fit.lambda;
  } else {
    fj["lambda"] = "undetermined";
  }
  fj["residual_max"] = sum.fit.residual_max;
  fj["residual_rms"] = sum.fit.residual_rms;
  fj["pointwise_lambda_min"] = sum.fit.pointwise_min;
  fj["pointwise_lambda_max"] = sum.fit.pointwise_max;
  fj["pointwise_residual_max"] = sum.fit.pointwise_residual;
  j["fit"] = fj;
  j["residual_max"] = sum.residual_max;
  j["residual_rms"] = sum.residual_rms;
  j["residual_max_component"] = sum.residual_component;
  j[gradient ? "laplacian_u" : "div_V"] = sum.div_mean;
  j[gradient ? "laplacian_u_spread" : "div_V_spread"] = sum.div_spread;
  j["divergence_constant"] = sum.div_constant;
  j["sup_potential"] = sum.sup_potential;
  j["classification"] = sum.holds ? to_string(sum.classification) : "none (equation fails)";
  if (odd && !gradient) j["bridge_literal_sign_residual"] = bridge_literal;

  // relations that follow from the structure classification
  const std::string group = "divergence relations";
  if (!structure) {
    report.skip(group, "structure-dependent relations", "no almost contact structure declared");
  } else if (!sum.holds) {
    report.skip(group, "structure-dependent relations", "soliton equation does not hold");
  } else {
    const double dn = structure->n;
    if (structure->kenmotsu && !gradient) {
      if (sum.div_constant) {
        double worst = 0.0;
        for (double v : sum.div_values) worst = std::max(worst, std::abs(v - 2.0 * dn * (1.0 - sum.lambda)));
        report.check(group, "div V = 2n(1 - lambda)", worst, tol.table);
      } else {
        report.skip(group, "div V = 2n(1 - lambda)", "div V is not constant");
      }
      report.check(group, "(L_V nabla)(X,xi) = 2/(2n-1) QX + 4n/(2n-1) X", spot312, tol.identity);
    }
    const bool km = !structure->kenmotsu && structure->nullity_holds && structure->nullity &&
                    structure->nullity->mu.has_value() && structure->nullity->kappa < -1.0;
    if (km && !gradient) {
      const double kappa = structure->nullity->kappa;
      if (sum.div_constant) {
        double worst = 0.0;
        for (double v : sum.div_values) worst = std::max(worst, std::abs(2.0 * dn * sum.lambda + v + 2.0 * dn * kappa));
        report.check(group, "2n lambda + div V + 2n kappa = 0", worst, tol.table);
      } else {
        report.skip(group, "2n lambda + div V + 2n kappa = 0", "div V is not constant");
      }
    }
    if (km && gradient) {
      const double kappa = structure->nullity->kappa;
      double worst = 0.0;
      for (double v : sum.div_values) worst = std::max(worst, std::abs(2.0 * dn * sum.lambda + v - 4.0 * dn));
      if (std::abs(kappa + 2.0) < tol.identity) {
        report.check(group, "2n lambda + Delta u = 4n", worst, tol.identity);
        report.check(group, "lambda = (6n-2)/(2n-1)", std::abs(sum.lambda - (6.0 * dn - 2.0) / (2.0 * dn - 1.0)),
                     tol.identity);
      } else {
        report.skip(group, "2n lambda + Delta u = 4n", "kappa != -2");
      }
    }
  }
  report.values["soliton"] = j;
  return sum;
}

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids{"3.2", "3.3", "3.5", "4.2", "4.3"};
  return ids;
}

namespace {

struct AuditData {
  StructureSummary structure;
  SolitonSummary soliton;
  bool has_structure = false;
};

void hypothesis(Report& r, const std::string& group, const std::string& name, bool ok, const std::string& note) {
  r.check(group, name, ok ? 0.0 : 1.0, 0.0, note);
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

bool theorem_audit(const SolitonProblem& problem, const std::vector<Point>& points, const std::string& theorem,
                   Report& report) {
  if (std::find(theorem_ids().begin(), theorem_ids().end(), theorem) == theorem_ids().end()) {
    throw Error("unknown theorem id '" + theorem + "' (expected one of 3.2, 3.3, 3.5, 4.2, 4.3)");
  }
  const ManifoldSpec& spec = *problem.spec;
  const Tolerances& tol = spec.tolerances;
  const int d = spec.dim();
  const std::string hg = "hypotheses (theorem " + theorem + ")";
  const std::string cg = "conclusions (theorem " + theorem + ")";

  Report scratch;
  StructureSummary ss;
  const bool has_structure = spec.structure.has_value();
  if (has_structure) ss = check_structure(spec, points, scratch);
  Report sol_scratch;
  const SolitonSummary sol = check_soliton(problem, points, sol_scratch, has_structure ? &ss : nullptr);
  const bool odd = d % 2 == 1 && d >= 3;
  const double n = odd ? (d - 1) / 2 : 0.0;

  const bool gradient_theorem = theorem == "3.5" || theorem == "4.3";
  const bool kmu = has_structure && ss.almost_kenmotsu && !ss.kenmotsu && ss.nullity_holds && ss.nullity &&
                   ss.nullity->mu.has_value();
  bool met = true;
  const auto require = [&](const std::string& name, bool ok, const std::string& note) {
    hypothesis(report, hg, name, ok, note);
    met = met && ok;
  };

  require("almost contact structure declared", has_structure, has_structure ? "" : "no structure");
  if (theorem == "3.2" || theorem == "3.3" || theorem == "3.5") {
    require("Kenmotsu", has_structure && ss.kenmotsu,
            has_structure ? "(nabla_X phi)Y residual " + num(ss.kenmotsu_residual) : "");
  }
  if (theorem == "3.2") {
    require("dimension > 3", d > 3, "dimension " + std::to_string(d));
    require("eta-Einstein", has_structure && ss.eta_einstein_holds,
            has_structure && ss.eta_einstein ? "fit residual " + num(ss.eta_einstein->residual) : "");
  }
  if (theorem == "3.3") require("dimension = 3", d == 3, "dimension " + std::to_string(d));
  if (theorem == "4.2" || theorem == "4.3") {
    require("non-Kenmotsu (kappa,mu)' almost Kenmotsu", kmu,
            has_structure && ss.nullity ? "nullity residual " + num(ss.nullity->residual) : "");
  }
  if (gradient_theorem) {
    const bool grad = problem.mode == PotentialMode::kGradient;
    require("gradient potential u", grad, grad ? problem.label : "needs a potential function");
    require("gradient almost Riemann soliton (lambda may vary)", grad && sol.fit.pointwise_residual < tol.soliton,
            "pointwise residual " + num(sol.fit.pointwise_residual));
  } else {
    require("Riemann soliton", sol.holds, "residual " + num(sol.residual_max) + " at lambda " + num(sol.lambda));
    require("div V constant", sol.div_constant, "std " + num(sol.div_std) + ", mean " + num(sol.div_mean));
  }

  nlohmann::ordered_json aj;
  aj["theorem"] = theorem;
  aj["hypotheses_met"] = met;
  if (!met) {
    report.skip(cg, "conclusions", "hypotheses unmet");
    report.values["audit"] = aj;
    return false;
  }

  // conclusions, evaluated pointwise
  double einstein = 0.0, curv = 0.0, collinear = 0.0, lie_eta = 0.0, tangential = 0.0, trace_rel = 0.0;
  std::size_t idx = 0;
  for (const Point& p : points) {
    Geometry geo(spec, p);
    const Frame fr = geo.orthonormal_frame();
    const TensorValue g = geo.metric_value();
    const double r = geo.scalar_curvature().value();
    einstein = std::max(einstein, max_abs(fr.to_frame(value_of(geo.ricci()) - (r / d) * g)));
    curv = std::max(curv, max_abs(fr.to_frame(value_of(geo.riemann_04(problem.convention)) + 0.5 * kulkarni_nomizu(g, g))));
    const StructureFields f = geo.structure();
    const TensorField V = problem.potential_field(geo);
    Vec v(static_cast<std::size_t>(d)), xi(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      v[static_cast<std::size_t>(i)] = V(i).value();
      xi[static_cast<std::size_t>(i)] = f.xi(i).value();
    }
    const double vx = inner(g, v, xi);
    Vec perp = v;
    for (int i = 0; i < d; ++i) perp[static_cast<std::size_t>(i)] -= vx * xi[static_cast<std::size_t>(i)];
    collinear = std::max(collinear, std::sqrt(std::max(0.0, inner(g, perp, perp))));
    lie_eta = std::max(lie_eta, max_abs(fr.to_frame(value_of(geo.lie_derivative(f.eta, V)))));
    if (theorem == "4.3") {
      const StructurePoint sp = structure_at(geo);
      Vec hv = solitonlab::apply(value_of(sp.h_prime), v);
      for (int i = 0; i < d; ++i) hv[static_cast<std::size_t>(i)] += v[static_cast<std::size_t>(i)];
      tangential = std::max(tangential, std::sqrt(std::max(0.0, inner(g, hv, hv))));
      const double lp = sol.fit.pointwise[idx];
      trace_rel = std::max(trace_rel, std::abs(2.0 * n * lp + sol.div_values[idx] - 4.0 * n));
    }
    ++idx;
  }

  if (theorem == "3.2") {
    report.check(cg, "Einstein: S = r/(2n+1) g", einstein, tol.identity);
  } else if (theorem == "3.3") {
    report.check(cg, "constant sectional curvature -1", curv, tol.identity);
  } else if (theorem == "3.5") {
    const bool e = einstein < tol.identity, c = collinear < tol.identity;
    report.check(cg, "Einstein, or Du pointwise collinear with xi", std::min(einstein, collinear), tol.identity,
                 std::string("Einstein ") + (e ? "yes" : "no") + ", collinear " + (c ? "yes" : "no"));
    aj["einstein_residual"] = einstein;
    aj["collinear_residual"] = collinear;
  } else if (theorem == "4.2") {
    const double kappa = ss.nullity->kappa;
    const bool product = std::abs(kappa + 2.0) < tol.identity;
    const bool strict = lie_eta < tol.identity;
    report.check(cg, "kappa = -2 (locally H^{n+1}(-4) x R^n) or V strict infinitesimal contact transformation",
                 std::min(std::abs(kappa + 2.0), lie_eta), tol.identity,
                 std::string("branch: ") + (product ? "kappa = -2" : strict ? "strict contact" : "none"));
    aj["kappa"] = kappa;
    aj["branch_product"] = product;
    aj["branch_strict_contact"] = strict;
    aj["lie_eta_max"] = lie_eta;
  } else if (theorem == "4.3") {
    const double want = (6.0 * n - 2.0) / (2.0 * n - 1.0);
    const double lam_dev = std::max(std::abs(sol.fit.pointwise_min - want), std::abs(sol.fit.pointwise_max - want));
    report.check(cg, "expanding with lambda = (6n-2)/(2n-1)", lam_dev, tol.identity, "expected " + num(want));
    report.check(cg, "kappa = -2 (locally H^{n+1}(-4) x R^n)", std::abs(ss.nullity->kappa + 2.0), tol.identity);
    report.check(cg, "2n lambda + Delta u = 4n", trace_rel, tol.identity);
    report.check(cg, "h'Du = -Du (Du tangent to the Euclidean factor)", tangential, tol.identity);
  }
  report.values["audit"] = aj;
  return true;
}

}  // namespace solitonlab
