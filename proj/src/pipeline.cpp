#include "solitonlab/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <limits>

#include "solitonlab/contact.hpp"
#include "solitonlab/error.hpp"

namespace solitonlab {

namespace {

Report header(const ManifoldSpec& spec, const RunOptions& opts, const std::string& command) {
  Report r;
  r.manifold = spec.name;
  r.command = command;
  r.seed = opts.seed;
  r.samples = opts.samples;
  return r;
}

std::vector<Point> points_for(const ManifoldSpec& spec, const RunOptions& opts) {
  if (opts.samples < 1) throw Error("--samples must be at least 1");
  return sample_points(spec, opts.samples, opts.seed);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\"'");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\"'");
  return s.substr(b, e - b + 1);
}

// Moves every check of `from` into `to`, renaming its group.
void merge_as(Report& to, const Report& from, const std::string& suffix) {
  for (Check c : from.checks) {
    c.group += suffix;
    to.checks.push_back(std::move(c));
  }
}

// Runs the soliton check for one problem and returns the sub-report.
struct SolitonRun {
  Report report;
  SolitonSummary summary;
};

SolitonRun soliton_run(const SolitonProblem& p, const std::vector<Point>& pts, const StructureSummary* ss) {
  SolitonRun r;
  r.summary = check_soliton(p, pts, r.report, ss);
  return r;
}

// Sample-wide extremes of scalar and sectional curvature.
struct CurvatureRange {
  double r_min = std::numeric_limits<double>::infinity(), r_max = -std::numeric_limits<double>::infinity();
  double k_min = std::numeric_limits<double>::infinity(), k_max = -std::numeric_limits<double>::infinity();
};

CurvatureRange curvature_range(const ManifoldSpec& spec, const std::vector<Point>& pts) {
  CurvatureRange c;
  const int d = spec.dim();
  for (const Point& p : pts) {
    Geometry geo(spec, p);
    const double r = geo.scalar_curvature().value();
    c.r_min = std::min(c.r_min, r);
    c.r_max = std::max(c.r_max, r);
    const TensorValue R4 = geo.orthonormal_frame().to_frame(value_of(geo.riemann_04()));
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) {
        c.k_min = std::min(c.k_min, R4(a, b, a, b));
        c.k_max = std::max(c.k_max, R4(a, b, a, b));
      }
  }
  return c;
}

double deviation(double lo, double hi, double want) { return std::max(std::abs(lo - want), std::abs(hi - want)); }

}  // namespace

VectorFieldSpec parse_inline_vector(const ManifoldSpec& spec, const std::string& text) {
  std::string body = trim(text);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw ParseError("unbalanced '[' in potential", 0);
    body = body.substr(1, body.size() - 2);
  }
  VectorFieldSpec v;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = body.find(',', start);
    const std::string item = trim(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (item.empty()) throw ParseError("empty component in potential '" + text + "'", start);
    v.components.push_back(spec.parse(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (static_cast<int>(v.components.size()) != spec.dim()) {
    throw ParseError("potential needs " + std::to_string(spec.dim()) + " components, got " +
                         std::to_string(v.components.size()),
                     0);
  }
  return v;
}

SolitonProblem make_problem(const ManifoldSpec& spec, const RunOptions& opts) {
  if (!opts.potential.empty() && !opts.potential_fn.empty()) {
    throw Error("give at most one of --potential and --potential-fn");
  }
  SolitonProblem p;
  p.spec = &spec;
  if (!opts.potential.empty()) {
    p.mode = PotentialMode::kVector;
    if (auto it = spec.vector_fields.find(opts.potential); it != spec.vector_fields.end()) {
      p.vector = it->second;
    } else {
      p.vector = parse_inline_vector(spec, opts.potential);
    }
    p.label = opts.potential;
  } else if (!opts.potential_fn.empty()) {
    p.mode = PotentialMode::kGradient;
    if (auto it = spec.scalar_fields.find(opts.potential_fn); it != spec.scalar_fields.end()) {
      p.function = it->second;
    } else {
      p.function = spec.parse(opts.potential_fn);
    }
    p.label = opts.potential_fn;
  } else if (auto v = spec.vector_fields.find("V"); v != spec.vector_fields.end()) {
    p.mode = PotentialMode::kVector;
    p.vector = v->second;
    p.label = "V";
  } else if (auto u = spec.scalar_fields.find("u"); u != spec.scalar_fields.end()) {
    p.mode = PotentialMode::kGradient;
    p.function = u->second;
    p.label = "u";
  } else {
    p.mode = PotentialMode::kTrivial;
    p.label = "0";
  }
  if (opts.lambda) {
    p.lambda = opts.lambda;
  } else if (!opts.fit) {
    p.lambda = spec.declared_lambda;
  }
  return p;
}

Report run_structure(const ManifoldSpec& spec, const RunOptions& opts) {
  Report r = header(spec, opts, "check structure");
  const auto pts = points_for(spec, opts);
  if (!spec.structure) throw ManifoldError("manifold '" + spec.name + "' declares no [structure]");
  check_structure(spec, pts, r);
  return r;
}

Report run_soliton(const ManifoldSpec& spec, const RunOptions& opts) {
  Report r = header(spec, opts, "check soliton");
  const SolitonProblem p = make_problem(spec, opts);
  const auto pts = points_for(spec, opts);
  std::optional<StructureSummary> ss;
  if (spec.structure) {
    Report scratch;
    ss = check_structure(spec, pts, scratch);
  }
  check_soliton(p, pts, r, ss ? &*ss : nullptr);
  return r;
}

Report run_audit(const ManifoldSpec& spec, const RunOptions& opts) {
  Report r = header(spec, opts, "audit " + opts.theorem);
  const SolitonProblem p = make_problem(spec, opts);
  theorem_audit(p, points_for(spec, opts), opts.theorem, r);
  return r;
}

namespace {

Report report_on(const ManifoldSpec& spec, const RunOptions& opts, const std::vector<Point>& pts,
                 std::optional<StructureSummary>& ss) {
  Report r = header(spec, opts, "report");
  const SolitonProblem p = make_problem(spec, opts);

  auto curvature = std::async(std::launch::async, [&] {
    Report c;
    check_curvature_identities(spec, pts, c);
    return c;
  });
  std::vector<std::future<Report>> commutation;
  for (const auto& [name, v] : spec.vector_fields) {
    commutation.push_back(std::async(std::launch::async, [&, name = name, v = v] {
      Report c;
      check_commutation(spec, v, pts, c, name);
      return c;
    }));
  }
  Report structure;
  if (spec.structure) ss = check_structure(spec, pts, structure);
  const StructureSummary* ssp = ss ? &*ss : nullptr;
  SolitonRun main = soliton_run(p, pts, ssp);

  r.append(curvature.get());
  r.append(structure);
  r.append(main.report);
  for (auto& f : commutation) r.append(f.get());
  return r;
}

}  // namespace

Report run_report(const ManifoldSpec& spec, const RunOptions& opts) {
  std::optional<StructureSummary> ss;
  return report_on(spec, opts, points_for(spec, opts), ss);
}

Report run_zoo(const ZooEntry& entry, const RunOptions& opts) {
  const ManifoldSpec& spec = entry.spec;
  const auto pts = points_for(spec, opts);
  auto table = std::async(std::launch::async, [&] {
    Report t;
    check_table(entry, pts, t);
    return t;
  });
  auto range = std::async(std::launch::async, [&] { return curvature_range(spec, pts); });
  // zoo runs always fit λ, the declared value is compared below
  RunOptions fit_opts = opts;
  fit_opts.fit = true;
  fit_opts.lambda.reset();
  std::optional<StructureSummary> ss;
  Report r = report_on(spec, fit_opts, pts, ss);
  r.command = "zoo run " + entry.name;

  std::optional<SolitonRun> gradient;
  if (spec.scalar_fields.count("u") && spec.vector_fields.count("V")) {
    RunOptions g = fit_opts;
    g.potential_fn = "u";
    const SolitonProblem gp = make_problem(spec, g);
    gradient = soliton_run(gp, pts, ss ? &*ss : nullptr);
    merge_as(r, gradient->report, " (gradient u)");
    r.values["gradient_soliton"] = gradient->report.values["soliton"];
  }
  r.append(table.get());

  const CurvatureRange cr = range.get();
  const nlohmann::ordered_json& sol = r.values["soliton"];
  const double tol = spec.tolerances.identity;
  const std::string group = "global values";
  const int d = spec.dim();
  const double n = (d - 1) / 2;
  for (const GlobalExpectation& g : entry.globals) {
    const std::string note = to_string(g.source);
    double residual = std::numeric_limits<double>::quiet_NaN();
    if (g.key == "lambda") {
      if (sol["fit"]["lambda"].is_number()) residual = std::abs(sol["fit"]["lambda"].get<double>() - g.value);
    } else if (g.key == "gradient_lambda") {
      if (gradient && gradient->summary.fit.lambda) residual = std::abs(*gradient->summary.fit.lambda - g.value);
    } else if (g.key == "div_V") {
      if (sol.contains("div_V")) residual = std::abs(sol["div_V"].get<double>() - g.value) + sol["div_V_spread"].get<double>();
    } else if (g.key == "scalar_curvature") {
      residual = deviation(cr.r_min, cr.r_max, g.value);
    } else if (g.key == "sectional_curvature") {
      residual = deviation(cr.k_min, cr.k_max, g.value);
    } else if (g.key == "kappa") {
      if (ss && ss->nullity) residual = std::abs(ss->nullity->kappa - g.value);
    } else if (g.key == "mu") {
      if (ss && ss->nullity && ss->nullity->mu) residual = std::abs(*ss->nullity->mu - g.value);
    } else if (g.key == "eta_einstein_a") {
      if (ss && ss->eta_einstein) residual = std::abs(ss->eta_einstein->a_mean - g.value) + ss->eta_einstein->a_spread;
    } else if (g.key == "eta_einstein_b") {
      if (ss && ss->eta_einstein) residual = std::abs(ss->eta_einstein->b_mean - g.value) + ss->eta_einstein->b_spread;
    } else if (g.key == "theorem_lambda") {
      // (6n-2)/(2n-1) against the fitted λ
      residual = std::abs((6.0 * n - 2.0) / (2.0 * n - 1.0) - g.value);
      if (sol["fit"]["lambda"].is_number())
        residual = std::max(residual, std::abs(sol["fit"]["lambda"].get<double>() - g.value));
    } else {
      throw Error("unknown global expectation '" + g.key + "'");
    }
    char value[32];
    std::snprintf(value, sizeof value, "%.10g", g.value);
    r.check(group, g.key + " = " + value, residual, tol, note);
  }
  return r;
}

}  // namespace solitonlab
