// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "fd.hpp"
#include "json.hpp"
#include "random_expr.hpp"
#include "solitonlab/contact.hpp"
#include "solitonlab/pipeline.hpp"
#include "solitonlab/soliton.hpp"
#include "solitonlab/zoo.hpp"

using namespace solitonlab;
using Clock = std::chrono::steady_clock;

namespace {

const std::string kBinary = SOLITONLAB_CLI_PATH;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects the individual conditions of one criterion and remembers the first
// one that failed.
class Criterion {
 public:
  explicit Criterion(std::string title) : title_(std::move(title)), start_(Clock::now()) {}

  void require(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failure_.empty()) failure_ = what;
  }

  // The named check must exist, not be skipped, and have residual < bound.
  void below(const Report& r, const std::string& group, const std::string& name, double bound) {
    const Check* c = r.find(group, name);
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%.3g >= %.0e)", c ? c->residual : NAN, bound);
    require(c && c->status == Status::kPass && c->residual < bound, group + " / " + name + (c ? buf : " missing"));
  }

  // Every check of the group must pass with residual < bound; returns how many there were.
  int group_below(const Report& r, const std::string& group, double bound) {
    int n = 0;
    for (const Check& c : r.checks) {
      if (c.group != group) continue;
      ++n;
      char buf[64];
      std::snprintf(buf, sizeof buf, " (%.3g)", c.residual);
      require(c.status == Status::kPass && c.residual < bound, group + " / " + c.name + buf);
    }
    return n;
  }

  void info(const std::string& line) { info_.push_back(line); }

  bool finish(int number) const {
    const bool ok = failure_.empty() && count_ > 0;
    std::printf("%s %d %s [%d conditions, %.2f s]%s%s\n", ok ? "PASS" : "FAIL", number, title_.c_str(), count_,
                seconds_since(start_), ok ? "" : ": ", failure_.c_str());
    for (const auto& l : info_) std::printf("     %s\n", l.c_str());
    return ok;
  }

  double elapsed() const { return seconds_since(start_); }

 private:
  std::string title_;
  Clock::time_point start_;
  int count_ = 0;
  std::string failure_;
  std::vector<std::string> info_;
};

std::string fmt(const char* f, double x) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

int count_prefix(const Report& r, const std::string& group, const std::string& prefix) {
  int n = 0;
  for (const Check& c : r.checks) n += c.group == group && c.name.rfind(prefix, 0) == 0;
  return n;
}

double value(const nlohmann::ordered_json& j) { return j.is_number() ? j.get<double>() : NAN; }

bool criterion_1() {
  Criterion c("example 3.6 connection and curvature tables at 100 points");
  const ZooEntry e = zoo_example_3_6();
  const auto pts = sample_points(e.spec, 100, kDefaultSeed);
  Report r;
  check_table(e, pts, r);
  c.require(count_prefix(r, "expected values", "nabla_") == 9, "nine Christoffel identities");
  c.require(count_prefix(r, "expected values", "R(d") == 9, "nine curvature values");
  c.group_below(r, "expected values", 1e-9);
  double worst = 0.0;
  for (const Point& p : pts) worst = std::max(worst, std::abs(Geometry(e.spec, p).ricci()(2, 2).value() + 2.0));
  c.require(worst < 1e-9, "S(dz,dz) = -2" + fmt(" off by %.3g", worst));
  c.require(c.elapsed() < 5.0, "runtime " + fmt("%.2f s", c.elapsed()));
  return c.finish(1);
}

bool criterion_2() {
  Criterion c("example 3.6 soliton at lambda = 1");
  const ZooEntry e = zoo_example_3_6();
  RunOptions opts;
  opts.lambda = 1.0;
  const Report s = run_soliton(e.spec, opts);
  c.below(s, "soliton", "2R + lambda g^g + g^L_V g = 0", 1e-8);
  c.below(s, "divergence relations", "div V = 2n(1 - lambda)", 1e-9);
  c.require(std::abs(value(s.values["soliton"]["div_V"])) < 1e-9, "div V = 0");

  Report t;
  check_table(e, sample_points(e.spec, opts.samples, opts.seed), t);
  c.below(t, "expected values", "L_V g = 0", 1e-9);

  RunOptions fit;
  fit.fit = true;
  const Report f = run_soliton(e.spec, fit);
  const double lambda = value(f.values["soliton"]["fit"]["lambda"]);
  c.require(std::abs(lambda - 1.0) < 1e-8, "fit_lambda" + fmt(" = %.12g", lambda));

  RunOptions audit;
  audit.theorem = "3.3";
  const Report a = run_audit(e.spec, audit);
  c.require(a.passed(), "theorem 3.3 audit");
  c.group_below(a, "conclusions (theorem 3.3)", 1e-8);
  const Report z = run_zoo(e, RunOptions{});
  c.below(z, "global values", "sectional_curvature = -1", 1e-8);
  c.info("fitted lambda = " + fmt("%.15g", lambda));
  return c.finish(2);
}

bool criterion_3() {
  Criterion c("example 4.5 tables, nullity, lambda = 4");
  const ZooEntry e = zoo_example_4_5();
  Report t;
  check_table(e, sample_points(e.spec, 100, kDefaultSeed), t);
  c.require(count_prefix(t, "expected values", "[") == 3, "bracket table");
  c.require(count_prefix(t, "expected values", "nabla_") == 9, "connection table");
  c.require(count_prefix(t, "expected values", "R(e") == 9, "curvature table");
  c.require(count_prefix(t, "expected values", "h'(") == 3, "h' action");
  c.require(count_prefix(t, "expected values", "(L_V g)") == 6, "L_V g table");
  c.group_below(t, "expected values", 1e-9);

  RunOptions opts;
  opts.lambda = 4.0;
  const Report s = run_soliton(e.spec, opts);
  c.below(s, "soliton", "2R + lambda g^g + g^L_V g = 0", 1e-8);
  c.below(s, "divergence relations", "2n lambda + div V + 2n kappa = 0", 1e-9);

  const Report st = run_structure(e.spec, RunOptions{});
  const auto& nullity = st.values["structure"]["nullity"];
  const double kappa = value(nullity["kappa"]), mu = value(nullity["mu"]);
  c.require(std::abs(kappa + 2.0) < 1e-8 && std::abs(mu + 2.0) < 1e-8,
            "(kappa, mu) = (" + fmt("%.12g", kappa) + ", " + fmt("%.12g", mu) + ")");

  const Report z = run_zoo(e, RunOptions{});
  c.below(z, "global values", "scalar_curvature = -8", 1e-8);
  c.below(z, "global values", "theorem_lambda = 4", 1e-8);
  c.below(z, "divergence relations (gradient u)", "lambda = (6n-2)/(2n-1)", 1e-8);
  const double lambda = value(z.values["soliton"]["fit"]["lambda"]);
  const int n = 1;
  c.require(std::abs(lambda - (6.0 * n - 2) / (2.0 * n - 1)) < 1e-8, "fitted lambda" + fmt(" = %.12g", lambda));
  c.info("(kappa, mu) = (" + fmt("%.15g", kappa) + ", " + fmt("%.15g", mu) + "), lambda = " + fmt("%.15g", lambda));
  return c.finish(3);
}

bool criterion_4() {
  Criterion c("structure identity suites on every zoo entry");
  for (const auto& name : zoo_names()) {
    const ZooEntry e = zoo_entry(name);
    const auto pts = sample_points(e.spec, name == "hyperbolic-2" ? 20 : 50, kDefaultSeed);
    Report r;
    const StructureSummary ss = check_structure(e.spec, pts, r);
    c.require(c.group_below(r, "almost contact", 1e-8) == 4, name + ": almost contact suite");
    c.require(c.group_below(r, "almost Kenmotsu", 1e-8) == 2, name + ": almost Kenmotsu suite");
    c.require(c.group_below(r, "structure tensors", 1e-8) >= 8, name + ": structure tensor suite");
    if (ss.kenmotsu) c.require(c.group_below(r, "Kenmotsu", 1e-8) == 5, name + ": Kenmotsu suite");
    if (name == "example-4-5") {
      c.require(!ss.kenmotsu, name + " is not Kenmotsu");
      c.require(c.group_below(r, "(kappa,mu)'", 1e-8) == 8, name + ": (kappa,mu)' suite");
    }
    if (name == "example-3-6" || name.rfind("hyperbolic", 0) == 0) c.require(ss.kenmotsu, name + " is Kenmotsu");
  }
  return c.finish(4);
}

bool criterion_5() {
  Criterion c("commutation formulas, 10 random potentials per zoo entry");
  std::mt19937_64 rng(kDefaultSeed);
  double worst = 0.0;
  for (const auto& name : zoo_names()) {
    const ZooEntry e = zoo_entry(name);
    const auto pts = sample_points(e.spec, 3, kDefaultSeed);
    for (int k = 0; k < 10; ++k) {
      VectorFieldSpec v;
      for (int i = 0; i < e.spec.dim(); ++i) v.components.push_back(e.spec.parse(random_poly(rng, e.spec.coordinates)));
      Report r;
      check_commutation(e.spec, v, pts, r, "W");
      c.require(c.group_below(r, "commutation (W)", 1e-8) == 4, name + ": commutation suite");
      for (const Check& ch : r.checks) worst = std::max(worst, ch.residual);
    }
  }
  c.info("worst residual " + fmt("%.3g", worst));
  return c.finish(5);
}

bool criterion_6() {
  Criterion c("contraction bridge with random potentials and lambda");
  std::mt19937_64 rng(kDefaultSeed + 1);
  std::uniform_real_distribution<double> lam(-3.0, 3.0);
  double worst = 0.0, literal = 0.0;
  for (const auto& name : zoo_names()) {
    const ZooEntry e = zoo_entry(name);
    const int d = e.spec.dim();
    const double n = (d - 1) / 2;
    for (int k = 0; k < 5; ++k) {
      VectorFieldSpec v;
      for (int i = 0; i < d; ++i) v.components.push_back(e.spec.parse(random_poly(rng, e.spec.coordinates)));
      const double l = lam(rng);
      for (const Point& p : sample_points(e.spec, 4, static_cast<std::uint64_t>(k + 1))) {
        Geometry g(e.spec, p);
        const TensorField V = g.vector_field(v);
        const TensorValue E = contracted_residual(g, V, l);
        const TensorValue tr = trace_14(riemann_soliton_residual(g, V, l), value_of(g.inverse_metric()));
        worst = std::max(worst, max_abs(tr + (2 * n - 1) * E));
        literal = std::max(literal, max_abs(tr - (2 * n - 1) * E));
      }
    }
  }
  c.require(worst < 1e-9, "trace_14(T) + (2n-1) E" + fmt(" = %.3g", worst));
  c.info("max |trace_14(T) + (2n-1) E| = " + fmt("%.3g", worst));
  c.info("with the literal sign, max |trace_14(T) - (2n-1) E| = " + fmt("%.3g", literal) + " (informational)");
  return c.finish(6);
}

bool criterion_7() {
  Criterion c("jets vs Richardson finite differences, 1000 cases");
  const std::vector<std::string> names{"x", "y", "z"};
  RandomExpressions gen(names, 20240517);
  const SymbolTable symbols{names, {}};
  const auto close = [](double exact, double approx) {
    return std::abs(exact - approx) <= 1e-6 * std::max(1.0, std::abs(exact));
  };
  int bad = 0, asym = 0;
  for (int n = 0; n < 1000; ++n) {
    const Expression e = Expression::parse(gen.make(4), symbols);
    const Point p{gen.point(-0.8, 0.8)};
    const Jet3 j = e.evaluate(p);
    for (int i = 0; i < 3; ++i) {
      bad += !close(j.d(i), richardson([&](const Point& q) { return e.value(q); }, p, i));
      for (int k = 0; k < 3; ++k) {
        bad += !close(j.d(i, k), richardson([&](const Point& q) { return e.evaluate(q).d(k); }, p, i));
        const double ik = j.d(i, k), ki = j.d(k, i);
        asym += std::memcmp(&ik, &ki, sizeof ik) != 0;
        for (int l = 0; l < 3; ++l) {
          bad += !close(j.d(i, k, l), richardson([&](const Point& q) { return e.evaluate(q).d(k, l); }, p, i));
          const double a = j.d(i, k, l), b = j.d(l, i, k), cc = j.d(k, l, i);
          asym += std::memcmp(&a, &b, sizeof a) != 0 || std::memcmp(&a, &cc, sizeof a) != 0;
        }
      }
    }
  }
  c.require(bad == 0, std::to_string(bad) + " derivative mismatches");
  c.require(asym == 0, std::to_string(asym) + " asymmetric mixed partials");
  return c.finish(7);
}

struct Spawned {
  int code = -1;
  std::string out;
};

Spawned spawn(const std::string& args) {
  Spawned s;
  FILE* pipe = popen((kBinary + " " + args + " 2>/dev/null").c_str(), "r");
  if (!pipe) return s;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) s.out.append(buf, n);
  const int status = pclose(pipe);
  s.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return s;
}

double fitted_lambda(const std::string& json) {
  try {
    return value(nlohmann::ordered_json::parse(json)["values"]["soliton"]["fit"]["lambda"]);
  } catch (const std::exception&) {
    return NAN;
  }
}

bool criterion_8(Clock::time_point suite_start) {
  Criterion c("command line end to end");
  const Spawned a = spawn("--format json zoo run example-3-6");
  c.require(a.code == 0, "zoo run example-3-6 exit " + std::to_string(a.code));
  c.require(std::abs(fitted_lambda(a.out) - 1.0) < 1e-8, "example-3-6 lambda" + fmt(" = %.12g", fitted_lambda(a.out)));
  const Spawned b = spawn("--format json zoo run example-4-5");
  c.require(b.code == 0, "zoo run example-4-5 exit " + std::to_string(b.code));
  c.require(std::abs(fitted_lambda(b.out) - 4.0) < 1e-8, "example-4-5 lambda" + fmt(" = %.12g", fitted_lambda(b.out)));
  const Spawned neg = spawn("check soliton example-3-6 --lambda 0");
  c.require(neg.code == 1, "lambda = 0 control exit " + std::to_string(neg.code));
  const double total = seconds_since(suite_start);
  c.require(total < 60.0, "acceptance runtime " + fmt("%.1f s", total));
  c.info("acceptance suite runtime " + fmt("%.2f s", total));
  return c.finish(8);
}

}  // namespace

int main() {
  const auto start = Clock::now();
  const std::vector<std::function<bool()>> criteria{
      criterion_1, criterion_2, criterion_3, criterion_4,
      criterion_5, criterion_6, criterion_7, [&] { return criterion_8(start); }};
  int failed = 0;
  for (const auto& run : criteria) {
    try {
      failed += !run();
    } catch (const std::exception& e) {
      std::printf("FAIL (exception: %s)\n", e.what());
      ++failed;
    }
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
