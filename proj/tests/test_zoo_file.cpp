#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "solitonlab/error.hpp"
#include "solitonlab/manifold_file.hpp"
#include "solitonlab/soliton.hpp"
#include "solitonlab/zoo.hpp"

using namespace solitonlab;

namespace {

const std::string kData = SOLITONLAB_DATA_DIR;

// Largest difference between every field of two specs at the given points.
double max_difference(const ManifoldSpec& a, const ManifoldSpec& b, const std::vector<Point>& pts) {
  double worst = 0.0;
  const auto diff = [&](const TensorField& x, const TensorField& y) {
    for (std::size_t n = 0; n < x.size(); ++n)
      for (std::size_t c = 0; c < x.at_flat(n).raw().size(); ++c)
        worst = std::max(worst, std::abs(x.at_flat(n).raw()[c] - y.at_flat(n).raw()[c]));
  };
  for (const Point& p : pts) {
    Geometry ga(a, p), gb(b, p);
    diff(ga.metric(), gb.metric());
    diff(ga.christoffel(), gb.christoffel());
    if (a.structure) {
      const StructureFields sa = ga.structure(), sb = gb.structure();
      diff(sa.phi, sb.phi);
      diff(sa.xi, sb.xi);
      diff(sa.eta, sb.eta);
    }
    for (const auto& [name, v] : a.vector_fields) diff(ga.vector_field(v), gb.vector_field(b.vector_fields.at(name)));
    for (const auto& [name, u] : a.scalar_fields) {
      const Jet3 x = ga.scalar_field(u), y = gb.scalar_field(b.scalar_fields.at(name));
      for (std::size_t c = 0; c < x.raw().size(); ++c) worst = std::max(worst, std::abs(x.raw()[c] - y.raw()[c]));
    }
  }
  return worst;
}

std::string expect_parse_error(const std::string& text) {
  try {
    parse_manifold(text, "t.manifold");
  } catch (const ParseError& e) {
    return e.what();
  } catch (const ManifoldError& e) {
    return std::string("manifold: ") + e.what();
  }
  return "";
}

const char* kMinimal = R"([manifold]
coordinates = ["x", "y"]
[metric]
g.x.x = "1"
g.y.y = "1"
[domain]
x = [0, 1]
y = [0, 1]
)";

}  // namespace

TEST_CASE("every zoo entry passes its expected-value table") {
  for (const auto& name : zoo_names()) {
    const ZooEntry e = zoo_entry(name);
    Report r;
    check_table(e, sample_points(e.spec, 20, 1), r);
    INFO(name);
    CHECK(r.passed());
    CHECK_FALSE(e.table.empty());
    CHECK_FALSE(e.globals.empty());
  }
}

TEST_CASE("zoo constructors validate their arguments") {
  CHECK_THROWS_AS(zoo_example_3_6(0.0), Error);
  CHECK_THROWS_AS(zoo_hyperbolic(4), Error);
  CHECK_THROWS_AS(zoo_hyperbolic(0), Error);
  CHECK_THROWS_AS(zoo_entry("no-such-entry"), Error);
  CHECK(zoo_entry("hyperbolic-3").spec.dim() == 7);
  CHECK(zoo_entry("example-3-6:a=2.5").spec.parameters.at("a") == 2.5);
  const ZooEntry e = zoo_example_3_6();
  CHECK(evaluate_metric(e.spec, Point{{0, 0, 0}}).metric(0, 0).value() == 0.5);
}

TEST_CASE("rotational example and hyperbolic-1 share their scalar invariants") {
  const ZooEntry a = zoo_example_3_6(), b = zoo_hyperbolic(1);
  const auto pa = sample_points(a.spec, 10, 1), pb = sample_points(b.spec, 10, 1);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    Geometry ga(a.spec, pa[i]), gb(b.spec, pb[i]);
    CHECK(ga.scalar_curvature().value() == doctest::Approx(gb.scalar_curvature().value()));
    // Einstein constant S = c g
    const double ca = ga.ricci()(2, 2).value() / ga.metric()(2, 2).value();
    const double cb = gb.ricci()(0, 0).value() / gb.metric()(0, 0).value();
    CHECK(ca == doctest::Approx(cb));
  }
  SolitonProblem pta, ptb;
  pta.spec = &a.spec;
  ptb.spec = &b.spec;
  CHECK(*fit_lambda(pta, pa).lambda == doctest::Approx(*fit_lambda(ptb, pb).lambda));
}

TEST_CASE("shipped example files reproduce the zoo entries") {
  for (const char* name : {"example-3-6", "example-4-5"}) {
    const ZooEntry e = zoo_entry(name);
    const ManifoldSpec loaded = load_manifold(kData + "/" + name + ".manifold");
    INFO(name);
    CHECK(loaded.name == name);
    CHECK(loaded.mode == e.spec.mode);
    CHECK(loaded.declared_lambda == e.spec.declared_lambda);
    CHECK(max_difference(e.spec, loaded, sample_points(e.spec, 50, 7)) < 1e-12);
  }
}

TEST_CASE("write then parse is the identity on every zoo entry") {
  for (const auto& name : zoo_names()) {
    const ZooEntry e = zoo_entry(name);
    const std::string text = write_manifold(e.spec);
    const ManifoldSpec back = parse_manifold(text, name);
    INFO(name);
    CHECK(write_manifold(back) == text);
    CHECK(max_difference(e.spec, back, sample_points(e.spec, 10, 2)) == 0.0);
  }
}

TEST_CASE("malformed manifold files") {
  CHECK(expect_parse_error(kMinimal).empty());
  const auto with = [](const std::string& from, const std::string& to) {
    std::string t = kMinimal;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  CHECK(expect_parse_error(with("g.y.y = \"1\"", "g.y.y = \"1\"\ng.x.y = \"x\"\ng.y.x = \"0\"")).find("not symmetric") !=
        std::string::npos);
  CHECK(expect_parse_error(with("g.x.x = \"1\"", "g.x.x = \"x - 0.5\"")).find("positive definite") != std::string::npos);
  CHECK(expect_parse_error(with("g.x.x = \"1\"", "g.x.x = \"1 + * x\"")).find("t.manifold:4:14") != std::string::npos);
  CHECK(expect_parse_error(with("g.x.x = \"1\"", "g.x.q = \"1\"")).find("unknown coordinate") != std::string::npos);
  CHECK(expect_parse_error(with("[domain]", "[domian]")).find("unknown section") != std::string::npos);
  CHECK(expect_parse_error(with("y = [0, 1]\n", "")).find("missing coordinate 'y'") != std::string::npos);
  CHECK(expect_parse_error(with("y = [0, 1]", "y = [1, 0]")).find("lo < hi") != std::string::npos);
  CHECK(expect_parse_error(with("coordinates", "dimension = 3\ncoordinates")).find("does not match") != std::string::npos);
  CHECK(expect_parse_error(with("g.x.x = \"1\"", "g.x.x = \"log(x - 2)\"")).find("manifold:") == 0);
  CHECK(expect_parse_error(std::string(kMinimal) + "[potential]\nV = [\"1\"]\n").find("expected 2 entries") !=
        std::string::npos);
  CHECK(expect_parse_error(std::string(kMinimal) + "[frame]\ne1 = [\"1\", \"0\"]\n").find("not both") != std::string::npos);
  CHECK(expect_parse_error(std::string(kMinimal) + "[tolerances]\nidentity = -1\n").find("positive") != std::string::npos);
  CHECK(expect_parse_error(with("g.y.y = \"1\"", "g.y.y = \"1\"\ng.y.y = \"2\"")).find("duplicate key") != std::string::npos);
  CHECK_THROWS_AS(load_manifold("/nonexistent/file.manifold"), Error);
}

TEST_CASE("frame files must be orthonormal for the induced metric") {
  const std::string bad = R"([manifold]
coordinates = ["x", "y"]
[frame]
e1 = ["1", "0"]
e2 = ["0", "1"]
[structure]
basis = "frame"
phi.1 = ["0", "0"]
phi.2 = ["0", "0"]
xi = ["1", "0"]
eta = ["1", "0"]
[domain]
x = [0, 1]
y = [0, 1]
)";
  CHECK_NOTHROW(parse_manifold(bad, "f"));
  std::string degenerate = bad;
  degenerate.replace(degenerate.find("e2 = [\"0\", \"1\"]"), 15, "e2 = [\"1\", \"0\"]");
  CHECK_THROWS_AS(parse_manifold(degenerate, "f"), Error);
}

TEST_CASE("parameters and comments") {
  const std::string text = R"(# header comment
[manifold]
name = "scaled"   # trailing comment
coordinates = ["x", "y"]
[parameters]
c = 2
[metric]
g.x.x = "c^2"
g.y.y = 1
[domain]
x = [0, 1]
y = [0, 1]
)";
  const ManifoldSpec s = parse_manifold(text, "p");
  CHECK(s.name == "scaled");
  CHECK(evaluate_metric(s, Point{{0.5, 0.5}}).metric(0, 0).value() == 4.0);
}
