#include <cmath>
#include <cstring>
#include <functional>

#include "doctest.h"
#include "fd.hpp"
#include "random_expr.hpp"
#include "solitonlab/error.hpp"
#include "solitonlab/expression.hpp"

using namespace solitonlab;

namespace {

bool close(double exact, double approx, double rel) {
  return std::abs(exact - approx) <= rel * std::max(1.0, std::abs(exact));
}

}  // namespace

TEST_CASE("coordinate lift") {
  const Jet3 x = Jet3::coordinate(Point{{3.0}}, 0);
  CHECK(x.value() == 3.0);
  CHECK(x.d(0) == 1.0);
  CHECK(x.d(0, 0) == 0.0);
  const Jet3 y = Jet3::coordinate(Point{{1.0, 2.0}}, 1);
  CHECK(y.value() == 2.0);
  CHECK(y.d(0) == 0.0);
  CHECK(y.d(1) == 1.0);
  const Jet3 z = Jet3::coordinate(Point{{0.0, 0.0, 5.0}}, 2);
  CHECK(z.value() == 5.0);
  CHECK(z.d(2) == 1.0);
  CHECK(z.d(0) == 0.0);
  CHECK(z.d(2, 2, 2) == 0.0);
  CHECK_THROWS_AS(Jet3::coordinate(Point{{1.0}}, 1), Error);
  CHECK_THROWS_AS(Jet3::coordinate(Point{{1.0}}, -1), Error);
}

TEST_CASE("arithmetic ladders") {
  const Jet3 x = Jet3::coordinate(Point{{3.0}}, 0);
  const Jet3 sq = x * x;
  CHECK(sq.value() == 9.0);
  CHECK(sq.d(0) == 6.0);
  CHECK(sq.d(0, 0) == 2.0);
  CHECK(sq.d(0, 0, 0) == 0.0);

  const Point p{{1.0, 2.0}};
  const Jet3 xy = Jet3::coordinate(p, 0) * Jet3::coordinate(p, 1);
  CHECK(xy.d(0, 1) == 1.0);
  CHECK(xy.d(1, 0) == 1.0);

  const Jet3 e = exp(2.0 * Jet3::coordinate(Point{{0.0}}, 0));
  CHECK(e.value() == doctest::Approx(1.0));
  CHECK(e.d(0) == doctest::Approx(2.0));
  CHECK(e.d(0, 0) == doctest::Approx(4.0));
  CHECK(e.d(0, 0, 0) == doctest::Approx(8.0));

  const Jet3 q = Jet3::coordinate(Point{{2.0}}, 0) / (Jet3::coordinate(Point{{2.0}}, 0) + 2.0);
  // x/(x+2) at 2: 1/2, 2/(x+2)^2, -4/(x+2)^3, 12/(x+2)^4
  CHECK(q.value() == doctest::Approx(0.5));
  CHECK(q.d(0) == doctest::Approx(0.125));
  CHECK(q.d(0, 0) == doctest::Approx(-0.0625));
  CHECK(q.d(0, 0, 0) == doctest::Approx(12.0 / 256.0));
}

TEST_CASE("elementary functions") {
  const Jet3 t = Jet3::coordinate(Point{{0.0}}, 0);
  const Jet3 c = cosh(t);
  CHECK(c.value() == 1.0);
  CHECK(c.d(0) == 0.0);
  CHECK(c.d(0, 0) == 1.0);
  CHECK(c.d(0, 0, 0) == 0.0);
  const Jet3 e = exp(t);
  CHECK(e.value() == 1.0);
  CHECK(e.d(0) == 1.0);
  CHECK(e.d(0, 0) == 1.0);
  CHECK(e.d(0, 0, 0) == 1.0);
  const Jet3 r = sqrt(Jet3::coordinate(Point{{4.0}}, 0));
  CHECK(r.value() == 2.0);
  CHECK(r.d(0) == 0.25);
  CHECK(sinh(t).d(0, 0, 0) == 1.0);
}

TEST_CASE("domain errors") {
  const Jet3 z = Jet3::coordinate(Point{{0.0}}, 0);
  CHECK_THROWS_AS(log(z), DomainError);
  CHECK_THROWS_AS(sqrt(z - 1.0), DomainError);
  CHECK_THROWS_AS(Jet3::constant(1, 1.0) / z, DomainError);
  CHECK_THROWS_AS(pow(z - 1.0, 0.5), DomainError);
  CHECK_NOTHROW(pow(z, 2.0));
}

TEST_CASE("jets match Richardson finite differences on 1000 random expressions") {
  const std::vector<std::string> names{"x", "y", "z"};
  RandomExpressions gen(names, 20240517);
  const SymbolTable symbols{names, {}};
  double worst = 0.0;
  int failures = 0;
  for (int n = 0; n < 1000; ++n) {
    const Expression e = Expression::parse(gen.make(4), symbols);
    const Point p{gen.point(-0.8, 0.8)};
    const Jet3 j = e.evaluate(p);
    for (int i = 0; i < 3; ++i) {
      // each derivative order is compared against a difference quotient of the order below
      const double d1 = richardson([&](const Point& q) { return e.value(q); }, p, i);
      if (!close(j.d(i), d1, 1e-6)) ++failures;
      worst = std::max(worst, std::abs(j.d(i) - d1) / std::max(1.0, std::abs(j.d(i))));
      for (int k = 0; k < 3; ++k) {
        const double d2 = richardson([&](const Point& q) { return e.evaluate(q).d(k); }, p, i);
        if (!close(j.d(i, k), d2, 1e-6)) ++failures;
        worst = std::max(worst, std::abs(j.d(i, k) - d2) / std::max(1.0, std::abs(j.d(i, k))));
        for (int l = 0; l < 3; ++l) {
          const double d3 = richardson([&](const Point& q) { return e.evaluate(q).d(k, l); }, p, i);
          if (!close(j.d(i, k, l), d3, 1e-6)) ++failures;
          worst = std::max(worst, std::abs(j.d(i, k, l) - d3) / std::max(1.0, std::abs(j.d(i, k, l))));
        }
      }
    }
  }
  INFO("worst relative error " << worst);
  CHECK(failures == 0);
}

TEST_CASE("mixed partials are bitwise symmetric") {
  const std::vector<std::string> names{"x", "y", "z", "w"};
  RandomExpressions gen(names, 7);
  const SymbolTable symbols{names, {}};
  for (int n = 0; n < 200; ++n) {
    const Jet3 j = Expression::parse(gen.make(4), symbols).evaluate(Point{gen.point()});
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const double ab = j.d(a, b), ba = j.d(b, a);
        CHECK(std::memcmp(&ab, &ba, sizeof ab) == 0);
        for (int c = 0; c < 4; ++c) {
          const double v[6] = {j.d(a, b, c), j.d(a, c, b), j.d(b, a, c), j.d(b, c, a), j.d(c, a, b), j.d(c, b, a)};
          for (double w : v) CHECK(std::memcmp(&w, &v[0], sizeof w) == 0);
        }
      }
  }
}

TEST_CASE("jet of a composition equals the composition of jets") {
  // f_k o ... o f_1 (x, y) evaluated in one pass versus link by link, where
  // each outer link is applied through its one-variable jet at the inner value.
  const std::vector<std::string> fns{"exp", "sin", "cos", "tanh", "sinh", "cosh"};
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> pick(0, fns.size() - 1);
  std::uniform_int_distribution<int> depth(1, 5);
  std::uniform_real_distribution<double> coord(-0.7, 0.7);
  const SymbolTable symbols{{"x", "y"}, {}};
  const SymbolTable one{{"s"}, {}};
  for (int n = 0; n < 300; ++n) {
    const Point p{{coord(rng), coord(rng)}};
    std::string text = "(x*y + 0.3*x)";
    Jet3 link = Expression::parse(text, symbols).evaluate(p);
    const int k = depth(rng);
    for (int level = 0; level < k; ++level) {
      const std::string f = fns[pick(rng)];
      text = f + "(0.5*" + text + ")";
      const Jet3 u = Expression::parse(f + "(0.5*s)", one).evaluate(Point{{link.value()}});
      link = Jet3::compose(link, u.value(), u.d(0), u.d(0, 0), u.d(0, 0, 0));
    }
    const Jet3 whole = Expression::parse(text, symbols).evaluate(p);
    for (std::size_t c = 0; c < whole.raw().size(); ++c)
      CHECK(whole.raw()[c] == doctest::Approx(link.raw()[c]).epsilon(1e-12).scale(1.0));
  }
}
