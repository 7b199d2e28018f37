#include <cmath>

#include "doctest.h"
#include "solitonlab/contact.hpp"
#include "solitonlab/zoo.hpp"
#include "spec_builder.hpp"

using namespace solitonlab;

namespace {

StructureSpec structure(const ManifoldSpec& s, const std::vector<std::vector<std::string>>& phi,
                        const std::vector<std::string>& xi, const std::vector<std::string>& eta) {
  StructureSpec st;
  for (const auto& row : phi) st.phi.push_back(vector_spec(s, row).components);
  st.xi = vector_spec(s, xi).components;
  st.eta = vector_spec(s, eta).components;
  return st;
}

const Check* find_group(const Report& r, const std::string& group, Status status) {
  for (const Check& c : r.checks)
    if (c.group == group && c.status == status) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("rotational example is Kenmotsu and eta-Einstein") {
  const ZooEntry e = zoo_example_3_6();
  Report r;
  const StructureSummary s = check_structure(e.spec, sample_points(e.spec, 30, 1), r);
  CHECK(r.passed());
  CHECK(s.n == 1);
  CHECK(s.almost_contact);
  CHECK(s.almost_kenmotsu);
  CHECK(s.kenmotsu);
  REQUIRE(s.eta_einstein);
  CHECK(s.eta_einstein->a_mean == doctest::Approx(-2.0));
  CHECK(std::abs(s.eta_einstein->b_mean) < 1e-12);
  REQUIRE(s.nullity);
  CHECK(s.nullity->kappa == doctest::Approx(-1.0));
  CHECK_FALSE(s.nullity->mu.has_value());  // h' = 0 leaves mu undetermined
  CHECK(r.find("Kenmotsu", "R(X,Y) xi = eta(X) Y - eta(Y) X") != nullptr);
}

TEST_CASE("(-2,-2)' example: nullity fit and h' eigenstructure") {
  const ZooEntry e = zoo_example_4_5();
  const auto pts = sample_points(e.spec, 30, 2);
  Report r;
  const StructureSummary s = check_structure(e.spec, pts, r);
  CHECK(r.passed());
  CHECK(s.almost_kenmotsu);
  CHECK_FALSE(s.kenmotsu);
  REQUIRE(s.nullity);
  CHECK(s.nullity_holds);
  CHECK(s.nullity->kappa == doctest::Approx(-2.0).epsilon(1e-10));
  REQUIRE(s.nullity->mu);
  CHECK(*s.nullity->mu == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(r.find("(kappa,mu)'", "g((nabla_X h')Y,Z) formula")->status == Status::kPass);
  CHECK(r.find("(kappa,mu)'", "(div h')X = 2n(kappa+1) eta(X)")->status == Status::kPass);
  CHECK(r.find("(kappa,mu)'", "tr(nabla_X h') = 0")->status == Status::kPass);
  CHECK(r.find("Kenmotsu", "Kenmotsu identities")->status == Status::kSkipped);

  // h' e2 = e2, h' e3 = -e3, h' e1 = 0 at every point
  for (const Point& p : pts) {
    Geometry g(e.spec, p);
    const StructurePoint sp = structure_at(g);
    const TensorValue hp = value_of(sp.h_prime);
    const Vec e1{-1, 2 * p[1], -1}, e2{0, 1, 0}, e3{0, 0, 1};
    const Vec a = solitonlab::apply(hp, e1), b = solitonlab::apply(hp, e2), c = solitonlab::apply(hp, e3);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(a[static_cast<std::size_t>(i)]) < 1e-12);
      CHECK(b[static_cast<std::size_t>(i)] == doctest::Approx(e2[static_cast<std::size_t>(i)]));
      CHECK(c[static_cast<std::size_t>(i)] == doctest::Approx(-e3[static_cast<std::size_t>(i)]));
    }
  }
}

TEST_CASE("Kenmotsu identities on higher-dimensional hyperbolic space") {
  const ZooEntry e = zoo_hyperbolic(2);
  Report r;
  const StructureSummary s = check_structure(e.spec, sample_points(e.spec, 10, 3), r);
  CHECK(r.passed());
  CHECK(s.n == 2);
  CHECK(s.kenmotsu);
  CHECK(s.eta_einstein_holds);
}

TEST_CASE("negative control: identity endomorphism on Euclidean space") {
  ManifoldSpec s = euclidean(3);
  s.structure = structure(s, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}, {"0", "0", "1"}, {"0", "0", "1"});
  Report r;
  const StructureSummary sum = check_structure(s, sample_points(s, 5, 1), r);
  CHECK_FALSE(sum.almost_contact);
  CHECK_FALSE(r.passed());
  CHECK(r.find("almost contact", "phi^2 X = -X + eta(X) xi")->status == Status::kFail);
  CHECK(r.find("almost Kenmotsu", "almost Kenmotsu conditions")->status == Status::kSkipped);
}

TEST_CASE("negative control: contact form with d eta != 0") {
  // g = dx^2 + dy^2 + eta^2, eta = dz - y dx, xi = dz; an almost contact metric
  // structure that is not almost Kenmotsu.
  ManifoldSpec s = metric_spec({"x", "y", "z"}, {{"1 + y^2", "0", "-y"}, {"0", "1", "0"}, {"-y", "0", "1"}},
                               {{-1, 1}, {-1, 1}, {-1, 1}});
  s.structure = structure(s, {{"0", "-1", "0"}, {"1", "0", "0"}, {"0", "-y", "0"}}, {"0", "0", "1"}, {"-y", "0", "1"});
  validate(s);
  Report r;
  const StructureSummary sum = check_structure(s, sample_points(s, 5, 1), r);
  CHECK(sum.almost_contact);
  CHECK_FALSE(sum.almost_kenmotsu);
  CHECK(find_group(r, "almost contact", Status::kFail) == nullptr);
  CHECK(r.find("almost Kenmotsu", "d eta = 0")->status == Status::kFail);
  CHECK(r.find("almost Kenmotsu", "d eta = 0")->residual > 0.5);
}

TEST_CASE("normality tensor vanishes exactly for Kenmotsu structures") {
  const ZooEntry e = zoo_example_3_6();
  for (const Point& p : sample_points(e.spec, 5, 1)) {
    Geometry g(e.spec, p);
    CHECK(max_abs(normality_tensor(g)) < 1e-12);
    CHECK(max_abs(kenmotsu_residual(g)) < 1e-12);
  }
  const ZooEntry f = zoo_example_4_5();
  Geometry g(f.spec, Point{{0.1, 0.2, 0.3}});
  CHECK(max_abs(normality_tensor(g)) > 0.1);
}

TEST_CASE("adapted frame starts with xi") {
  const ZooEntry e = zoo_example_4_5();
  Geometry g(e.spec, Point{{0.1, 0.2, 0.3}});
  const StructurePoint sp = structure_at(g);
  const Frame fr = adapted_frame(g, sp.xi);
  for (int i = 0; i < 3; ++i) CHECK(fr.vectors[0][static_cast<std::size_t>(i)] == doctest::Approx(sp.xi[static_cast<std::size_t>(i)]));
  const TensorValue gv = g.metric_value();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK(inner(gv, fr.vectors[static_cast<std::size_t>(a)], fr.vectors[static_cast<std::size_t>(b)]) ==
            doctest::Approx(a == b ? 1.0 : 0.0).scale(1.0));
}

TEST_CASE("infinitesimal contact transformations") {
  const ZooEntry e = zoo_example_3_6();
  const auto pts = sample_points(e.spec, 10, 1);
  const ContactTransformation killing = contact_transformation_check(e.spec, e.spec.vector_fields.at("V"), pts, 1e-8);
  CHECK(killing.strict);
  // ξ itself: £_ξ η = 0
  const ContactTransformation reeb = contact_transformation_check(e.spec, vector_spec(e.spec, {"0", "0", "1"}), pts, 1e-8);
  CHECK(reeb.strict);
  // z ∂z: £_V η = d(η(V)) = dz, so σ = 1
  const ContactTransformation scale = contact_transformation_check(e.spec, vector_spec(e.spec, {"0", "0", "z"}), pts, 1e-8);
  CHECK(scale.conformal);
  CHECK_FALSE(scale.strict);
  CHECK(scale.sigma_min == doctest::Approx(1.0));
  CHECK(scale.sigma_max == doctest::Approx(1.0));
  // x ∂z: £_V η = dx is not a multiple of η
  const ContactTransformation none = contact_transformation_check(e.spec, vector_spec(e.spec, {"0", "0", "x"}), pts, 1e-8);
  CHECK_FALSE(none.conformal);
}

TEST_CASE("curvature identities hold on every zoo entry") {
  for (const auto& name : zoo_names()) {
    const ZooEntry e = zoo_entry(name);
    Report r;
    check_curvature_identities(e.spec, sample_points(e.spec, 5, 1), r);
    INFO(name);
    CHECK(r.passed());
  }
}
