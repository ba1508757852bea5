#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace testing;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::argument;
}

double max_abs_diff(const ComplexJetVector& a, const ComplexJetVector& b) {
  REQUIRE(a.dim() == b.dim());
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t k = 0; k < a[i].re.coeffs().size(); ++k) {
      m = std::max(m, std::abs(a[i].re.coeffs()[k] - b[i].re.coeffs()[k]));
      m = std::max(m, std::abs(a[i].im.coeffs()[k] - b[i].im.coeffs()[k]));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("kind names round-trip") {
  for (auto k : {ImmersionKind::totally_geodesic, ImmersionKind::flat_torus, ImmersionKind::product_eq381,
                 ImmersionKind::warped_product, ImmersionKind::calabi_point_product,
                 ImmersionKind::real_sphere, ImmersionKind::point}) {
    const auto back = parse_kind(to_string(k));
    REQUIRE(back);
    CHECK(*back == k);
  }
  CHECK_FALSE(parse_kind("klein_bottle"));
  CHECK(catalog_schemas().size() == 7);
}

TEST_CASE("sphere charts") {
  for (int m : {1, 2, 3}) {
    CHECK(sphere_chart_count(m) == 2 * (m + 1));
    std::vector<double> y(m, 0.0);
    y[0] = 0.31;
    if (m > 1) y[1] = -0.42;
    for (int chart = 0; chart < sphere_chart_count(m); ++chart) {
      const auto s = sphere_chart_point(m, chart, y);
      double norm = 0.0;
      for (double v : s) norm += v * v;
      CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
      const auto back = sphere_chart_coords(m, chart, s);
      for (int i = 0; i < m; ++i) CHECK(std::abs(back[i] - y[i]) < 1e-14);
    }
  }
}

TEST_CASE("sampling is deterministic and stays in the domain") {
  const auto im = make_product_immersion(2, 2);
  for (std::uint64_t i = 0; i < 50; ++i) {
    StreamRng a(3, i), b(3, i);
    const auto p = im->sample_point(a);
    CHECK(p == im->sample_point(b));
    CHECK_NOTHROW(im->check_domain(p));
    for (int k = 0; k < 2; ++k) CHECK((p[k] >= 0.0 && p[k] < 2.0 * std::numbers::pi));
    CHECK(p[2] * p[2] + p[3] * p[3] < kChartRadius * kChartRadius);
  }
  CHECK(code_of([&] { im->check_domain(std::vector<double>{0.0, 0.0, 0.95, 0.0}); }) ==
        ErrorCode::argument);
  CHECK(code_of([&] { im->check_domain(std::vector<double>{0.0, 0.0, 0.1}); }) == ErrorCode::argument);
}

TEST_CASE("lifts are horizontal and unit") {
  std::vector<ImmersionPtr> all = {make_flat_torus(3), make_product_immersion(1, 3), make_real_sphere(2, 3),
                                   calabi_point_product(make_real_sphere(2)),
                                   conjugated_immersion(make_product_immersion(2, 1))};
  for (const auto& im : all) {
    StreamRng rng(5, 0);
    const LiftSample s = sample_lift(*im, im->sample_point(rng), 1);
    CHECK(ambient_structure_residuals(s, frame_and_metric(s)).max() < 1e-14);
  }
  const auto tg = make_totally_geodesic(2);
  CHECK(tg->ambient() == AmbientKind::flat_cn);
}

TEST_CASE("Calabi product equals the warped product with a point along its Legendre curve") {
  for (int m : {1, 2, 3}) {
    const auto sphere = make_real_sphere(m);
    const auto calabi = calabi_point_product(sphere);
    const int n = m + 1;
    // phases 1/(n+1) and -n/(n+1) need a = sqrt(n)/(n+1)
    const double r1 = std::sqrt(n / (n + 1.0)), r2 = std::sqrt(1.0 / (n + 1.0));
    const auto warped =
        warped_product(sphere, make_point(), make_legendre_curve({r1, r2, std::sqrt(double(n)) / (n + 1.0)}));
    REQUIRE(warped->dimension() == calabi->dimension());
    StreamRng rng(8, m);
    const auto p = calabi->sample_point(rng);
    CHECK(max_abs_diff(sample_lift(*calabi, p, 4).lift, sample_lift(*warped, p, 4).lift) < 1e-14);
  }
}

TEST_CASE("Legendre curve phases") {
  const LegendreCurveSpec c{0.6, 0.8, 1.5};
  const PhaseCurveSpec p = c.phases();
  // horizontality: r1^2 w1 + r2^2 w2 = 0
  CHECK(std::abs(c.r1 * c.r1 * p.omega1 + c.r2 * c.r2 * p.omega2) < 1e-15);
  const CurveConstants k = minimal_warping_constants(2, 3);
  CHECK(k.r1 * k.r1 == doctest::Approx(3.0 / 7.0));
  CHECK(k.r2 * k.r2 == doctest::Approx(4.0 / 7.0));
}

TEST_CASE("spec validation") {
  ImmersionSpec s;
  s.kind = ImmersionKind::product_eq381;
  s.n1 = 0;
  s.n2 = 2;
  CHECK(code_of([&] { s.validate(); }) == ErrorCode::validation);
  s.n1 = 1;
  CHECK_NOTHROW(s.validate());
  CHECK(s.dimension() == 3);
  REQUIRE(s.factor_split());
  CHECK(s.factor_split()->n1 == 1);
  CHECK(s.expects_parallel());
  s.sign_choices = {1, -1};
  CHECK(code_of([&] { s.validate(); }) == ErrorCode::validation);
  s.sign_choices = {1};
  CHECK_NOTHROW(s.validate());
  s.sphere_chart = 6;
  CHECK(code_of([&] { s.validate(); }) == ErrorCode::validation);

  ImmersionSpec w;
  w.kind = ImmersionKind::warped_product;
  ImmersionSpec circle;
  circle.kind = ImmersionKind::real_sphere;
  circle.n = 1;
  w.factors = {circle, circle};
  w.constants = CurveConstants{0.5, 0.5, 1.0};
  CHECK(code_of([&] { w.validate(); }) == ErrorCode::validation);
  w.constants = minimal_warping_constants(1, 1);
  CHECK_NOTHROW(w.validate());
  CHECK_FALSE(w.expects_parallel());
  CHECK(w.expects_minimal());
  w.constants->r1 = 0.6;
  w.constants->r2 = 0.8;
  CHECK_FALSE(w.expects_minimal());

  ImmersionSpec t;
  t.kind = ImmersionKind::totally_geodesic;
  t.n = 2;
  t.c_tilde = 1.0;
  CHECK(code_of([&] { t.validate(); }) == ErrorCode::validation);
}

TEST_CASE("uniform sign choices give a congruent immersion") {
  ImmersionSpec s;
  s.kind = ImmersionKind::product_eq381;
  s.n1 = 2;
  s.n2 = 1;
  const auto minus = make_immersion(s);
  s.sign_choices = {1, 1};
  const auto plus = make_immersion(s);
  StreamRng rng(1, 1);
  const auto p = minus->sample_point(rng);
  const Pipeline a = run_pipeline(*minus, p, 3), b = run_pipeline(*plus, p, 3);
  CHECK((a.frame.metric - b.frame.metric).cwiseAbs().maxCoeff() < 1e-14);
  const SectionalProfile pa = sectional_curvature_profile(a.curv, a.frame, {2, 1}, 1);
  const SectionalProfile pb = sectional_curvature_profile(b.curv, b.frame, {2, 1}, 1);
  CHECK(std::abs(pa.c2_estimate - pb.c2_estimate) < 1e-12);
}
