#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace testing;

namespace {

std::vector<double> point_of(const Immersion& im, std::uint64_t stream) {
  StreamRng rng(99, stream);
  return im.sample_point(rng);
}

}  // namespace

TEST_CASE("torus metric matches the hand computation") {
  const auto torus = make_flat_torus(2);
  const LiftSample s = sample_lift(*torus, {0.3, 1.1}, 2);
  const FrameData f = frame_and_metric(s);
  // |d_1 psi|^2 = 2/3, <d_1 psi, d_2 psi> = 1/3 at every point
  CHECK(std::abs(f.metric(0, 0) - 2.0 / 3.0) < 1e-15);
  CHECK(std::abs(f.metric(1, 1) - 2.0 / 3.0) < 1e-15);
  CHECK(std::abs(f.metric(0, 1) - 1.0 / 3.0) < 1e-15);
  const Matrix back = f.coord_in_frame.transpose() * f.coord_in_frame;
  CHECK((back - f.metric).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("metric agrees with finite differences of the lift") {
  for (const auto& im : {make_product_immersion(1, 2), make_product_immersion(2, 2),
                         calabi_point_product(make_real_sphere(2))}) {
    const auto x = point_of(*im, 1);
    const FrameData f = frame_and_metric(sample_lift(*im, x, 1));
    CHECK((f.metric - fd_metric(*im, x)).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("metric jets and Christoffel symbols agree with finite differences") {
  const auto im = make_product_immersion(1, 2);
  const auto x = point_of(*im, 2);
  const int n = 3;
  const Pipeline p = run_pipeline(*im, x, 3);
  const double h = 1e-5;
  std::vector<Matrix> dg(n);
  for (int k = 0; k < n; ++k) {
    auto xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    dg[k] = (frame_and_metric(sample_lift(*im, xp, 1)).metric -
             frame_and_metric(sample_lift(*im, xm, 1)).metric) / (2 * h);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(std::abs(p.curv.metric_jets[i * n + j].first(k) - dg[k](i, j)) < 1e-6);
  }
  const Matrix ginv = p.frame.metric.inverse();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double g = 0.0;
        for (int l = 0; l < n; ++l) g += 0.5 * ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        CHECK(std::abs(p.curv.christoffels({k, i, j}) - g) < 1e-6);
      }
}

TEST_CASE("flat torus is flat with parallel cubic form") {
  for (int n : {1, 2, 3}) {
    const auto im = make_flat_torus(n);
    const Pipeline p = run_pipeline(*im, point_of(*im, 3));
    CHECK(p.curv.riemann.max_abs() < 1e-12);
    CHECK(p.dh.nabla_h.max_abs() < 1e-12);
    CHECK(p.shape.minimality_residual() < 1e-12);
    CHECK(ambient_structure_residuals(p.sample, p.frame).max() < 1e-14);
    const StructuralResiduals r = structural_residuals(p.shape, p.curv, p.dh, 1.0);
    CHECK(r.gauss < 1e-12);
    CHECK(r.codazzi < 1e-12);
    REQUIRE(r.ricci_identity);
    CHECK(*r.ricci_identity < 1e-12);
  }
}

TEST_CASE("real sphere has unit sectional curvature and vanishing cubic form") {
  const auto im = make_real_sphere(3, 2);
  const Pipeline p = run_pipeline(*im, point_of(*im, 4));
  CHECK(p.shape.cubic.max_abs() < 1e-14);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          const double expect = (a == d) * (b == c) - (a == c) * (b == d);
          CHECK(std::abs(p.curv.riemann({a, b, c, d}) - expect) < 1e-10);
        }
  Vector u(3), v(3);
  u << 1, 2, 0.5;
  v << -0.3, 0.1, 1;
  CHECK(p.curv.sectional(u, v) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("products satisfy every structure equation") {
  for (auto [n1, n2] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}, {3, 2}}) {
    const auto im = make_product_immersion(n1, n2);
    const Pipeline p = run_pipeline(*im, point_of(*im, 5));
    CHECK(ambient_structure_residuals(p.sample, p.frame).max() < 1e-12);
    CHECK(p.shape.asymmetry < 1e-12);
    CHECK(p.shape.minimality_residual() < 1e-12);
    CHECK(p.dh.nabla_h.max_abs() < 1e-10);
    CHECK(p.curv.symmetry_residual() < 1e-10);
    CHECK(p.curv.bianchi_residual() < 1e-10);
    const StructuralResiduals r = structural_residuals(p.shape, p.curv, p.dh, 1.0);
    CHECK(r.gauss < 1e-10);
    CHECK(r.codazzi < 1e-10);
    CHECK(r.ricci_eq < 1e-10);
    CHECK(r.tsinghua < 1e-10);
    CHECK(*r.ricci_identity < 1e-9);
  }
}

TEST_CASE("sectional curvature profile of a product") {
  const auto im = make_product_immersion(2, 2);
  const Pipeline p = run_pipeline(*im, point_of(*im, 6), 3);
  const SectionalProfile prof = sectional_curvature_profile(p.curv, p.frame, {2, 2}, 5);
  CHECK(std::abs(prof.c1_estimate) < 1e-10);
  CHECK(std::abs(prof.c2_estimate - 5.0 / 3.0) < 1e-10);
  CHECK(std::abs(prof.mixed_estimate) < 1e-10);
  CHECK(prof.max_deviation < 1e-10);
  CHECK(prof.c1_planes > 0);
  CHECK(prof.mixed_planes > 0);
  const auto [b1, b2] = factor_bases(p.frame, {2, 2});
  CHECK((b1 * b2.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("minimal warped product satisfies the structure equations") {
  const auto circle = make_real_sphere(1);
  const CurveConstants k = minimal_warping_constants(1, 1);
  const auto im = warped_product(circle, circle, make_legendre_curve({k.r1, k.r2, k.a}));
  const Pipeline p = run_pipeline(*im, point_of(*im, 7));
  CHECK(p.shape.minimality_residual() < 1e-12);
  CHECK(ambient_structure_residuals(p.sample, p.frame).max() < 1e-12);
  const StructuralResiduals r = structural_residuals(p.shape, p.curv, p.dh, 1.0);
  CHECK(r.gauss < 1e-10);
  CHECK(r.codazzi < 1e-10);
}

TEST_CASE("negative controls") {
  SUBCASE("non-Legendre warped product is not Lagrangian") {
    const auto circle = make_real_sphere(1);
    const double r = std::sqrt(0.5);
    const auto im = warped_product(circle, circle, make_phase_curve({r, r, 1.0, 1.0}));
    const Pipeline p = run_pipeline(*im, point_of(*im, 8), 3);
    const AmbientResiduals a = ambient_structure_residuals(p.sample, p.frame);
    CHECK(std::max(a.lagrangian, a.horizontality) >= 1e-3);
  }
  SUBCASE("scaled lift leaves the unit sphere") {
    const auto im = scaled_immersion(make_product_immersion(1, 2), 1.1);
    const LiftSample s = sample_lift(*im, point_of(*im, 9), 1);
    const AmbientResiduals a = ambient_structure_residuals(s, frame_and_metric(s));
    CHECK(a.unit_norm == doctest::Approx(0.1).epsilon(1e-12));
  }
  SUBCASE("perturbed cubic form breaks the Gauss equation") {
    const auto im = make_product_immersion(1, 2);
    const Pipeline p = run_pipeline(*im, point_of(*im, 10), 3);
    CHECK(gauss_residual(p.shape, p.curv.riemann, 1.0) < 1e-12);
    for (int entry : {1, 5, 14, 26}) {
      ShapeTensor bent = p.shape;
      bent.cubic.at(entry) += 1e-3;
      CHECK(gauss_residual(bent, p.curv.riemann, 1.0) >= 1e-4);
    }
    // C_aaa only reaches R_aaaa, which vanishes identically
    ShapeTensor diag = p.shape;
    diag.cubic({1, 1, 1}) += 1e-3;
    CHECK(gauss_residual(diag, p.curv.riemann, 1.0) < 1e-12);
  }
}

TEST_CASE("degenerate chart point is rejected") {
  const auto im = make_real_sphere(2);
  const double r = 1.0 - 1e-12;
  const LiftSample s = sample_lift(*im, {r, 0.0}, 2);
  try {
    (void)frame_and_metric(s);
    FAIL("expected degenerate_parametrization");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_parametrization);
  }
}

TEST_CASE("checked shape tensor on catalog lifts") {
  const auto im = make_product_immersion(2, 3);
  const LiftSample s = sample_lift(*im, point_of(*im, 11), 2);
  const FrameData f = frame_and_metric(s);
  const ShapeTensor c = shape_tensor(s, f);
  CHECK(c.symmetry_residual() < 1e-14);
  CHECK(c.asymmetry < 1e-12);
}

TEST_CASE("order requirements") {
  const auto im = make_flat_torus(2);
  const LiftSample s = sample_lift(*im, {0.1, 0.2}, 2);
  CHECK_THROWS_AS(intrinsic_curvature(s, frame_and_metric(s)), Error);
}
