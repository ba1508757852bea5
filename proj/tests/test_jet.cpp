#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "minlag/error.hpp"
#include "minlag/jet.hpp"

using namespace minlag;

namespace {

template <class F>
double fd1(F f, double x, double y, int var, double h = 1e-5) {
  if (var == 0) return (f(x + h, y) - f(x - h, y)) / (2 * h);
  return (f(x, y + h) - f(x, y - h)) / (2 * h);
}

template <class F>
double fd2(F f, double x, double y, int a, int b, double h = 1e-4) {
  auto g = [&](double xx, double yy) { return fd1(f, xx, yy, b, h); };
  return fd1(g, x, y, a, h);
}

// Composite test function, written once for doubles and once for jets.
double g_val(double x, double y) {
  return std::sqrt(1.0 + x * x * y) / (2.0 + std::cos(x * y)) * std::exp(-y) + std::sin(x) * y;
}

MultiJet g_jet(const MultiJet& x, const MultiJet& y) {
  return sqrt(1.0 + x * x * y) / (2.0 + cos(x * y)) * exp(-y) + sin(x) * y;
}

}  // namespace

TEST_CASE("seed and constant jets") {
  const MultiJet x = MultiJet::seed(0, 0.5, 2, 3);
  CHECK(x.value() == doctest::Approx(0.5));
  CHECK(x.first(0) == 1.0);
  CHECK(x.first(1) == 0.0);
  const MultiJet c = MultiJet::constant(2.0, 2, 3);
  CHECK(c.value() == 2.0);
  CHECK(c.first(0) == 0.0);
  CHECK(x.layout().size() == 10);
}

TEST_CASE("partials of exp(x) sin(y) match closed form through order 4") {
  const double x0 = 0.3, y0 = -0.7;
  const MultiJet x = MultiJet::seed(0, x0, 2, 4);
  const MultiJet y = MultiJet::seed(1, y0, 2, 4);
  const MultiJet f = exp(x) * sin(y);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) {
      const int alpha[2] = {a, b};
      const double dy[4] = {std::sin(y0), std::cos(y0), -std::sin(y0), -std::cos(y0)};
      CHECK(f.partial(alpha) == doctest::Approx(std::exp(x0) * dy[b % 4]).epsilon(1e-13));
    }
}

TEST_CASE("composite function agrees with finite differences") {
  const double x0 = 0.4, y0 = 0.9;
  const MultiJet f = g_jet(MultiJet::seed(0, x0, 2, 4), MultiJet::seed(1, y0, 2, 4));
  CHECK(std::abs(f.value() - g_val(x0, y0)) < 1e-14);
  for (int v = 0; v < 2; ++v) CHECK(std::abs(f.first(v) - fd1(g_val, x0, y0, v)) < 1e-8);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      int alpha[2] = {0, 0};
      alpha[a]++;
      alpha[b]++;
      CHECK(std::abs(f.partial(alpha) - fd2(g_val, x0, y0, a, b)) < 1e-6);
    }
}

TEST_CASE("division and reciprocal invert multiplication") {
  const MultiJet x = MultiJet::seed(0, 1.3, 3, 4);
  const MultiJet y = MultiJet::seed(2, -0.4, 3, 4);
  const MultiJet p = 2.0 + x * y + sin(y);
  const MultiJet q = (p / (1.5 + cos(x))) * (1.5 + cos(x));
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) CHECK(std::abs(q.coeffs()[i] - p.coeffs()[i]) < 1e-13);
  const MultiJet one = p * recip(p);
  CHECK(one.value() == doctest::Approx(1.0));
  for (std::size_t i = 1; i < one.coeffs().size(); ++i) CHECK(std::abs(one.coeffs()[i]) < 1e-13);
  const MultiJet s = sqrt(p);
  const MultiJet sq = s * s;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) CHECK(std::abs(sq.coeffs()[i] - p.coeffs()[i]) < 1e-13);
}

TEST_CASE("derivative lowers the order and commutes") {
  const MultiJet x = MultiJet::seed(0, 0.2, 2, 4);
  const MultiJet y = MultiJet::seed(1, 0.1, 2, 4);
  const MultiJet f = exp(x * y) * cos(x);
  const MultiJet dxy = f.derivative(0).derivative(1);
  const MultiJet dyx = f.derivative(1).derivative(0);
  CHECK(dxy.order() == 2);
  for (std::size_t i = 0; i < dxy.coeffs().size(); ++i) CHECK(std::abs(dxy.coeffs()[i] - dyx.coeffs()[i]) < 1e-14);
  const int alpha[2] = {1, 1};
  CHECK(dxy.value() == doctest::Approx(f.partial(alpha)));
}

TEST_CASE("truncation keeps the coefficient prefix") {
  const MultiJet x = MultiJet::seed(0, 0.7, 2, 4);
  const MultiJet f = sin(x) * exp(MultiJet::seed(1, 0.2, 2, 4));
  const MultiJet t = f.truncated(2);
  CHECK(t.order() == 2);
  for (std::size_t i = 0; i < t.coeffs().size(); ++i) CHECK(t.coeffs()[i] == f.coeffs()[i]);
  CHECK(t.layout().size() == f.layout().prefix_size(2));
}

TEST_CASE("complex jets") {
  const MultiJet t = MultiJet::seed(0, 0.6, 1, 3);
  const ComplexJet z = exp_i_angle(t);
  CHECK(std::abs(z.value() - std::polar(1.0, 0.6)) < 1e-15);
  const ComplexJet dz = z.derivative(0);
  CHECK(std::abs(dz.value() - std::complex<double>(0, 1) * std::polar(1.0, 0.6)) < 1e-15);
  const MultiJet n = real_inner(z, z);
  CHECK(n.value() == doctest::Approx(1.0));
  CHECK(std::abs(n.first(0)) < 1e-15);
  ComplexJetVector v({z, z.times_i()});
  CHECK(v.dim() == 2);
  CHECK(std::abs(v.apply_j().value()[0] - std::complex<double>(0, 1) * z.value()) < 1e-15);
}

TEST_CASE("errors") {
  const MultiJet a = MultiJet::seed(0, 0.0, 2, 3);
  const MultiJet b = MultiJet::seed(0, 0.0, 2, 2);
  CHECK_THROWS_AS(a + b, Error);
  CHECK_THROWS_AS(MultiJet(2, 5), Error);
  CHECK_THROWS_AS(MultiJet::seed(3, 0.0, 2, 2), Error);
  try {
    (void)MultiJet::constant(1.0, 1, 0).derivative(0);
    FAIL("expected a truncation error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::truncation);
  }
  const int alpha[2] = {3, 1};
  try {
    (void)b.coeff(alpha);
    FAIL("expected a truncation error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::truncation);
  }
}
