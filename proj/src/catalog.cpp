#include "minlag/catalog.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "minlag/error.hpp"

namespace minlag {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ComplexJet real_entry(const MultiJet& x) {
  MultiJet zero(x.num_vars(), x.order());
  return {x, zero};
}

void require_coords(std::span<const MultiJet> coords, int dim, const char* what) {
  if (static_cast<int>(coords.size()) != dim)
    fail(ErrorCode::argument, std::string(what) + " expects " + std::to_string(dim) +
                                  " coordinates, got " + std::to_string(coords.size()));
}

std::vector<double> ball_sample(int dim, StreamRng& rng) {
  std::vector<double> s(dim);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& v : s) {
      v = rng.gaussian();
      norm2 += v * v;
    }
  } while (norm2 == 0.0);
  const double radius = kChartRadius * std::pow(rng.uniform(), 1.0 / dim);
  const double scale = radius / std::sqrt(norm2);
  for (double& v : s) v *= scale;
  return s;
}

struct ChartAxes {
  int center = 0;
  double sign = 1.0;
  std::vector<int> tangent;
};

ChartAxes chart_axes(int m, int chart) {
  if (chart < 0 || chart >= sphere_chart_count(m))
    fail(ErrorCode::argument, "sphere chart id " + std::to_string(chart) + " out of range");
  ChartAxes ax;
  if (chart < 2) {
    ax.center = m;
    ax.sign = chart == 0 ? 1.0 : -1.0;
  } else {
    ax.center = (chart - 2) / 2;
    ax.sign = chart % 2 == 0 ? 1.0 : -1.0;
  }
  for (int k = 0; k <= m; ++k)
    if (k != ax.center) ax.tangent.push_back(k);
  return ax;
}

void check_ball(std::span<const double> s) {
  double r2 = 0.0;
  for (double v : s) r2 += v * v;
  if (std::sqrt(r2) > kChartRadius)
    fail(ErrorCode::argument, "sphere chart coordinates outside the validity radius");
}

// Unit-sphere point as real jets, optionally rotated.
std::vector<MultiJet> sphere_jets(int m, int chart, const std::optional<Matrix>& rotation,
                                  std::span<const MultiJet> s, JetShape shape) {
  const ChartAxes ax = chart_axes(m, chart);
  MultiJet r2(shape.num_vars, shape.order);
  for (const auto& c : s) r2.add_product(c, c);
  std::vector<MultiJet> y(m + 1, MultiJet(shape.num_vars, shape.order));
  y[ax.center] = sqrt(1.0 - r2) * ax.sign;
  for (int j = 0; j < m; ++j) y[ax.tangent[j]] = s[j];
  if (!rotation) return y;
  std::vector<MultiJet> out(m + 1, MultiJet(shape.num_vars, shape.order));
  for (int i = 0; i <= m; ++i)
    for (int k = 0; k <= m; ++k) out[i] += y[k] * (*rotation)(i, k);
  return out;
}

void check_rotation(const std::optional<Matrix>& q, int m) {
  if (!q) return;
  if (q->rows() != m + 1 || q->cols() != m + 1)
    fail(ErrorCode::argument, "sphere rotation has the wrong size");
  if ((q->transpose() * *q - Matrix::Identity(m + 1, m + 1)).cwiseAbs().maxCoeff() > 1e-12)
    fail(ErrorCode::argument, "sphere rotation is not orthogonal");
}

class TotallyGeodesic final : public Immersion {
 public:
  explicit TotallyGeodesic(int n) : n_(n) {}
  int dimension() const override { return n_; }
  int ambient_dim() const override { return n_; }
  AmbientKind ambient() const override { return AmbientKind::flat_cn; }
  std::string describe() const override {
    return "totally geodesic R^" + std::to_string(n_) + " in C^" + std::to_string(n_);
  }
  ComplexJetVector lift_on(std::span<const MultiJet> x, JetShape) const override {
    require_coords(x, n_, "totally geodesic");
    std::vector<ComplexJet> e;
    for (const auto& xi : x) e.push_back(real_entry(xi));
    return ComplexJetVector(std::move(e));
  }
  std::vector<double> sample_point(StreamRng& rng) const override {
    std::vector<double> p(n_);
    for (double& v : p) v = rng.uniform(-1.0, 1.0);
    return p;
  }
  void check_inside(std::span<const double>) const override {}

 private:
  int n_;
};

class FlatTorus final : public Immersion {
 public:
  explicit FlatTorus(int n) : n_(n) {}
  int dimension() const override { return n_; }
  int ambient_dim() const override { return n_ + 1; }
  std::string describe() const override {
    return "flat Lagrangian torus in CP^" + std::to_string(n_);
  }
  ComplexJetVector lift_on(std::span<const MultiJet> u, JetShape shape) const override {
    require_coords(u, n_, "flat torus");
    const double pref = 1.0 / std::sqrt(n_ + 1.0);
    std::vector<ComplexJet> e;
    MultiJet sum(shape.num_vars, shape.order);
    for (const auto& ui : u) {
      e.push_back(exp_i_angle(ui) * pref);
      sum += ui;
    }
    e.push_back(exp_i_angle(-sum) * pref);
    return ComplexJetVector(std::move(e));
  }
  std::vector<double> sample_point(StreamRng& rng) const override {
    std::vector<double> p(n_);
    for (double& v : p) v = rng.uniform(0.0, kTwoPi);
    return p;
  }
  void check_inside(std::span<const double>) const override {}

 private:
  int n_;
};

class PointLift final : public Immersion {
 public:
  int dimension() const override { return 0; }
  int ambient_dim() const override { return 1; }
  std::string describe() const override { return "point (1) in C"; }
  ComplexJetVector lift_on(std::span<const MultiJet>, JetShape shape) const override {
    return ComplexJetVector({ComplexJet::constant(1.0, shape.num_vars, shape.order)});
  }
  std::vector<double> sample_point(StreamRng&) const override { return {}; }
  void check_inside(std::span<const double>) const override {}
};

class RealSphere final : public Immersion {
 public:
  RealSphere(int m, int chart, std::optional<Matrix> rotation)
      : m_(m), chart_(chart), rotation_(std::move(rotation)) {
    chart_axes(m_, chart_);
    check_rotation(rotation_, m_);
  }
  int dimension() const override { return m_; }
  int ambient_dim() const override { return m_ + 1; }
  std::string describe() const override {
    return "totally geodesic RP^" + std::to_string(m_) + " via the unit sphere S^" +
           std::to_string(m_);
  }
  ComplexJetVector lift_on(std::span<const MultiJet> s, JetShape shape) const override {
    require_coords(s, m_, "real sphere");
    std::vector<ComplexJet> e;
    for (auto& y : sphere_jets(m_, chart_, rotation_, s, shape)) e.push_back(real_entry(y));
    return ComplexJetVector(std::move(e));
  }
  std::vector<double> sample_point(StreamRng& rng) const override {
    return ball_sample(m_, rng);
  }
  void check_inside(std::span<const double> p) const override { check_ball(p); }

 private:
  int m_;
  int chart_;
  std::optional<Matrix> rotation_;
};

class ProductImmersion final : public Immersion {
 public:
  ProductImmersion(int n1, int n2, int chart, std::optional<Matrix> rotation)
      : n1_(n1), n2_(n2), chart_(chart), rotation_(std::move(rotation)) {
    if (n1 < 1 || n2 < 1) fail(ErrorCode::argument, "product immersion needs n1, n2 >= 1");
    chart_axes(n2_, chart_);
    check_rotation(rotation_, n2_);
  }
  int dimension() const override { return n1_ + n2_; }
  int ambient_dim() const override { return n1_ + n2_ + 1; }
  std::string describe() const override {
    std::ostringstream os;
    os << "product T^" << n1_ << " x S^" << n2_ << " in CP^" << n1_ + n2_;
    return os.str();
  }
  ComplexJetVector lift_on(std::span<const MultiJet> c, JetShape shape) const override {
    require_coords(c, n1_ + n2_, "product immersion");
    const double pref = 1.0 / std::sqrt(n1_ + n2_ + 1.0);
    std::vector<ComplexJet> e;
    MultiJet sum(shape.num_vars, shape.order);
    for (int i = 0; i < n1_; ++i) {
      e.push_back(exp_i_angle(c[i]) * pref);
      sum += c[i];
    }
    const ComplexJet phase =
        exp_i_angle(sum * (-1.0 / (n2_ + 1.0))) * (pref * std::sqrt(n2_ + 1.0));
    for (auto& y : sphere_jets(n2_, chart_, rotation_, c.subspan(n1_), shape))
      e.push_back(y * phase);
    return ComplexJetVector(std::move(e));
  }
  std::vector<double> sample_point(StreamRng& rng) const override {
    std::vector<double> p(n1_);
    for (double& v : p) v = rng.uniform(0.0, kTwoPi);
    const auto s = ball_sample(n2_, rng);
    p.insert(p.end(), s.begin(), s.end());
    return p;
  }
  void check_inside(std::span<const double> p) const override { check_ball(p.subspan(n1_)); }

 private:
  int n1_;
  int n2_;
  int chart_;
  std::optional<Matrix> rotation_;
};

class PhaseCurve final : public Immersion {
 public:
  explicit PhaseCurve(const PhaseCurveSpec& s) : s_(s) {
    if (!(s.r1 > 0.0) || !(s.r2 > 0.0))
      fail(ErrorCode::argument, "curve radii must be positive");
    if (std::abs(s.r1 * s.r1 + s.r2 * s.r2 - 1.0) > 1e-12)
      fail(ErrorCode::argument, "curve radii must satisfy r1^2 + r2^2 = 1");
  }
  int dimension() const override { return 1; }
  int ambient_dim() const override { return 2; }
  std::string describe() const override {
    std::ostringstream os;
    os.precision(6);
    os << "curve (" << s_.r1 << " e^{i " << s_.omega1 << " t}, " << s_.r2 << " e^{i "
       << s_.omega2 << " t})";
    return os.str();
  }
  ComplexJetVector lift_on(std::span<const MultiJet> t, JetShape) const override {
    require_coords(t, 1, "curve");
    return ComplexJetVector({exp_i_angle(t[0] * s_.omega1) * s_.r1,
                             exp_i_angle(t[0] * s_.omega2) * s_.r2});
  }
  std::vector<double> sample_point(StreamRng& rng) const override {
    return {rng.uniform(0.0, kTwoPi)};
  }
  void check_inside(std::span<const double>) const override {}

 private:
  PhaseCurveSpec s_;
};

// Horizontality and unit norm of a factor lift at a few seeded points.
void probe_factor(const Immersion& f, const char* which) {
  if (f.ambient() != AmbientKind::sphere_lift_cp)
    fail(ErrorCode::inconsistency, std::string(which) + " is not a unit-sphere lift");
  if (f.dimension() == 0) return;
  StreamRng rng(0x9a11, 0);
  for (int k = 0; k < 3; ++k) {
    const auto p = f.sample_point(rng);
    const LiftSample s = sample_lift(f, p, 1);
    const ComplexVector psi = s.lift.value();
    double worst = 0.0, norm2 = 0.0;
    for (auto z : psi) norm2 += std::norm(z);
    worst = std::abs(std::sqrt(norm2) - 1.0);
    for (int i = 0; i < f.dimension(); ++i) {
      MultiIndex a(f.dimension(), 0);
      a[i] = 1;
      const ComplexVector d = s.lift.partial(a);
      double h = 0.0;
      for (std::size_t j = 0; j < d.size(); ++j)
        h += (d[j] * std::conj(std::complex<double>(0.0, 1.0) * psi[j])).real();
      worst = std::max(worst, std::abs(h));
    }
    if (worst > 1e-8)
      fail(ErrorCode::inconsistency, std::string(which) + " is not a horizontal unit lift");
  }
}

class WarpedProduct final : public Immersion {
 public:
  WarpedProduct(ImmersionPtr l1, ImmersionPtr l2, ImmersionPtr curve)
      : l1_(std::move(l1)), l2_(std::move(l2)), curve_(std::move(curve)) {
    if (curve_->dimension() != 1 || curve_->ambient_dim() != 2)
      fail(ErrorCode::argument, "warping curve must be a curve in C^2");
    probe_factor(*l1_, "first factor");
    probe_factor(*l2_, "second factor");
  }
  int dimension() const override { return 1 + l1_->dimension() + l2_->dimension(); }
  int ambient_dim() const override { return l1_->ambient_dim() + l2_->ambient_dim(); }
  std::string describe() const override {
    return "warped product of [" + l1_->describe() + "] and [" + l2_->describe() +
           "] along " + curve_->describe();
  }
  ComplexJetVector lift_on(std::span<const MultiJet> c, JetShape shape) const override {
    require_coords(c, dimension(), "warped product");
    const int d1 = l1_->dimension();
    const ComplexJetVector g = curve_->lift_on(c.subspan(0, 1), shape);
    const ComplexJetVector p1 = l1_->lift_on(c.subspan(1, d1), shape);
    const ComplexJetVector p2 = l2_->lift_on(c.subspan(1 + d1), shape);
    std::vector<ComplexJet> e;
    for (const auto& z : p1.entries()) e.push_back(g[0] * z);
    for (const auto& z : p2.entries()) e.push_back(g[1] * z);
    return ComplexJetVector(std::move(e));
  }
  std::vector<double> sample_point(StreamRng& rng) const override {
    std::vector<double> p = curve_->sample_point(rng);
    const auto a = l1_->sample_point(rng);
    const auto b = l2_->sample_point(rng);
    p.insert(p.end(), a.begin(), a.end());
    p.insert(p.end(), b.begin(), b.end());
    return p;
  }
  void check_inside(std::span<const double> p) const override {
    const int d1 = l1_->dimension();
    l1_->check_domain(p.subspan(1, d1));
    l2_->check_domain(p.subspan(1 + d1));
  }

 private:
  ImmersionPtr l1_, l2_, curve_;
};

class CalabiPointProduct final : public Immersion {
 public:
  explicit CalabiPointProduct(ImmersionPtr l1) : l1_(std::move(l1)) {
    probe_factor(*l1_, "Calabi factor");
  }
  int dimension() const override { return 1 + l1_->dimension(); }
  int ambient_dim() const override { return l1_->ambient_dim() + 1; }
  std::string describe() const override {
    return "Calabi point product of [" + l1_->describe() + "]";
  }
  ComplexJetVector lift_on(std::span<const MultiJet> c, JetShape shape) const override {
    require_coords(c, dimension(), "Calabi point product");
    const double n = dimension();
    const ComplexJet g1 = exp_i_angle(c[0] * (1.0 / (n + 1.0))) * std::sqrt(n / (n + 1.0));
    const ComplexJet g2 = exp_i_angle(c[0] * (-n / (n + 1.0))) * std::sqrt(1.0 / (n + 1.0));
    std::vector<ComplexJet> e;
    const ComplexJetVector p1 = l1_->lift_on(c.subspan(1), shape);
    for (const auto& z : p1.entries()) e.push_back(g1 * z);
    e.push_back(g2);
    return ComplexJetVector(std::move(e));
  }
  std::vector<double> sample_point(StreamRng& rng) const override {
    std::vector<double> p{rng.uniform(0.0, kTwoPi)};
    const auto a = l1_->sample_point(rng);
    p.insert(p.end(), a.begin(), a.end());
    return p;
  }
  void check_inside(std::span<const double> p) const override {
    l1_->check_domain(p.subspan(1));
  }

 private:
  ImmersionPtr l1_;
};

class Wrapped final : public Immersion {
 public:
  Wrapped(ImmersionPtr inner, double factor, bool conjugate)
      : inner_(std::move(inner)), factor_(factor), conjugate_(conjugate) {}
  int dimension() const override { return inner_->dimension(); }
  int ambient_dim() const override { return inner_->ambient_dim(); }
  AmbientKind ambient() const override { return inner_->ambient(); }
  std::string describe() const override {
    std::string d = inner_->describe();
    if (conjugate_) d = "conjugate of " + d;
    if (factor_ != 1.0) {
      std::ostringstream os;
      os << factor_ << " x " << d;
      d = os.str();
    }
    return d;
  }
  ComplexJetVector lift_on(std::span<const MultiJet> c, JetShape shape) const override {
    ComplexJetVector v = inner_->lift_on(c, shape);
    if (conjugate_) v = v.conj();
    if (factor_ != 1.0) v = v.scaled(factor_);
    return v;
  }
  std::vector<double> sample_point(StreamRng& rng) const override {
    return inner_->sample_point(rng);
  }
  void check_inside(std::span<const double> p) const override { inner_->check_domain(p); }

 private:
  ImmersionPtr inner_;
  double factor_;
  bool conjugate_;
};

bool sphere_kind(ImmersionKind k) { return k != ImmersionKind::totally_geodesic; }

[[noreturn]] void invalid(const std::string& msg) { fail(ErrorCode::validation, msg); }

}  // namespace

void Immersion::check_domain(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != dimension())
    fail(ErrorCode::argument, "point has " + std::to_string(point.size()) + " coordinates, expected " +
                                  std::to_string(dimension()));
  check_inside(point);
}

ComplexJetVector Immersion::lift(std::span<const MultiJet> coords) const {
  JetShape shape;
  if (!coords.empty()) shape = {coords[0].num_vars(), coords[0].order()};
  return lift_on(coords, shape);
}

ComplexVector Immersion::evaluate(std::span<const double> point) const {
  check_domain(point);
  std::vector<double> p(point.begin(), point.end());
  const int n = static_cast<int>(p.size());
  std::vector<MultiJet> coords;
  for (int i = 0; i < n; ++i) coords.push_back(MultiJet::seed(i, p[i], n, 1));
  return lift_on(coords, {n, 1}).value();
}

int sphere_chart_count(int m) { return 2 * (m + 1); }

std::vector<double> sphere_chart_point(int m, int chart, std::span<const double> s) {
  const ChartAxes ax = chart_axes(m, chart);
  if (static_cast<int>(s.size()) != m) fail(ErrorCode::argument, "chart coordinate count");
  check_ball(s);
  double r2 = 0.0;
  for (double v : s) r2 += v * v;
  std::vector<double> y(m + 1);
  y[ax.center] = ax.sign * std::sqrt(1.0 - r2);
  for (int j = 0; j < m; ++j) y[ax.tangent[j]] = s[j];
  return y;
}

std::vector<double> sphere_chart_coords(int m, int chart, std::span<const double> y) {
  const ChartAxes ax = chart_axes(m, chart);
  if (static_cast<int>(y.size()) != m + 1) fail(ErrorCode::argument, "sphere point size");
  if (ax.sign * y[ax.center] <= 0.0)
    fail(ErrorCode::argument, "point is not covered by the chart");
  std::vector<double> s(m);
  for (int j = 0; j < m; ++j) s[j] = y[ax.tangent[j]];
  check_ball(s);
  return s;
}

PhaseCurveSpec LegendreCurveSpec::phases() const {
  return {r1, r2, r2 / r1 * a, -r1 / r2 * a};
}

ImmersionPtr make_totally_geodesic(int n) {
  if (n < 1) fail(ErrorCode::argument, "totally geodesic immersion needs n >= 1");
  return std::make_shared<TotallyGeodesic>(n);
}

ImmersionPtr make_flat_torus(int n) {
  if (n < 1) fail(ErrorCode::argument, "flat torus needs n >= 1");
  return std::make_shared<FlatTorus>(n);
}

ImmersionPtr make_point() { return std::make_shared<PointLift>(); }

ImmersionPtr make_real_sphere(int m, int chart, std::optional<Matrix> rotation) {
  if (m < 1) fail(ErrorCode::argument, "real sphere needs dimension >= 1");
  return std::make_shared<RealSphere>(m, chart, std::move(rotation));
}

ImmersionPtr make_product_immersion(int n1, int n2, int chart,
                                    std::optional<Matrix> sphere_rotation) {
  return std::make_shared<ProductImmersion>(n1, n2, chart, std::move(sphere_rotation));
}

ImmersionPtr make_phase_curve(const PhaseCurveSpec& spec) {
  return std::make_shared<PhaseCurve>(spec);
}

ImmersionPtr make_legendre_curve(const LegendreCurveSpec& spec) {
  if (!(spec.a > 0.0)) fail(ErrorCode::argument, "Legendre constant a must be positive");
  if (!(spec.r1 > 0.0) || !(spec.r2 > 0.0))
    fail(ErrorCode::argument, "Legendre radii must be positive");
  if (std::abs(spec.r1 * spec.r1 + spec.r2 * spec.r2 - 1.0) > 1e-12)
    fail(ErrorCode::argument, "Legendre radii must satisfy r1^2 + r2^2 = 1");
  return make_phase_curve(spec.phases());
}

ImmersionPtr warped_product(ImmersionPtr lift1, ImmersionPtr lift2, ImmersionPtr curve) {
  return std::make_shared<WarpedProduct>(std::move(lift1), std::move(lift2), std::move(curve));
}

ImmersionPtr calabi_point_product(ImmersionPtr lift1) {
  return std::make_shared<CalabiPointProduct>(std::move(lift1));
}

ImmersionPtr scaled_immersion(ImmersionPtr inner, double factor) {
  return std::make_shared<Wrapped>(std::move(inner), factor, false);
}

ImmersionPtr conjugated_immersion(ImmersionPtr inner) {
  return std::make_shared<Wrapped>(std::move(inner), 1.0, true);
}

const char* to_string(ImmersionKind kind) {
  switch (kind) {
    case ImmersionKind::totally_geodesic: return "totally_geodesic";
    case ImmersionKind::flat_torus: return "flat_torus";
    case ImmersionKind::product_eq381: return "product_eq381";
    case ImmersionKind::warped_product: return "warped_product";
    case ImmersionKind::calabi_point_product: return "calabi_point_product";
    case ImmersionKind::real_sphere: return "real_sphere";
    case ImmersionKind::point: return "point";
  }
  return "unknown";
}

std::optional<ImmersionKind> parse_kind(const std::string& name) {
  for (auto k : {ImmersionKind::totally_geodesic, ImmersionKind::flat_torus,
                 ImmersionKind::product_eq381, ImmersionKind::warped_product,
                 ImmersionKind::calabi_point_product, ImmersionKind::real_sphere,
                 ImmersionKind::point})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

int ImmersionSpec::dimension() const {
  switch (kind) {
    case ImmersionKind::totally_geodesic:
    case ImmersionKind::flat_torus:
    case ImmersionKind::real_sphere: return n;
    case ImmersionKind::product_eq381: return n1 + n2;
    case ImmersionKind::point: return 0;
    case ImmersionKind::calabi_point_product: return 1 + factors.at(0).dimension();
    case ImmersionKind::warped_product:
      return 1 + factors.at(0).dimension() + factors.at(1).dimension();
  }
  return 0;
}

void ImmersionSpec::validate() const {
  auto need_curved = [&] {
    if (c_tilde != 1.0) invalid(std::string(to_string(kind)) + " requires c_tilde = 1");
  };
  std::size_t stages = 0;
  switch (kind) {
    case ImmersionKind::totally_geodesic:
      if (n < 1) invalid("totally_geodesic requires n >= 1");
      if (c_tilde != 0.0) invalid("totally_geodesic requires c_tilde = 0");
      break;
    case ImmersionKind::flat_torus:
      if (n < 1) invalid("flat_torus requires n >= 1");
      need_curved();
      stages = n;
      break;
    case ImmersionKind::product_eq381:
      if (n1 < 1) invalid("product_eq381 requires n1 >= 1");
      if (n2 < 1) invalid("product_eq381 requires n2 >= 1");
      if (n != 0 && n != n1 + n2) invalid("product_eq381: n must equal n1 + n2");
      need_curved();
      if (sphere_chart < 0 || sphere_chart >= sphere_chart_count(n2))
        invalid("sphere_chart out of range");
      stages = n1;
      break;
    case ImmersionKind::real_sphere:
      if (n < 1) invalid("real_sphere requires n >= 1");
      need_curved();
      if (sphere_chart < 0 || sphere_chart >= sphere_chart_count(n))
        invalid("sphere_chart out of range");
      break;
    case ImmersionKind::point:
      need_curved();
      break;
    case ImmersionKind::calabi_point_product:
    case ImmersionKind::warped_product: {
      need_curved();
      const std::size_t want = kind == ImmersionKind::warped_product ? 2 : 1;
      if (factors.size() != want)
        invalid(std::string(to_string(kind)) + " requires " + std::to_string(want) +
                " factor(s)");
      for (const auto& f : factors) {
        if (!sphere_kind(f.kind)) invalid("factors must be unit-sphere lifts");
        f.validate();
      }
      if (kind == ImmersionKind::warped_product) {
        if (!constants) invalid("warped_product requires constants {r1, r2, a}");
        const auto& c = *constants;
        if (!(c.r1 > 0.0) || !(c.r2 > 0.0)) invalid("constants: r1, r2 must be positive");
        if (std::abs(c.r1 * c.r1 + c.r2 * c.r2 - 1.0) > 1e-12)
          invalid("constants: r1^2 + r2^2 must equal 1");
        if (c.omega1.has_value() != c.omega2.has_value())
          invalid("constants: omega1 and omega2 must be given together");
        if (!c.omega1 && !(c.a > 0.0)) invalid("constants: a must be positive");
      }
      break;
    }
  }
  if (!sign_choices.empty()) {
    for (int s : sign_choices)
      if (s != 1 && s != -1) invalid("sign_choices entries must be +1 or -1");
    for (int s : sign_choices)
      if (s != sign_choices.front())
        invalid("sign_choices must be uniform; mixed branches are not realized");
    if (stages != 0 && sign_choices.size() != stages)
      invalid("sign_choices must have " + std::to_string(stages) + " entries");
  }
  if (split) {
    if (split->n1 < 0 || split->n2 < 0 || split->n1 + split->n2 != dimension())
      invalid("split must partition the dimension");
  }
}

std::optional<FactorSplit> ImmersionSpec::factor_split() const {
  if (split) return split;
  switch (kind) {
    case ImmersionKind::totally_geodesic:
    case ImmersionKind::flat_torus: return FactorSplit{n, 0};
    case ImmersionKind::product_eq381: return FactorSplit{n1, n2};
    case ImmersionKind::real_sphere: return FactorSplit{0, n};
    case ImmersionKind::calabi_point_product:
      return FactorSplit{1, factors.at(0).dimension()};
    default: return std::nullopt;
  }
}

bool ImmersionSpec::expects_parallel() const {
  switch (kind) {
    case ImmersionKind::calabi_point_product: return factors.at(0).expects_parallel();
    case ImmersionKind::warped_product: return false;
    default: return true;
  }
}

bool ImmersionSpec::expects_minimal() const {
  switch (kind) {
    case ImmersionKind::calabi_point_product: return factors.at(0).expects_minimal();
    case ImmersionKind::warped_product: {
      if (!factors.at(0).expects_minimal() || !factors.at(1).expects_minimal()) return false;
      if (!constants || constants->omega1) return false;
      const auto m = minimal_warping_constants(factors[0].dimension(), factors[1].dimension());
      return std::abs(constants->r1 - m.r1) < 1e-12;
    }
    default: return true;
  }
}

ImmersionPtr make_immersion(const ImmersionSpec& spec) {
  spec.validate();
  ImmersionPtr out;
  switch (spec.kind) {
    case ImmersionKind::totally_geodesic: out = make_totally_geodesic(spec.n); break;
    case ImmersionKind::flat_torus: out = make_flat_torus(spec.n); break;
    case ImmersionKind::product_eq381:
      out = make_product_immersion(spec.n1, spec.n2, spec.sphere_chart, spec.sphere_rotation);
      break;
    case ImmersionKind::real_sphere:
      out = make_real_sphere(spec.n, spec.sphere_chart, spec.sphere_rotation);
      break;
    case ImmersionKind::point: out = make_point(); break;
    case ImmersionKind::calabi_point_product:
      out = calabi_point_product(make_immersion(spec.factors[0]));
      break;
    case ImmersionKind::warped_product: {
      const auto& c = *spec.constants;
      ImmersionPtr curve = c.omega1 ? make_phase_curve({c.r1, c.r2, *c.omega1, *c.omega2})
                                    : make_legendre_curve({c.r1, c.r2, c.a});
      out = warped_product(make_immersion(spec.factors[0]), make_immersion(spec.factors[1]),
                           curve);
      break;
    }
  }
  if (!spec.sign_choices.empty() && spec.sign_choices.front() == 1)
    out = conjugated_immersion(out);
  return out;
}

CurveConstants minimal_warping_constants(int n1, int n2, double a) {
  const double n = n1 + n2 + 1;
  CurveConstants c;
  c.r1 = std::sqrt((n1 + 1) / (n + 1));
  c.r2 = std::sqrt((n2 + 1) / (n + 1));
  c.a = a;
  return c;
}

std::vector<KindSchema> catalog_schemas() {
  return {
      {ImmersionKind::totally_geodesic, "n >= 1, c_tilde = 0",
       "real slice R^n of C^n"},
      {ImmersionKind::flat_torus, "n >= 1, c_tilde = 1, sign_choices[n]",
       "(e^{iu_1}, ..., e^{iu_n}, e^{-i(u_1+...+u_n)}) / sqrt(n+1)"},
      {ImmersionKind::product_eq381,
       "n1 >= 1, n2 >= 1, c_tilde = 1, sphere_chart, sign_choices[n1]",
       "flat torus T^n1 times round S^n2 with phase u_{n1+1} = -(u_1+...+u_n1)/(n2+1)"},
      {ImmersionKind::warped_product,
       "factors[2], constants {r1, r2, a} or {r1, r2, omega1, omega2}, split",
       "(g1(t) psi1(p), g2(t) psi2(q)) along a curve in S^3"},
      {ImmersionKind::calabi_point_product, "factors[1]",
       "(sqrt(n/(n+1)) e^{it/(n+1)} psi1(p), sqrt(1/(n+1)) e^{-int/(n+1)})"},
      {ImmersionKind::real_sphere, "n >= 1, sphere_chart",
       "totally geodesic RP^n through the real unit sphere"},
      {ImmersionKind::point, "(none)", "the point 1 in C, used as a factor"},
  };
}

}  // namespace minlag
