#pragma once
// Shared helpers and independent oracles for the test binaries.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <vector>

#include "minlag/audit.hpp"
#include "minlag/catalog.hpp"
#include "minlag/classifier.hpp"
#include "minlag/error.hpp"
#include "minlag/geometry.hpp"

namespace testing {

using namespace minlag;

struct Pipeline {
  LiftSample sample;
  FrameData frame;
  ShapeTensor shape;
  CurvatureData curv;
  NablaH dh;
};

inline Pipeline run_pipeline(const Immersion& im, std::vector<double> point, int order = 4) {
  Pipeline p;
  p.sample = sample_lift(im, std::move(point), order);
  p.frame = frame_and_metric(p.sample);
  p.shape = shape_tensor_unchecked(p.sample, p.frame);
  p.curv = intrinsic_curvature(p.sample, p.frame);
  p.dh = nabla_h(p.sample, p.frame, p.curv);
  return p;
}

/// Central differences of a complex-vector valued map along one coordinate.
inline ComplexVector central_difference(const std::function<ComplexVector(std::vector<double>)>& f,
                                        std::vector<double> x, int var, double h = 1e-5) {
  std::vector<double> xp = x, xm = x;
  xp[var] += h;
  xm[var] -= h;
  const ComplexVector a = f(xp), b = f(xm);
  ComplexVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] - b[i]) / (2.0 * h);
  return out;
}

/// Metric g_ij from finite differences of the lift values alone.
inline Matrix fd_metric(const Immersion& im, const std::vector<double>& x, double h = 1e-5) {
  const int n = static_cast<int>(x.size());
  auto f = [&](std::vector<double> p) { return im.evaluate(p); };
  std::vector<ComplexVector> d;
  for (int i = 0; i < n; ++i) d.push_back(central_difference(f, x, i, h));
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < d[i].size(); ++k) s += std::real(d[i][k] * std::conj(d[j][k]));
      g(i, j) = s;
    }
  return g;
}

inline Vector sphere_direction(const std::vector<double>& angles, int dim) {
  Vector u(dim);
  if (dim == 1) {
    u(0) = 1.0;
  } else if (dim == 2) {
    u << std::cos(angles[0]), std::sin(angles[0]);
  } else {
    u << std::sin(angles[1]) * std::cos(angles[0]), std::sin(angles[1]) * std::sin(angles[0]),
        std::cos(angles[1]);
  }
  return u;
}

inline double cubic_at(const DenseTensor& c, const Vector& u) {
  const int n = c.dim();
  double s = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) s += c({a, b, k}) * u(a) * u(b) * u(k);
  return s;
}

struct BruteForceMax {
  double sampled = 0.0;  // best value over the sampled directions
  double refined = 0.0;  // after zooming grid refinement of the best samples
};

/// Maximum of the cubic form over the unit sphere (dim <= 3): `directions`
/// seeded samples, then a shrinking angular grid around the best few.
inline BruteForceMax brute_force_cubic_max(const DenseTensor& c, int directions, std::uint64_t seed) {
  const int dim = c.dim();
  const int na = dim == 3 ? 2 : 1;
  StreamRng rng(seed, 7);
  std::vector<std::pair<double, std::vector<double>>> best;
  for (int s = 0; s < directions; ++s) {
    std::vector<double> ang(na);
    ang[0] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    if (na == 2) ang[1] = std::acos(rng.uniform(-1.0, 1.0));
    best.push_back({cubic_at(c, sphere_direction(ang, dim)), ang});
  }
  std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  BruteForceMax out;
  out.sampled = best.front().first;
  out.refined = out.sampled;
  if (dim == 1) return out;
  const int keep = std::min<int>(8, static_cast<int>(best.size()));
  for (int k = 0; k < keep; ++k) {
    std::vector<double> ang = best[k].second;
    double val = best[k].first;
    double w = 0.2;
    for (int round = 0; round < 40; ++round) {
      std::vector<double> centre = ang;
      const int steps = 10;
      for (int i = -steps; i <= steps; ++i)
        for (int j = (na == 2 ? -steps : 0); j <= (na == 2 ? steps : 0); ++j) {
          std::vector<double> a = centre;
          a[0] += w * i / steps;
          if (na == 2) a[1] += w * j / steps;
          const double v = cubic_at(c, sphere_direction(a, dim));
          if (v > val) {
            val = v;
            ang = a;
          }
        }
      w *= 0.5;
    }
    out.refined = std::max(out.refined, val);
  }
  return out;
}

/// Random orthogonal matrix from a seeded Gaussian QR.
inline Matrix random_rotation(int n, std::uint64_t seed) {
  StreamRng rng(seed, 11);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

inline double max_check(const VerificationReport& r, const std::string& name) {
  const CheckResult* c = r.find(name);
  return c ? c->max : std::nan("");
}

/// Scalar outputs of a report that must not depend on the chosen chart or isometry.
inline std::vector<double> scalar_outputs(const VerificationReport& r) {
  std::vector<double> v;
  if (r.profile) {
    v.push_back(r.profile->c1_estimate);
    v.push_back(r.profile->c2_estimate);
    v.push_back(r.profile->mixed_estimate);
  }
  for (const auto& s : r.spectral) {
    v.push_back(s.lambda);
    v.push_back(s.mu.value_or(0.0));
    v.push_back(s.epsilon);
  }
  return v;
}

}  // namespace testing
