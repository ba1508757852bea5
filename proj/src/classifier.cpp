#include "minlag/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "minlag/error.hpp"
#include "minlag/random.hpp"

namespace minlag {

namespace {

// c(x, x, .) in reduced coordinates.
Vector contract2(const DenseTensor& c, const Vector& x) {
  const int d = c.dim();
  Vector g = Vector::Zero(d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const double xab = x(a) * x(b);
      for (int k = 0; k < d; ++k) g(k) += c({a, b, k}) * xab;
    }
  return g;
}

Matrix contract1(const DenseTensor& c, const Vector& x) {
  const int d = c.dim();
  Matrix m = Matrix::Zero(d, d);
  for (int a = 0; a < d; ++a)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) m(j, k) += c({a, j, k}) * x(a);
  return m;
}

DenseTensor restrict(const DenseTensor& c, const Matrix& basis) {
  // out_ijk = C(b_i, b_j, b_k)
  const int d = static_cast<int>(basis.rows());
  const int n = c.dim();
  DenseTensor t1(3, d);
  std::vector<double> tmp(static_cast<std::size_t>(d) * n * n, 0.0);
  for (int i = 0; i < d; ++i)
    for (int a = 0; a < n; ++a) {
      const double w = basis(i, a);
      if (w == 0.0) continue;
      for (int b = 0; b < n; ++b)
        for (int e = 0; e < n; ++e) tmp[(i * n + b) * n + e] += w * c({a, b, e});
    }
  std::vector<double> tmp2(static_cast<std::size_t>(d) * d * n, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int b = 0; b < n; ++b) {
        const double w = basis(j, b);
        for (int e = 0; e < n; ++e) tmp2[(i * d + j) * n + e] += w * tmp[(i * n + b) * n + e];
      }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        double v = 0.0;
        for (int e = 0; e < n; ++e) v += basis(k, e) * tmp2[(i * d + j) * n + e];
        t1({i, j, k}) = v;
      }
  return t1;
}

double reduced_value(const DenseTensor& c, const Vector& x) { return contract2(c, x).dot(x); }

double tensor_norm(const DenseTensor& c) {
  double s = 0.0;
  for (double v : c.data()) s += v * v;
  return std::sqrt(s);
}

// Riemannian gradient ascent from x0; returns a unit vector.
Vector ascend(const DenseTensor& c, Vector x, double step0, const MaximizerOptions& opts) {
  x.normalize();
  double fx = reduced_value(c, x);
  for (int it = 0; it < opts.max_iterations; ++it) {
    const Vector g = 3.0 * contract2(c, x);
    const Vector rg = g - g.dot(x) * x;
    if (rg.norm() < opts.gradient_tolerance) break;
    double step = step0;
    bool moved = false;
    for (int h = 0; h < 60; ++h) {
      const Vector y = (x + step * rg).normalized();
      const double fy = reduced_value(c, y);
      if (fy > fx) {
        x = y;
        fx = fy;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return x;
}

// Newton refinement of c(x, x, .) = lambda x, |x| = 1 (lambda = f(x)).
Vector polish(const DenseTensor& c, Vector x) {
  const int d = c.dim();
  auto residual = [&](const Vector& v) {
    const Vector g = contract2(c, v);
    return (g - g.dot(v) * v).norm();
  };
  double r = residual(x);
  for (int it = 0; it < 20 && r > 1e-15; ++it) {
    const Vector g = contract2(c, x);
    const double lam = g.dot(x);
    Matrix jac = Matrix::Zero(d + 1, d + 1);
    jac.topLeftCorner(d, d) = 2.0 * contract1(c, x) - lam * Matrix::Identity(d, d);
    jac.block(0, d, d, 1) = -x;
    jac.block(d, 0, 1, d) = x.transpose();
    Vector rhs(d + 1);
    rhs.head(d) = -(g - lam * x);
    rhs(d) = -(x.squaredNorm() - 1.0) / 2.0;
    const Vector delta = jac.fullPivLu().solve(rhs);
    const Vector y = (x + delta.head(d)).normalized();
    const double ry = residual(y);
    if (!(ry < r) || reduced_value(c, y) < reduced_value(c, x) - 1e-12) break;
    x = y;
    r = ry;
  }
  return x;
}

bool lex_greater(const Vector& a, const Vector& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) > b(i) + 1e-9) return true;
    if (a(i) < b(i) - 1e-9) return false;
  }
  return false;
}

Matrix complement_rows(const Matrix& basis, const Matrix& remove, int n) {
  // Orthonormal rows spanning row-span(basis) minus row-span(remove).
  std::vector<Vector> keep;
  auto project_out = [&](Vector v) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int r = 0; r < remove.rows(); ++r) v -= remove.row(r).dot(v) * remove.row(r).transpose();
      for (const auto& k : keep) v -= k.dot(v) * k;
    }
    return v;
  };
  const int target = static_cast<int>(basis.rows()) - static_cast<int>(remove.rows());
  // Pivot on the largest projected norm for a deterministic, stable choice.
  std::vector<bool> used(basis.rows(), false);
  while (static_cast<int>(keep.size()) < target) {
    int best = -1;
    double best_norm = -1.0;
    Vector best_v;
    for (int r = 0; r < basis.rows(); ++r) {
      if (used[r]) continue;
      const Vector v = project_out(basis.row(r).transpose());
      if (v.norm() > best_norm) {
        best_norm = v.norm();
        best = r;
        best_v = v;
      }
    }
    if (best < 0 || best_norm < 1e-8) break;
    used[best] = true;
    keep.push_back(best_v / best_norm);
  }
  Matrix out(keep.size(), n);
  for (std::size_t i = 0; i < keep.size(); ++i) out.row(i) = keep[i].transpose();
  return out;
}

Matrix stack(const Matrix& a, const Vector& row) {
  Matrix out(a.rows() + 1, row.size());
  if (a.rows() > 0) out.topRows(a.rows()) = a;
  out.row(a.rows()) = row.transpose();
  return out;
}

double form3(const DenseTensor& c, const Vector& a, const Vector& b, const Vector& d) {
  const int n = c.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    if (a(i) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (b(j) == 0.0) continue;
      for (int k = 0; k < n; ++k) s += c({i, j, k}) * a(i) * b(j) * d(k);
    }
  }
  return s;
}

}  // namespace

double cubic_value(const DenseTensor& c, const Vector& u) { return form3(c, u, u, u); }

CubicMaximum maximize_cubic_form(const DenseTensor& c, const Matrix& subspace,
                                 const MaximizerOptions& opts) {
  const int d = static_cast<int>(subspace.rows());
  if (d < 1) fail(ErrorCode::argument, "maximize_cubic_form needs a nonempty subspace");
  if (subspace.cols() != c.dim()) fail(ErrorCode::argument, "subspace dimension mismatch");
  const DenseTensor red = restrict(c, subspace);
  CubicMaximum out;
  if (red.max_abs() < 1e-10) {
    out.null_form = true;
    // Sign-normalized lexicographically largest basis direction.
    Vector best = subspace.row(0).transpose();
    for (int r = 0; r < d; ++r) {
      Vector v = subspace.row(r).transpose();
      for (int i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > 1e-12) {
          if (v(i) < 0) v = -v;
          break;
        }
      if (r == 0 || lex_greater(v, best)) best = v;
    }
    out.u = best;
    out.value = cubic_value(c, best);
    return out;
  }
  const double step0 = 0.1 / tensor_norm(red);
  std::vector<Vector> candidates;
  std::vector<double> values;
  for (int r = 0; r < opts.restarts; ++r) {
    StreamRng rng(opts.seed, static_cast<std::uint64_t>(r));
    Vector x(d);
    do {
      for (int i = 0; i < d; ++i) x(i) = rng.gaussian();
    } while (x.norm() == 0.0);
    if (reduced_value(red, x) < 0) x = -x;
    x = ascend(red, x, step0, opts);
    if (opts.polish) x = polish(red, x);
    candidates.push_back(x);
    values.push_back(reduced_value(red, x));
  }
  const double best_value = *std::max_element(values.begin(), values.end());
  int pick = -1;
  Vector pick_u;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (values[i] < best_value - 1e-9) continue;
    const Vector u = subspace.transpose() * candidates[i];
    if (pick < 0 || lex_greater(u, pick_u)) {
      pick = static_cast<int>(i);
      pick_u = u;
    }
  }
  const Vector x = candidates[pick];
  const Vector g = contract2(red, x);
  out.value = g.dot(x);
  out.stationarity = (g - out.value * x).norm();
  out.u = subspace.transpose() * x;
  out.u.normalize();
  return out;
}

AdaptedFrame extract_adapted_frame(const DenseTensor& c, const Matrix& factor1,
                                   const Matrix& factor2, const FrameOptions& opts) {
  const int n = c.dim();
  AdaptedFrame fr;
  fr.n1 = static_cast<int>(factor1.rows());
  fr.n2 = static_cast<int>(factor2.rows());
  if (fr.n1 + fr.n2 != n) fail(ErrorCode::argument, "factor bases do not span the frame");
  fr.X = Matrix(0, n);
  Matrix remaining = factor1;
  const Matrix full = Matrix::Identity(n, n);
  for (int k = 0; k < fr.n1; ++k) {
    MaximizerOptions mo = opts.maximizer;
    mo.seed = opts.maximizer.seed + 0x1000ULL * k;
    const CubicMaximum m = maximize_cubic_form(c, remaining, mo);
    if (m.null_form) fr.null_stages.push_back(k + 1);
    fr.X = stack(fr.X, m.u);
    fr.lambda.push_back(m.value);
    fr.f_values.push_back(m.value);
    fr.stationarity.push_back(m.stationarity);

    const Matrix w = complement_rows(full, fr.X, n);
    if (w.rows() == 0) {
      fr.mu.push_back(std::nullopt);
      fr.epsilon.push_back(0);
      fr.block_residual.push_back(0.0);
    } else {
      Matrix a = Matrix::Zero(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int e = 0; e < n; ++e) a(i, j) += c({i, j, e}) * m.u(e);
      const Matrix comp = w * a * w.transpose();
      const double mu = comp.trace() / static_cast<double>(w.rows());
      const double off =
          (comp - mu * Matrix::Identity(w.rows(), w.rows())).cwiseAbs().maxCoeff();
      if (opts.strict && off > opts.structure_tolerance)
        fail(ErrorCode::structure_violation,
             "A_J restricted to the complement of stage " + std::to_string(k + 1) +
                 " is not a multiple of the identity (residual " + std::to_string(off) + ")");
      fr.mu.push_back(mu);
      fr.epsilon.push_back(2.0 * mu - m.value >= 0.0 ? 1 : -1);
      fr.block_residual.push_back(off);
    }
    remaining = complement_rows(remaining, m.u.transpose(), n);
  }
  // Y: factor 2 made orthonormal and orthogonal to the X frame.
  fr.Y = Matrix(0, n);
  for (int r = 0; r < factor2.rows(); ++r) {
    Vector v = factor2.row(r).transpose();
    for (int p = 0; p < 2; ++p) {
      for (int q = 0; q < fr.X.rows(); ++q) v -= fr.X.row(q).dot(v) * fr.X.row(q).transpose();
      for (int q = 0; q < fr.Y.rows(); ++q) v -= fr.Y.row(q).dot(v) * fr.Y.row(q).transpose();
    }
    fr.Y = stack(fr.Y, v.normalized());
  }
  return fr;
}

ClosedFormSpectrum closed_form_spectrum(int n1, int n2, double c_tilde) {
  const int n = n1 + n2;
  ClosedFormSpectrum s;
  double sum = 0.0;
  for (int k = 0; k < n1; ++k) {
    // Stage k + 1 (1-based): (n - k) mu^2 = c + sum_{i<=k} mu_i^2.
    if (n - k - 1 == 0) {
      s.lambda.push_back(0.0);
      s.mu.push_back(std::nullopt);
      continue;
    }
    const double mu = -std::sqrt((c_tilde + sum) / (n - k));
    s.mu.push_back(mu);
    s.lambda.push_back(-(n - k - 1) * mu);
    sum += mu * mu;
  }
  return s;
}

RelationMap verify_frame_relations(const AdaptedFrame& fr, const DenseTensor& c,
                                   double c_tilde) {
  const int n1 = fr.n1;
  const int n2 = fr.n2;
  const int n = n1 + n2;
  auto x = [&](int i) -> Vector { return fr.X.row(i).transpose(); };
  auto y = [&](int i) -> Vector { return fr.Y.row(i).transpose(); };
  RelationMap r;
  r["mixed_block"] = 0.0;
  r["y_isotropy"] = 0.0;
  r["mu_square_sum"] = 0.0;
  r["y_block"] = 0.0;
  r["lower_triangular"] = 0.0;
  r["trace"] = 0.0;
  r["quadratic"] = 0.0;
  r["recursion"] = 0.0;
  r["lambda_closed_form"] = 0.0;

  auto bump = [&](const char* key, double v) { r[key] = std::max(r[key], std::abs(v)); };

  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j)
      for (int k = 0; k < n2; ++k) bump("mixed_block", form3(c, x(i), x(j), y(k)));

  for (int i = 0; i < n1; ++i) {
    if (!fr.mu[i]) continue;
    for (int j = 0; j < n2; ++j)
      for (int l = 0; l < n2; ++l)
        bump("y_isotropy", form3(c, x(i), y(j), y(l)) - (j == l ? *fr.mu[i] : 0.0));
  }

  if (n2 >= 1) {
    double sum = 0.0;
    for (const auto& m : fr.mu) sum += m ? *m * *m : 0.0;
    bump("mu_square_sum", sum - n1 * c_tilde / (n2 + 1.0));
    Vector target = Vector::Zero(n);
    for (int k = 0; k < n1; ++k)
      if (fr.mu[k]) target += *fr.mu[k] * x(k);
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j)
        for (int e = 0; e < n; ++e) {
          const Vector ee = Vector::Unit(n, e);
          bump("y_block", form3(c, y(i), y(j), ee) - (i == j ? target(e) : 0.0));
        }
  }

  for (int a = 0; a < n1; ++a)
    for (int b = a; b < n1; ++b)
      for (int d = b; d < n1; ++d) {
        double expected = 0.0;
        if (a < b) {
          if (b == d) expected = fr.mu[a].value_or(0.0);
        } else if (b == d) {
          expected = fr.lambda[a];
        }
        bump("lower_triangular", form3(c, x(a), x(b), x(d)) - expected);
      }

  double sum = 0.0;
  for (int k = 0; k < n1; ++k) {
    if (!fr.mu[k]) continue;
    const double mu = *fr.mu[k];
    const double lam = fr.lambda[k];
    bump("trace", lam + (n - (k + 1)) * mu);
    bump("quadratic", mu * mu - lam * mu - c_tilde - sum);
    bump("recursion", (n - k) * mu * mu - c_tilde - sum);
    sum += mu * mu;
  }
  if (n1 >= 1) bump("lambda_closed_form", fr.lambda[0] - (n - 1) * std::sqrt(c_tilde / n));
  return r;
}

const char* to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::flat_both: return "flat_both";
    case CaseLabel::case_i: return "case_i";
    case CaseLabel::inconsistent: return "inconsistent";
  }
  return "unknown";
}

ClassificationVerdict classify_case(const SectionalProfile& profile, const RelationMap& relations,
                                    FactorSplit split, double c_tilde,
                                    const ClassifyTolerances& tol) {
  if (profile.c1_deviation > 10.0 * tol.curvature || profile.c2_deviation > 10.0 * tol.curvature)
    fail(ErrorCode::not_space_form_product,
         "sectional curvature is not constant on a factor (deviation " +
             std::to_string(std::max(profile.c1_deviation, profile.c2_deviation)) + ")");
  ClassificationVerdict v;
  v.c1 = profile.c1_estimate;
  v.c2 = profile.c2_estimate;
  v.mixed = profile.mixed_estimate;
  v.expected_c2 = (split.n1 + split.n2 + 1.0) / (split.n2 + 1.0) * c_tilde;
  v.constraint_residuals = relations;

  for (const auto& [name, value] : relations)
    if (value > tol.relations) {
      v.label = CaseLabel::inconsistent;
      v.reason = "frame relation " + name + " violated";
      return v;
    }
  if (std::abs(v.mixed) > tol.curvature || profile.mixed_deviation > 10.0 * tol.curvature) {
    v.label = CaseLabel::inconsistent;
    v.reason = "mixed planes are curved; the metric is not a product";
    return v;
  }
  const bool flat1 = std::abs(v.c1) < tol.curvature;
  const bool flat2 = std::abs(v.c2) < tol.curvature;
  if (flat1 && flat2) {
    v.label = CaseLabel::flat_both;
    v.reason = "both factors flat";
  } else if (flat1 && v.c2 > tol.curvature &&
             std::abs(v.c2 - v.expected_c2) < tol.curvature) {
    v.label = CaseLabel::case_i;
    v.reason = "flat first factor, second factor at the predicted curvature";
  } else {
    v.label = CaseLabel::inconsistent;
    v.reason = flat1 ? "second factor curvature differs from the prediction"
                     : (flat2 ? "first factor curved" : "both factors curved");
  }
  return v;
}

}  // namespace minlag
