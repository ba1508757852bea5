#include "minlag/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "minlag/error.hpp"
#include "minlag/random.hpp"

namespace minlag {

namespace {

using JetMatrix = std::vector<MultiJet>;  // row-major n x n

double re_inner(const ComplexVector& a, const ComplexVector& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] * std::conj(b[k])).real();
  return s;
}

MultiIndex unit_index(int n, int i) {
  MultiIndex a(n, 0);
  a[i] = 1;
  return a;
}

MultiIndex pair_index(int n, int i, int j) {
  MultiIndex a(n, 0);
  a[i] += 1;
  a[j] += 1;
  return a;
}

void require_order(const LiftSample& s, int order, const char* what) {
  if (s.order() < order)
    fail(ErrorCode::truncation, std::string(what) + " needs lift jets of order " +
                                    std::to_string(order) + ", got " +
                                    std::to_string(s.order()));
}

JetMatrix jet_matmul(const JetMatrix& a, const JetMatrix& b, int n) {
  JetMatrix out;
  out.reserve(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MultiJet acc(a[0].num_vars(), a[0].order());
      for (int k = 0; k < n; ++k) acc.add_product(a[i * n + k], b[k * n + j]);
      out.push_back(std::move(acc));
    }
  return out;
}

// Inverse of a jet-valued matrix by fixed-point iteration
// X <- M0^{-1} - M0^{-1} N X with N = M - M0; exact after `order` steps.
JetMatrix jet_inverse(const JetMatrix& m, int n) {
  const int nv = m[0].num_vars();
  const int order = m[0].order();
  Matrix m0(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m0(i, j) = m[i * n + j].value();
  Eigen::FullPivLU<Matrix> lu(m0);
  if (!lu.isInvertible()) fail(ErrorCode::degenerate_parametrization, "singular metric");
  const Matrix inv0 = lu.inverse();

  JetMatrix kmat;  // -inv0 * N
  kmat.reserve(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MultiJet acc(nv, order);
      for (int k = 0; k < n; ++k) {
        MultiJet nk = m[k * n + j];
        nk.coeffs()[0] = 0.0;
        acc += nk * (-inv0(i, k));
      }
      kmat.push_back(std::move(acc));
    }
  JetMatrix base;
  base.reserve(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) base.push_back(MultiJet::constant(inv0(i, j), nv, order));

  JetMatrix x = base;
  for (int it = 0; it < order; ++it) {
    JetMatrix next = jet_matmul(kmat, x, n);
    for (int k = 0; k < n * n; ++k) next[k] += base[k];
    x = std::move(next);
  }
  return x;
}

// Christoffel-type coefficients raised with `metric`:
// out^c_{ik} = sum_b metric^{cb} lowered_{ik;b}, flat index (c, i, k).
std::vector<MultiJet> raise_first(const std::vector<MultiJet>& lowered, const JetMatrix& inv,
                                  int n) {
  const int nv = lowered[0].num_vars();
  const int order = lowered[0].order();
  std::vector<MultiJet> inv_t;
  inv_t.reserve(inv.size());
  for (const auto& j : inv) inv_t.push_back(j.truncated(order));
  std::vector<MultiJet> out;
  out.reserve(n * n * n);
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        MultiJet acc(nv, order);
        for (int b = 0; b < n; ++b) acc.add_product(inv_t[c * n + b], lowered[(i * n + k) * n + b]);
        out.push_back(std::move(acc));
      }
  return out;
}

// R_ijkl at the base point from connection jets gamma^l_{jk} (flat (l, j, k))
// and the metric at the base point.
DenseTensor curvature_from_connection(const std::vector<MultiJet>& gamma, const Matrix& metric,
                                      int n) {
  auto g = [&](int l, int j, int k) -> const MultiJet& { return gamma[(l * n + j) * n + k]; };
  DenseTensor upper(4, n);  // R^l_ijk stored as (i, j, k, l)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = g(l, j, k).first(i) - g(l, i, k).first(j);
          for (int m = 0; m < n; ++m)
            v += g(l, i, m).value() * g(m, j, k).value() - g(l, j, m).value() * g(m, i, k).value();
          upper({i, j, k, l}) = v;
        }
  DenseTensor lowered(4, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = 0.0;
          for (int m = 0; m < n; ++m) v += upper({i, j, k, m}) * metric(m, l);
          lowered({i, j, k, l}) = v;
        }
  return lowered;
}

// C_ijk = Re< P(d_i d_j psi), i d_k psi > as jets of order (lift order - 2).
std::vector<MultiJet> cubic_form_jets(const LiftSample& sample) {
  const int n = sample.dimension();
  const ComplexJetVector& psi = sample.lift;
  const int order = psi.order() - 2;
  std::vector<ComplexJetVector> first;
  first.reserve(n);
  for (int i = 0; i < n; ++i) first.push_back(psi.derivative(i));
  std::vector<ComplexJetVector> normal;  // i d_k psi
  normal.reserve(n);
  for (int k = 0; k < n; ++k) normal.push_back(first[k].apply_j().truncated(order));
  const bool project = sample.ambient == AmbientKind::sphere_lift_cp;
  const ComplexJetVector base = psi.truncated(order);
  const ComplexJetVector base_j = base.apply_j();

  std::vector<MultiJet> psi_dot_n, ipsi_dot_n;
  if (project) {
    for (int k = 0; k < n; ++k) {
      psi_dot_n.push_back(real_inner(base, normal[k]));
      ipsi_dot_n.push_back(real_inner(base_j, normal[k]));
    }
  }

  std::vector<MultiJet> out(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const ComplexJetVector second = first[i].derivative(j);
      MultiJet along_psi, along_ipsi;
      if (project) {
        along_psi = real_inner(second, base);
        along_ipsi = real_inner(second, base_j);
      }
      for (int k = 0; k < n; ++k) {
        MultiJet v = real_inner(second, normal[k]);
        if (project) {
          v -= along_psi * psi_dot_n[k];
          v -= along_ipsi * ipsi_dot_n[k];
        }
        out[(i * n + j) * n + k] = v;
        out[(j * n + i) * n + k] = std::move(v);
      }
    }
  return out;
}

double perm_asymmetry(const DenseTensor& c) {
  const int n = c.dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) {
        const double v = c({a, b, d});
        const std::array<double, 5> others = {c({b, a, d}), c({a, d, b}), c({d, b, a}),
                                              c({b, d, a}), c({d, a, b})};
        for (double o : others) worst = std::max(worst, std::abs(v - o));
      }
  return worst;
}

DenseTensor symmetrized(const DenseTensor& c) {
  const int n = c.dim();
  DenseTensor out(3, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d)
        out({a, b, d}) = (c({a, b, d}) + c({b, a, d}) + c({a, d, b}) + c({d, b, a}) +
                          c({b, d, a}) + c({d, a, b})) /
                         6.0;
  return out;
}

// Right-hand side shared by the Gauss and Ricci equations.
double space_form_rhs(const DenseTensor& c, double c_tilde, int a, int b, int cc, int d) {
  const int n = c.dim();
  double v = c_tilde * ((b == cc && a == d ? 1.0 : 0.0) - (a == cc && b == d ? 1.0 : 0.0));
  for (int x = 0; x < n; ++x)
    v += c({a, d, x}) * c({b, cc, x}) - c({b, d, x}) * c({a, cc, x});
  return v;
}

double equation_residual(const DenseTensor& r, const DenseTensor& c, double c_tilde) {
  const int n = c.dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc)
        for (int d = 0; d < n; ++d)
          worst = std::max(worst,
                           std::abs(r({a, b, cc, d}) - space_form_rhs(c, c_tilde, a, b, cc, d)));
  return worst;
}

Vector gaussian_in(const Matrix& basis, StreamRng& rng) {
  Vector coef(basis.rows());
  for (int i = 0; i < coef.size(); ++i) coef(i) = rng.gaussian();
  return basis.transpose() * coef;
}

Matrix orthonormal_rows(const Matrix& columns) {
  // Rows of the result span the column space of `columns`.
  const int k = static_cast<int>(columns.cols());
  Matrix out(k, columns.rows());
  for (int i = 0; i < k; ++i) {
    Vector v = columns.col(i);
    for (int j = 0; j < i; ++j) v -= out.row(j).dot(v) * out.row(j).transpose();
    for (int j = 0; j < i; ++j) v -= out.row(j).dot(v) * out.row(j).transpose();
    out.row(i) = v.normalized().transpose();
  }
  return out;
}

struct ClassStats {
  double mean = 0.0;
  double deviation = 0.0;
  int count = 0;
};

ClassStats summarize(const std::vector<double>& ks) {
  ClassStats s;
  s.count = static_cast<int>(ks.size());
  if (ks.empty()) return s;
  for (double k : ks) s.mean += k;
  s.mean /= static_cast<double>(ks.size());
  for (double k : ks) s.deviation = std::max(s.deviation, std::abs(k - s.mean));
  return s;
}

}  // namespace

double AmbientResiduals::max() const {
  return std::max({unit_norm, horizontality, lagrangian});
}

Matrix ShapeTensor::shape_operator(int c) const {
  const int n = dimension();
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cubic({i, j, c});
  return a;
}

Vector ShapeTensor::trace() const {
  const int n = dimension();
  Vector t = Vector::Zero(n);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) t(b) += cubic({a, a, b});
  return t;
}

double ShapeTensor::symmetry_residual() const { return perm_asymmetry(cubic); }

double CurvatureData::sectional(const Vector& u, const Vector& v) const {
  const int n = riemann.dim();
  double num = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) num += riemann({a, b, c, d}) * u(a) * v(b) * v(c) * u(d);
  const double den = u.squaredNorm() * v.squaredNorm() - std::pow(u.dot(v), 2);
  return num / den;
}

double CurvatureData::symmetry_residual() const {
  const int n = riemann.dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const double v = riemann({a, b, c, d});
          worst = std::max({worst, std::abs(v + riemann({b, a, c, d})),
                            std::abs(v + riemann({a, b, d, c})),
                            std::abs(v - riemann({c, d, a, b}))});
        }
  return worst;
}

double CurvatureData::bianchi_residual() const {
  const int n = riemann.dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          worst = std::max(worst, std::abs(riemann({a, b, c, d}) + riemann({a, c, d, b}) +
                                           riemann({a, d, b, c})));
  return worst;
}

FrameData frame_and_metric(const LiftSample& sample) {
  require_order(sample, 1, "frame_and_metric");
  const int n = sample.dimension();
  if (n < 1) fail(ErrorCode::argument, "frame_and_metric needs a positive dimension");
  FrameData f;
  for (int i = 0; i < n; ++i) f.tangents.push_back(sample.lift.partial(unit_index(n, i)));
  f.metric.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f.metric(i, j) = re_inner(f.tangents[i], f.tangents[j]);

  Eigen::SelfAdjointEigenSolver<Matrix> eig(f.metric, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > 1e8)
    fail(ErrorCode::degenerate_parametrization,
         "metric condition number exceeds 1e8 at the sampled point");
  f.condition_number = hi / lo;

  // Modified Gram-Schmidt, pivoting on the largest remaining norm.
  std::vector<ComplexVector> work = f.tangents;
  Matrix coeff = Matrix::Identity(n, n);
  std::vector<bool> used(n, false);
  f.frame_change = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    int pivot = -1;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      const double nrm = re_inner(work[i], work[i]);
      if (nrm > best) {
        best = nrm;
        pivot = i;
      }
    }
    used[pivot] = true;
    const double len = std::sqrt(best);
    ComplexVector e = work[pivot];
    for (auto& z : e) z /= len;
    f.frame_change.row(a) = coeff.row(pivot) / len;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      const double p = re_inner(work[i], e);
      for (std::size_t k = 0; k < e.size(); ++k) work[i][k] -= p * e[k];
      coeff.row(i) -= p * f.frame_change.row(a);
    }
    f.frame.push_back(std::move(e));
  }
  f.coord_in_frame = f.frame_change * f.metric;
  return f;
}

AmbientResiduals ambient_structure_residuals(const LiftSample& sample, const FrameData& frame) {
  AmbientResiduals r;
  const int n = sample.dimension();
  const ComplexVector psi = sample.lift.value();
  if (sample.ambient == AmbientKind::sphere_lift_cp) {
    r.unit_norm = std::abs(std::sqrt(re_inner(psi, psi)) - 1.0);
    ComplexVector ipsi = psi;
    for (auto& z : ipsi) z *= std::complex<double>(0.0, 1.0);
    for (int i = 0; i < n; ++i)
      r.horizontality = std::max(r.horizontality, std::abs(re_inner(frame.tangents[i], ipsi)));
  }
  for (int i = 0; i < n; ++i) {
    ComplexVector it = frame.tangents[i];
    for (auto& z : it) z *= std::complex<double>(0.0, 1.0);
    for (int j = 0; j < n; ++j)
      r.lagrangian = std::max(r.lagrangian, std::abs(re_inner(it, frame.tangents[j])));
  }
  return r;
}

ShapeTensor shape_tensor_unchecked(const LiftSample& sample, const FrameData& frame) {
  require_order(sample, 2, "shape_tensor");
  const int n = sample.dimension();
  const ComplexVector psi = sample.lift.value();
  ComplexVector ipsi = psi;
  for (auto& z : ipsi) z *= std::complex<double>(0.0, 1.0);
  const bool project = sample.ambient == AmbientKind::sphere_lift_cp;

  std::vector<ComplexVector> normal;
  for (int k = 0; k < n; ++k) {
    ComplexVector v = frame.tangents[k];
    for (auto& z : v) z *= std::complex<double>(0.0, 1.0);
    normal.push_back(std::move(v));
  }
  DenseTensor coord(3, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ComplexVector s = sample.lift.partial(pair_index(n, i, j));
      if (project) {
        const double p1 = re_inner(s, psi);
        const double p2 = re_inner(s, ipsi);
        for (std::size_t k = 0; k < s.size(); ++k) s[k] -= p1 * psi[k] + p2 * ipsi[k];
      }
      for (int k = 0; k < n; ++k) coord({i, j, k}) = re_inner(s, normal[k]);
    }
  const DenseTensor raw = coord.transformed(frame.frame_change);
  ShapeTensor out;
  out.asymmetry = perm_asymmetry(raw);
  out.cubic = symmetrized(raw);
  return out;
}

ShapeTensor shape_tensor(const LiftSample& sample, const FrameData& frame) {
  ShapeTensor s = shape_tensor_unchecked(sample, frame);
  if (s.asymmetry > 1e-8)
    fail(ErrorCode::inconsistency,
         "cubic form is not symmetric (residual " + std::to_string(s.asymmetry) +
             "); the lift is not horizontal Lagrangian");
  return s;
}

CurvatureData intrinsic_curvature(const LiftSample& sample, const FrameData& frame) {
  require_order(sample, 3, "intrinsic_curvature");
  const int n = sample.dimension();
  const int k = sample.order();
  CurvatureData cd;
  cd.order = k;

  std::vector<ComplexJetVector> first;
  for (int i = 0; i < n; ++i) first.push_back(sample.lift.derivative(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cd.metric_jets.push_back(real_inner(first[i], first[j]));

  // Levi-Civita from metric derivatives.
  const int go = k - 2;
  std::vector<MultiJet> dg;  // d_l g_ij, flat ((i, j), l)
  dg.reserve(n * n * n);
  for (int ij = 0; ij < n * n; ++ij)
    for (int l = 0; l < n; ++l) dg.push_back(cd.metric_jets[ij].derivative(l));
  auto dgl = [&](int i, int j, int l) -> const MultiJet& { return dg[(i * n + j) * n + l]; };
  std::vector<MultiJet> gamma_low;  // Gamma_{ij;l}, flat ((i, j), l)
  gamma_low.reserve(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        gamma_low.push_back((dgl(j, l, i) + dgl(i, l, j) - dgl(i, j, l)) * 0.5);
  JetMatrix g_trunc;
  for (const auto& j : cd.metric_jets) g_trunc.push_back(j.truncated(go));
  const JetMatrix ginv = jet_inverse(g_trunc, n);
  cd.christoffel_jets = raise_first(gamma_low, ginv, n);
  cd.christoffels = DenseTensor(3, n);
  for (int c = 0; c < n * n * n; ++c) cd.christoffels.at(c) = cd.christoffel_jets[c].value();
  cd.riemann_coord = curvature_from_connection(cd.christoffel_jets, frame.metric, n);
  cd.riemann = cd.riemann_coord.transformed(frame.frame_change);

  // Normal connection in the frame xi_k = J d_k psi, from ambient projections.
  std::vector<ComplexJetVector> xi;
  for (int i = 0; i < n; ++i) xi.push_back(first[i].apply_j());
  JetMatrix gperp;
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) gperp.push_back(real_inner(xi[b], xi[c]).truncated(go));
  std::vector<MultiJet> perp_low;  // Re< d_i xi_k, xi_b >, flat ((i, k), b)
  perp_low.reserve(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int kk = 0; kk < n; ++kk) {
      const ComplexJetVector d = xi[kk].derivative(i);
      for (int b = 0; b < n; ++b) perp_low.push_back(real_inner(d, xi[b].truncated(go)));
    }
  const std::vector<MultiJet> perp = raise_first(perp_low, jet_inverse(gperp, n), n);
  Matrix gperp0(n, n);
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) gperp0(b, c) = gperp[b * n + c].value();
  cd.normal_riemann = curvature_from_connection(perp, gperp0, n).transformed(frame.frame_change);
  return cd;
}

NablaH nabla_h(const LiftSample& sample, const FrameData& frame, const CurvatureData& curv) {
  require_order(sample, 3, "nabla_h");
  const int n = sample.dimension();
  const int k = sample.order();
  const int n3 = n * n * n;
  const std::vector<MultiJet> cj = cubic_form_jets(sample);  // order k - 2

  // Covariant derivative of a covariant tensor field given as jets with the
  // first index of the output being the direction.
  auto covariant = [&](const std::vector<MultiJet>& field, int rank) {
    const int order = field[0].order() - 1;
    std::vector<MultiJet> t;
    t.reserve(field.size());
    for (const auto& f : field) t.push_back(f.truncated(order));
    std::vector<MultiJet> gam;
    gam.reserve(n3);
    for (const auto& g : curv.christoffel_jets) gam.push_back(g.truncated(order));
    std::size_t total = 1;
    for (int r = 0; r <= rank; ++r) total *= n;
    std::vector<MultiJet> out;
    out.reserve(total);
    std::vector<int> idx(rank + 1);
    std::vector<std::size_t> stride(rank, 1);
    for (int r = rank - 2; r >= 0; --r) stride[r] = stride[r + 1] * n;
    for (std::size_t f = 0; f < total; ++f) {
      std::size_t rem = f;
      for (int r = rank; r >= 0; --r) {
        idx[r] = static_cast<int>(rem % n);
        rem /= n;
      }
      const int l = idx[0];
      std::size_t base = 0;
      for (int r = 0; r < rank; ++r) base += idx[r + 1] * stride[r];
      MultiJet v = field[base].derivative(l);
      for (int slot = 0; slot < rank; ++slot) {
        const int s = idx[slot + 1];
        const std::size_t off = base - s * stride[slot];
        for (int m = 0; m < n; ++m)
          v.add_product(gam[(m * n + l) * n + s], t[off + m * stride[slot]], -1.0);
      }
      out.push_back(std::move(v));
    }
    return out;
  };

  NablaH out;
  const std::vector<MultiJet> dc = covariant(cj, 3);
  DenseTensor coord(4, n);
  for (std::size_t f = 0; f < dc.size(); ++f) coord.at(f) = dc[f].value();
  out.nabla_h = coord.transformed(frame.frame_change);
  if (k >= 4) {
    const std::vector<MultiJet> ddc = covariant(dc, 4);
    DenseTensor c5(5, n);
    for (std::size_t f = 0; f < ddc.size(); ++f) c5.at(f) = ddc[f].value();
    out.nabla2_h = c5.transformed(frame.frame_change);
  }
  return out;
}

double gauss_residual(const ShapeTensor& shape, const DenseTensor& riemann, double c_tilde) {
  return equation_residual(riemann, shape.cubic, c_tilde);
}

StructuralResiduals structural_residuals(const ShapeTensor& shape, const CurvatureData& curv,
                                         const NablaH& dh, double c_tilde) {
  const int n = shape.dimension();
  const DenseTensor& c = shape.cubic;
  const DenseTensor& r = curv.riemann;
  StructuralResiduals out;
  out.gauss = equation_residual(r, c, c_tilde);
  out.ricci_eq = equation_residual(curv.normal_riemann, c, c_tilde);

  const DenseTensor& nh = dh.nabla_h;
  for (int d = 0; d < n; ++d)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int e = 0; e < n; ++e)
          out.codazzi = std::max(out.codazzi, std::abs(nh({d, a, b, e}) - nh({a, d, b, e})));

  // Cyclic identity in (w, x, y): sum_c C_ydc R_wxzc - C_yzc R_wxcd.
  auto term = [&](int w, int x, int y, int z, int d) {
    double v = 0.0;
    for (int q = 0; q < n; ++q) v += c({y, d, q}) * r({w, x, z, q}) - c({y, z, q}) * r({w, x, q, d});
    return v;
  };
  for (int w = 0; w < n; ++w)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          for (int d = 0; d < n; ++d) {
            const double s = term(w, x, y, z, d) + term(x, y, w, z, d) + term(y, w, x, z, d);
            out.tsinghua = std::max(out.tsinghua, std::abs(s));
          }

  if (dh.nabla2_h) {
    const DenseTensor& dd = *dh.nabla2_h;
    double worst = 0.0;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          for (int w = 0; w < n; ++w)
            for (int u = 0; u < n; ++u) {
              double rhs = 0.0;
              for (int q = 0; q < n; ++q)
                rhs += c({z, w, q}) * curv.normal_riemann({x, y, q, u}) -
                       r({x, y, z, q}) * c({q, w, u}) - r({x, y, w, q}) * c({z, q, u});
              worst = std::max(worst,
                               std::abs(dd({x, y, z, w, u}) - dd({y, x, z, w, u}) - rhs));
            }
    out.ricci_identity = worst;
  }
  return out;
}

std::pair<Matrix, Matrix> factor_bases(const FrameData& frame, FactorSplit split) {
  const int n = frame.dimension();
  if (split.n1 < 0 || split.n2 < 0 || split.n1 + split.n2 != n)
    fail(ErrorCode::argument, "factor split does not match the dimension");
  const Matrix& cols = frame.coord_in_frame;
  Matrix b1 = split.n1 > 0 ? orthonormal_rows(cols.leftCols(split.n1)) : Matrix(0, n);
  Matrix b2 = split.n2 > 0 ? orthonormal_rows(cols.rightCols(split.n2)) : Matrix(0, n);
  return {b1, b2};
}

SectionalProfile sectional_curvature_profile(const CurvatureData& curv, const FrameData& frame,
                                             FactorSplit split, std::uint64_t seed,
                                             int planes_per_class) {
  const auto [b1, b2] = factor_bases(frame, split);
  StreamRng rng(seed, 0x5ec7101a1ULL);

  auto within = [&](const Matrix& basis) {
    std::vector<double> ks;
    if (basis.rows() < 2) return ks;
    for (int p = 0; p < planes_per_class; ++p) {
      Vector u = gaussian_in(basis, rng).normalized();
      Vector v = gaussian_in(basis, rng);
      v -= u.dot(v) * u;
      ks.push_back(curv.sectional(u, v.normalized()));
    }
    return ks;
  };
  const ClassStats s1 = summarize(within(b1));
  const ClassStats s2 = summarize(within(b2));
  std::vector<double> mixed;
  if (b1.rows() >= 1 && b2.rows() >= 1) {
    for (int p = 0; p < planes_per_class; ++p) {
      const Vector u = gaussian_in(b1, rng).normalized();
      const Vector v = gaussian_in(b2, rng).normalized();
      mixed.push_back(curv.sectional(u, v));
    }
  }
  const ClassStats sm = summarize(mixed);

  SectionalProfile out;
  out.c1_estimate = s1.mean;
  out.c2_estimate = s2.mean;
  out.mixed_estimate = sm.mean;
  out.c1_deviation = s1.deviation;
  out.c2_deviation = s2.deviation;
  out.mixed_deviation = sm.deviation;
  out.max_deviation = std::max({s1.deviation, s2.deviation, sm.deviation});
  out.c1_planes = s1.count;
  out.c2_planes = s2.count;
  out.mixed_planes = sm.count;
  return out;
}

}  // namespace minlag
