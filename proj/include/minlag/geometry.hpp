#pragma once

// Extrinsic and intrinsic invariants of a Lagrangian immersion, computed from
// the jet of a horizontal lift. CP^n(4) is handled entirely on unit-sphere
// lifts in C^{n+1}; the flat case works on the immersion into C^n directly.
//
// Index conventions (orthonormal frame e_a, J = multiplication by i):
//   C_abc          = <h(e_a, e_b), J e_c>, totally symmetric
//   A_{J e_c}      = matrix (C_abc)_{ab}
//   R_abcd         = <R(e_a, e_b) e_c, e_d>, R(X,Y) = [D_X, D_Y] - D_[X,Y]
//   (nabla h)_dabc = <(nabla h)(e_d, e_a, e_b), J e_c>, d = direction
//   (nabla2 h)_edabc = <(nabla^2 h)(e_e, e_d, e_a, e_b), J e_c>

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "minlag/jet.hpp"
#include "minlag/tensor.hpp"

namespace minlag {

enum class AmbientKind {
  sphere_lift_cp,  // c~ = 1, CP^N(4) through its unit-sphere lift
  flat_cn,         // c~ = 0
};

inline double ambient_curvature(AmbientKind k) {
  return k == AmbientKind::sphere_lift_cp ? 1.0 : 0.0;
}

using ComplexVector = std::vector<std::complex<double>>;

struct LiftSample {
  std::vector<double> param_point;
  ComplexJetVector lift;
  AmbientKind ambient = AmbientKind::sphere_lift_cp;

  int dimension() const { return lift.num_vars(); }
  int order() const { return lift.order(); }
};

struct FrameData {
  std::vector<ComplexVector> tangents;  // d psi(d_i)
  std::vector<ComplexVector> frame;     // orthonormal e_a
  Matrix metric;                        // g_ij
  Matrix frame_change;                  // e_a = sum_i E(a, i) d_i
  Matrix coord_in_frame;                // column i: d_i in frame coordinates
  double condition_number = 1.0;

  int dimension() const { return static_cast<int>(metric.rows()); }
};

struct AmbientResiduals {
  double unit_norm = 0.0;
  double horizontality = 0.0;
  double lagrangian = 0.0;

  double max() const;
};

struct ShapeTensor {
  DenseTensor cubic;       // symmetrized C_abc
  double asymmetry = 0.0;  // max deviation under index permutations, pre-symmetrization

  int dimension() const { return cubic.dim(); }
  Matrix shape_operator(int c) const;
  /// sum_a C_aab for each b.
  Vector trace() const;
  double minimality_residual() const { return trace().cwiseAbs().maxCoeff(); }
  /// Symmetry residual of the stored tensor itself.
  double symmetry_residual() const;
};

struct CurvatureData {
  int order = 0;                               // order of the lift jet
  std::vector<MultiJet> metric_jets;           // g_ij, row-major
  std::vector<MultiJet> christoffel_jets;      // Gamma^k_ij, flat index (k, i, j)
  DenseTensor christoffels;                    // Gamma^k_ij at the base point
  DenseTensor riemann_coord;                   // R_ijkl
  DenseTensor riemann;                         // R_abcd
  DenseTensor normal_riemann;                  // <R^perp(e_a, e_b) J e_c, J e_d>

  /// <R(u, v) v, u> / (|u|^2 |v|^2 - <u, v>^2) for frame-coordinate vectors.
  double sectional(const Vector& u, const Vector& v) const;
  double symmetry_residual() const;
  double bianchi_residual() const;
};

struct NablaH {
  DenseTensor nabla_h;                   // rank 4, orthonormal frame
  std::optional<DenseTensor> nabla2_h;   // rank 5, when the lift has order 4
};

struct StructuralResiduals {
  double gauss = 0.0;
  double codazzi = 0.0;
  double ricci_eq = 0.0;
  double tsinghua = 0.0;
  std::optional<double> ricci_identity;
};

struct FactorSplit {
  int n1 = 0;
  int n2 = 0;
};

struct SectionalProfile {
  double c1_estimate = 0.0;
  double c2_estimate = 0.0;
  double mixed_estimate = 0.0;
  double c1_deviation = 0.0;
  double c2_deviation = 0.0;
  double mixed_deviation = 0.0;
  double max_deviation = 0.0;
  int c1_planes = 0;
  int c2_planes = 0;
  int mixed_planes = 0;
};

/// Builds a lift sample by seeding coordinate jets at `point`.
template <class Immersion>
LiftSample sample_lift(const Immersion& immersion, std::vector<double> point, int order) {
  const int n = static_cast<int>(point.size());
  std::vector<MultiJet> coords;
  coords.reserve(n);
  for (int i = 0; i < n; ++i) coords.push_back(MultiJet::seed(i, point[i], n, order));
  return {std::move(point), immersion.lift(coords), immersion.ambient()};
}

FrameData frame_and_metric(const LiftSample& sample);

AmbientResiduals ambient_structure_residuals(const LiftSample& sample, const FrameData& frame);

/// Cubic form without the asymmetry gate; `asymmetry` records the raw defect.
ShapeTensor shape_tensor_unchecked(const LiftSample& sample, const FrameData& frame);
/// Throws ErrorCode::inconsistency when the raw asymmetry exceeds 1e-8.
ShapeTensor shape_tensor(const LiftSample& sample, const FrameData& frame);

CurvatureData intrinsic_curvature(const LiftSample& sample, const FrameData& frame);

NablaH nabla_h(const LiftSample& sample, const FrameData& frame, const CurvatureData& curv);

StructuralResiduals structural_residuals(const ShapeTensor& shape, const CurvatureData& curv,
                                         const NablaH& dh, double c_tilde);

/// Gauss residual alone; used for sensitivity checks on perturbed tensors.
double gauss_residual(const ShapeTensor& shape, const DenseTensor& riemann, double c_tilde);

/// Orthonormal bases (rows, frame coordinates) of the two coordinate factors.
std::pair<Matrix, Matrix> factor_bases(const FrameData& frame, FactorSplit split);

SectionalProfile sectional_curvature_profile(const CurvatureData& curv, const FrameData& frame,
                                             FactorSplit split, std::uint64_t seed,
                                             int planes_per_class = 64);

}  // namespace minlag
