#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minlag/geometry.hpp"

namespace minlag {

struct MaximizerOptions {
  int restarts = 32;
  std::uint64_t seed = 0x1ce5;
  double gradient_tolerance = 1e-12;
  int max_iterations = 20000;
  bool polish = true;  // Newton refinement of the best candidate
};

struct CubicMaximum {
  Vector u;                  // unit vector, frame coordinates
  double value = 0.0;        // f(u*)
  double stationarity = 0.0; // |P(A_{Ju} u) - f(u) u|
  bool null_form = false;    // max |C| on the subspace below 1e-10
};

/// f(u) = sum C_abc u_a u_b u_c.
double cubic_value(const DenseTensor& c, const Vector& u);

/// Maximizes f over the unit sphere of the row span of `subspace`
/// (orthonormal rows in frame coordinates).
CubicMaximum maximize_cubic_form(const DenseTensor& c, const Matrix& subspace,
                                 const MaximizerOptions& opts = {});

struct AdaptedFrame {
  int n1 = 0;
  int n2 = 0;
  Matrix X;  // rows
  Matrix Y;  // rows
  std::vector<double> lambda;              // lambda_{i,i}
  std::vector<std::optional<double>> mu;   // undefined when the complement is empty
  std::vector<int> epsilon;                // sign of 2 mu - lambda; 0 when mu undefined
  std::vector<double> f_values;
  std::vector<double> stationarity;
  std::vector<double> block_residual;      // off-diagonal part of the compressed A_{JX_k}
  std::vector<int> null_stages;
};

struct FrameOptions {
  MaximizerOptions maximizer;
  bool strict = true;
  double structure_tolerance = 1e-7;
};

/// `factor1`, `factor2`: orthonormal rows spanning the two factors.
AdaptedFrame extract_adapted_frame(const DenseTensor& c, const Matrix& factor1,
                                   const Matrix& factor2, const FrameOptions& opts = {});

/// Closed-form lambda_{k,k}, mu_k for the realized branch: mu_1^2 = c/n,
/// (n-k) mu_{k+1}^2 = c + sum_{i<=k} mu_i^2, lambda_{k,k} = -(n-k) mu_k.
struct ClosedFormSpectrum {
  std::vector<double> lambda;
  std::vector<std::optional<double>> mu;
};
ClosedFormSpectrum closed_form_spectrum(int n1, int n2, double c_tilde);

using RelationMap = std::map<std::string, double>;

/// Residuals of the adapted-frame structure:
///   mixed_block            <A_{JX_i} X_j, Y_k>
///   y_isotropy             A_{JX_i} Y_j - mu_i Y_j
///   mu_square_sum          sum mu_i^2 - n1 c / (n2 + 1)
///   y_block                A_{JY_i} Y_j - delta_ij sum mu_k X_k
///   lower_triangular       X-block pattern of A_J
///   trace                  lambda_{i,i} + (n - i) mu_i
///   quadratic              mu_k^2 - lambda_{k,k} mu_k - c - sum_{i<k} mu_i^2
///   recursion              (n - k) mu_{k+1}^2 - c - sum_{i<=k} mu_i^2
///   lambda_closed_form     lambda_{1,1} - (n - 1) sqrt(c / n)
/// Vacuous relations report 0.
RelationMap verify_frame_relations(const AdaptedFrame& frame, const DenseTensor& c,
                                   double c_tilde);

enum class CaseLabel { flat_both, case_i, inconsistent };
const char* to_string(CaseLabel label);

struct ClassificationVerdict {
  CaseLabel label = CaseLabel::inconsistent;
  double c1 = 0.0;
  double c2 = 0.0;
  double mixed = 0.0;
  double expected_c2 = 0.0;  // (n1 + n2 + 1) / (n2 + 1) c
  std::string reason;
  RelationMap constraint_residuals;
};

struct ClassifyTolerances {
  double curvature = 1e-8;
  double relations = 1e-7;
};

/// Throws ErrorCode::not_space_form_product when a factor's sectional
/// curvature deviates by more than 10x the curvature tolerance.
ClassificationVerdict classify_case(const SectionalProfile& profile, const RelationMap& relations,
                                    FactorSplit split, double c_tilde,
                                    const ClassifyTolerances& tol = {});

}  // namespace minlag
