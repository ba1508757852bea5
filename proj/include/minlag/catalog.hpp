#pragma once

// Catalog of horizontal lifts. Every evaluator maps coordinate jets of its
// parameter domain to the jet of the lift; composite kinds hand sub-spans of
// the coordinates to their factors.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minlag/geometry.hpp"
#include "minlag/random.hpp"

namespace minlag {

struct JetShape {
  int num_vars = 0;
  int order = 1;
};

class Immersion {
 public:
  virtual ~Immersion() = default;

  virtual int dimension() const = 0;
  /// Complex dimension of the space containing the lift.
  virtual int ambient_dim() const = 0;
  virtual AmbientKind ambient() const { return AmbientKind::sphere_lift_cp; }
  virtual std::string describe() const = 0;

  /// Lift as a jet; `coords` holds dimension() coordinate jets of `shape`.
  virtual ComplexJetVector lift_on(std::span<const MultiJet> coords, JetShape shape) const = 0;

  /// Draws a parameter point from the sampling domain.
  virtual std::vector<double> sample_point(StreamRng& rng) const = 0;
  /// Throws ErrorCode::argument when the point lies outside the domain.
  void check_domain(std::span<const double> point) const;

  ComplexJetVector lift(std::span<const MultiJet> coords) const;
  /// Value of the lift at a point.
  ComplexVector evaluate(std::span<const double> point) const;

 protected:
  /// Domain test for a point of the right length.
  virtual void check_inside(std::span<const double> point) const = 0;
};

using ImmersionPtr = std::shared_ptr<const Immersion>;

// Orthographic charts of S^m: chart 0 is centred at +e_m, chart 1 at -e_m,
// charts 2k+2 and 2k+3 at +e_k and -e_k for k < m. Chart coordinates are the
// remaining axes in increasing order; the validity radius is 0.9.
inline constexpr double kChartRadius = 0.9;
int sphere_chart_count(int m);
std::vector<double> sphere_chart_point(int m, int chart, std::span<const double> s);
std::vector<double> sphere_chart_coords(int m, int chart, std::span<const double> y);

struct PhaseCurveSpec {
  double r1 = 0.0;
  double r2 = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
};

struct LegendreCurveSpec {
  double r1 = 0.0;
  double r2 = 0.0;
  double a = 0.0;

  /// Frequencies (r2/r1) a and -(r1/r2) a.
  PhaseCurveSpec phases() const;
};

ImmersionPtr make_totally_geodesic(int n);
ImmersionPtr make_flat_torus(int n);
/// Point lift (1) in C, dimension 0.
ImmersionPtr make_point();
/// Real unit sphere S^m in R^{m+1} inside C^{m+1}; totally geodesic RP^m.
ImmersionPtr make_real_sphere(int m, int chart = 0, std::optional<Matrix> rotation = {});
ImmersionPtr make_product_immersion(int n1, int n2, int chart = 0,
                                    std::optional<Matrix> sphere_rotation = {});
/// t -> (r1 e^{i w1 t}, r2 e^{i w2 t}); Legendre only for matching frequencies.
ImmersionPtr make_phase_curve(const PhaseCurveSpec& spec);
ImmersionPtr make_legendre_curve(const LegendreCurveSpec& spec);
/// (t, p, q) -> (g1(t) psi1(p), g2(t) psi2(q)).
ImmersionPtr warped_product(ImmersionPtr lift1, ImmersionPtr lift2, ImmersionPtr curve);
/// (t, p) -> (sqrt(n/(n+1)) e^{it/(n+1)} psi1(p), sqrt(1/(n+1)) e^{-int/(n+1)}).
ImmersionPtr calabi_point_product(ImmersionPtr lift1);
ImmersionPtr scaled_immersion(ImmersionPtr inner, double factor);
/// Complex conjugate of the lift.
ImmersionPtr conjugated_immersion(ImmersionPtr inner);

enum class ImmersionKind {
  totally_geodesic,
  flat_torus,
  product_eq381,
  warped_product,
  calabi_point_product,
  real_sphere,
  point,
};

const char* to_string(ImmersionKind kind);
std::optional<ImmersionKind> parse_kind(const std::string& name);

struct CurveConstants {
  double r1 = 0.0;
  double r2 = 0.0;
  double a = 0.0;
  std::optional<double> omega1;  // both set: explicit phase curve
  std::optional<double> omega2;
};

struct ImmersionSpec {
  ImmersionKind kind = ImmersionKind::flat_torus;
  int n = 0;
  int n1 = 0;
  int n2 = 0;
  double c_tilde = 1.0;
  std::vector<int> sign_choices;  // empty: all -1
  int sphere_chart = 0;
  std::optional<CurveConstants> constants;
  std::vector<ImmersionSpec> factors;
  std::optional<FactorSplit> split;
  std::optional<Matrix> sphere_rotation;

  /// Throws ErrorCode::validation on inconsistent fields.
  void validate() const;
  int dimension() const;
  /// Declared or implied factor split, if any.
  std::optional<FactorSplit> factor_split() const;
  /// Whether the catalog entry has parallel second fundamental form.
  bool expects_parallel() const;
  /// Whether the entry is expected to be minimal.
  bool expects_minimal() const;
};

ImmersionPtr make_immersion(const ImmersionSpec& spec);

/// Minimal warping constants r1 = sqrt((n1+1)/(n+1)), r2 = sqrt((n2+1)/(n+1)).
CurveConstants minimal_warping_constants(int n1, int n2, double a = 1.0);

struct KindSchema {
  ImmersionKind kind;
  std::string fields;
  std::string summary;
};
std::vector<KindSchema> catalog_schemas();

}  // namespace minlag
