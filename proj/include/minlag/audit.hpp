#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "minlag/catalog.hpp"
#include "minlag/classifier.hpp"

namespace minlag {

inline constexpr const char* kToolVersion = "1.0.0";

struct Tolerances {
  double lift = 1e-12;          // algebraic identities of the lift
  double shape = 1e-10;         // cubic-form symmetry
  double minimality = 1e-9;     // trace of h
  double third_order = 1e-8;    // Gauss, Codazzi, Ricci, cyclic identity, nabla h, curvature
  double fourth_order = 1e-7;   // Ricci identity, adapted-frame relations
  double spectral = 1e-6;       // closed forms of the spectral data

  static const std::vector<std::string>& names();
  /// Throws ErrorCode::validation for an unknown tier.
  double& tier(const std::string& name);
  double tier(const std::string& name) const;
};

enum class OutputFormat { json, markdown };
const char* to_string(OutputFormat f);
std::optional<OutputFormat> parse_format(const std::string& s);

struct AuditConfig {
  ImmersionSpec spec;
  int sample_count = 100;
  std::uint64_t seed = 42;
  int jet_order = 4;
  Tolerances tolerances;
  OutputFormat output_format = OutputFormat::json;
  std::vector<std::vector<double>> points;  // explicit points, audited after the samples
  int workers = 1;                          // not part of the report

  void validate() const;
};

/// Parses a JSON spec file. Schema violations raise ErrorCode::parse with a
/// field path, invariant violations ErrorCode::validation.
AuditConfig parse_spec(const std::string& text);
nlohmann::json spec_to_json(const ImmersionSpec& spec);

struct CheckResult {
  std::string name;
  std::string tier;
  double tolerance = 0.0;
  double max = 0.0;
  double mean = 0.0;
  int count = 0;
  int argmax = -1;
  std::vector<double> argmax_point;
  bool applicable = true;  // informational when false
  bool passed = true;
};

struct SkippedPoint {
  int index = 0;
  std::vector<double> point;
  std::string reason;
};

struct PointError {
  int index = 0;
  std::vector<double> point;
  std::string code;
  std::string message;
};

struct SpectralRow {
  int stage = 0;
  double lambda = 0.0;
  double lambda_closed_form = 0.0;
  std::optional<double> mu;
  std::optional<double> mu_closed_form;
  int epsilon = 0;
  double spread = 0.0;  // max deviation across points
  double stationarity = 0.0;
};

struct VerificationReport {
  AuditConfig config;
  std::string description;
  int dimension = 0;
  int ambient_dim = 0;
  int evaluated = 0;
  std::vector<SkippedPoint> skipped;
  std::vector<PointError> errors;
  std::vector<CheckResult> checks;
  std::optional<FactorSplit> split;
  std::optional<SectionalProfile> profile;  // means and max deviations over points
  std::vector<SpectralRow> spectral;
  std::optional<ClassificationVerdict> verdict;
  std::string verdict_error;
  bool passed = false;

  const CheckResult* find(const std::string& name) const;
};

VerificationReport run_audit(const AuditConfig& config);

/// Spectral table at the first admissible sample point.
VerificationReport run_frame(const AuditConfig& config);

nlohmann::json report_to_json(const VerificationReport& report);
/// Sorted-key JSON; doubles in scientific notation with 17 significant digits.
std::string emit_json(const nlohmann::json& value);
std::string emit_report(const VerificationReport& report, OutputFormat format);
std::string emit_frame(const VerificationReport& report, OutputFormat format);
std::string emit_reports(const std::vector<std::pair<std::string, VerificationReport>>& reports,
                         OutputFormat format);
std::string emit_catalog(OutputFormat format);

struct BuiltinAudit {
  std::string name;
  AuditConfig config;
};
std::vector<BuiltinAudit> builtin_audits();

}  // namespace minlag
