#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace testing;

namespace {

std::pair<ErrorCode, std::string> parse_error(const std::string& text) {
  try {
    (void)parse_spec(text);
  } catch (const Error& e) {
    return {e.code(), e.what()};
  }
  FAIL("expected an error for " << text);
  return {ErrorCode::argument, ""};
}

AuditConfig quick(const std::string& text, int samples = 8) {
  AuditConfig c = parse_spec(text);
  c.sample_count = samples;
  return c;
}

}  // namespace

TEST_CASE("parse_spec fills defaults") {
  const AuditConfig c = parse_spec(R"({"kind":"product_eq381","n1":1,"n2":2})");
  CHECK(c.spec.kind == ImmersionKind::product_eq381);
  CHECK(c.spec.n == 3);
  CHECK(c.spec.c_tilde == 1.0);
  CHECK(c.sample_count == 100);
  CHECK(c.seed == 42);
  CHECK(c.jet_order == 4);
  CHECK(c.output_format == OutputFormat::json);
  CHECK(c.tolerances.third_order == 1e-8);

  const AuditConfig t = parse_spec(R"({"kind":"flat_torus","n1":0,"n2":0,"n":2})");
  CHECK(t.spec.n == 2);
  CHECK(parse_spec(R"({"kind":"totally_geodesic","n":2})").spec.c_tilde == 0.0);

  const AuditConfig full = parse_spec(R"({"kind":"warped_product",
      "factors":[{"kind":"real_sphere","n":1},{"kind":"real_sphere","n":1}],
      "constants":{"r1":0.6,"r2":0.8,"a":1.0}, "split":[1,2],
      "sample_count":7, "seed":18446744073709551615, "jet_order":3,
      "tolerances":{"lift":1e-11}, "output_format":"markdown", "points":[[0.1,0.2,0.3]]})");
  CHECK(full.spec.factors.size() == 2);
  CHECK(full.spec.constants->r2 == 0.8);
  CHECK(full.sample_count == 7);
  CHECK(full.seed == 18446744073709551615ull);
  CHECK(full.jet_order == 3);
  CHECK(full.tolerances.lift == 1e-11);
  CHECK(full.output_format == OutputFormat::markdown);
  CHECK(full.points.size() == 1);
}

TEST_CASE("parse_spec errors carry a field path") {
  auto [c1, m1] = parse_error(R"({"kind":"product_eq381","n1":0,"n2":2})");
  CHECK(c1 == ErrorCode::validation);
  auto [c2, m2] = parse_error(R"({"kind":"flat_torus","n":2,"bogus":1})");
  CHECK(c2 == ErrorCode::parse);
  CHECK(m2.find("$.bogus") != std::string::npos);
  auto [c3, m3] = parse_error(R"({"kind":"flat_torus","n":"two"})");
  CHECK(c3 == ErrorCode::parse);
  CHECK(m3.find("$.n") != std::string::npos);
  auto [c4, m4] = parse_error(R"({"kind":"warped_product","factors":[{"kind":"moebius"}]})");
  CHECK(c4 == ErrorCode::parse);
  CHECK(m4.find("$.factors[0].kind") != std::string::npos);
  auto [c5, m5] = parse_error(R"({"kind":"flat_torus","n":2,"tolerances":{"lift":-1}})");
  CHECK(c5 == ErrorCode::validation);
  auto [c6, m6] = parse_error(R"({"kind":"flat_torus","n":2,"tolerances":{"loose":1}})");
  CHECK(c6 == ErrorCode::parse);
  CHECK(m6.find("$.tolerances.loose") != std::string::npos);
  CHECK(parse_error(R"({"kind":"flat_torus","n":2,"sample_count":0})").first == ErrorCode::validation);
  CHECK(parse_error(R"({"kind":"flat_torus","n":2,"jet_order":5})").first == ErrorCode::validation);
  CHECK(parse_error(R"({"kind":"flat_torus",)").first == ErrorCode::parse);
  CHECK(parse_error(R"([1,2])").first == ErrorCode::parse);
  CHECK(parse_error(R"({"n":2})").first == ErrorCode::parse);
  CHECK(parse_error(R"({"kind":"warped_product","factors":[{"kind":"real_sphere","n":1},
      {"kind":"real_sphere","n":1}],"constants":{"r1":0.5,"r2":0.5,"a":1}})").first ==
        ErrorCode::validation);
  CHECK(parse_error(R"({"kind":"flat_torus","n":2,"n1":1})").first == ErrorCode::validation);
}

TEST_CASE("product audit reports the predicted curvature") {
  const VerificationReport r = run_audit(quick(R"({"kind":"product_eq381","n1":1,"n2":2})"));
  CHECK(r.passed);
  REQUIRE(r.verdict);
  CHECK(r.verdict->label == CaseLabel::case_i);
  CHECK(std::abs(r.profile->c2_estimate - 4.0 / 3.0) < 1e-8);
  CHECK(r.evaluated == 8);
  REQUIRE(r.spectral.size() == 1);
  CHECK(r.spectral[0].lambda == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("torus audit") {
  const VerificationReport r = run_audit(quick(R"({"kind":"flat_torus","n":3})"));
  CHECK(r.passed);
  CHECK(r.verdict->label == CaseLabel::flat_both);
  CHECK(max_check(r, "nabla_h") < 1e-8);
  CHECK(r.find("nabla_h")->applicable);
}

TEST_CASE("non-Legendre warped product fails the Lagrangian checks") {
  const VerificationReport r = run_audit(quick(R"({"kind":"warped_product",
      "factors":[{"kind":"real_sphere","n":1},{"kind":"real_sphere","n":1}],
      "constants":{"r1":0.7071067811865476,"r2":0.7071067811865476,"omega1":1,"omega2":1}})"));
  CHECK_FALSE(r.passed);
  const double worst = std::max(max_check(r, "ambient.lagrangian"), max_check(r, "ambient.horizontality"));
  CHECK(worst >= 1e-3);
  CHECK_FALSE(r.find("ambient.horizontality")->passed);
  CHECK_FALSE(r.find("nabla_h")->applicable);
}

TEST_CASE("reports are deterministic and round-trip") {
  const AuditConfig c = quick(R"({"kind":"product_eq381","n1":2,"n2":1})", 6);
  const std::string a = emit_report(run_audit(c), OutputFormat::json);
  const std::string b = emit_report(run_audit(c), OutputFormat::json);
  CHECK(a == b);
  const auto parsed = nlohmann::json::parse(a);
  CHECK(emit_json(parsed) == a);
  // the echoed config reproduces the report
  const AuditConfig again = parse_spec(parsed["config"].dump());
  CHECK(emit_report(run_audit(again), OutputFormat::json) == a);
  CHECK(parsed["tool_version"] == kToolVersion);
}

TEST_CASE("parallel and serial runs agree") {
  AuditConfig c = quick(R"({"kind":"product_eq381","n1":1,"n2":3})", 12);
  const std::string serial = emit_report(run_audit(c), OutputFormat::json);
  for (int w : {2, 3, 8}) {
    c.workers = w;
    CHECK(emit_report(run_audit(c), OutputFormat::json) == serial);
  }
}

TEST_CASE("a point outside the chart is skipped without touching the others") {
  AuditConfig c = quick(R"({"kind":"product_eq381","n1":1,"n2":2})", 5);
  const VerificationReport base = run_audit(c);
  c.points = {{0.5, 0.95, 0.0}};
  const VerificationReport r = run_audit(c);
  REQUIRE(r.skipped.size() == 1);
  CHECK(r.skipped[0].index == 5);
  CHECK(r.skipped[0].reason.find("argument") != std::string::npos);
  CHECK(r.evaluated == base.evaluated);
  REQUIRE(r.checks.size() == base.checks.size());
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    CHECK(r.checks[i].max == base.checks[i].max);
    CHECK(r.checks[i].mean == base.checks[i].mean);
    CHECK(r.checks[i].argmax == base.checks[i].argmax);
  }
  CHECK(r.passed);
}

TEST_CASE("markdown names the failing identity and its point") {
  AuditConfig c = quick(R"({"kind":"product_eq381","n1":1,"n2":2})", 4);
  c.tolerances.third_order = 1e-300;
  const VerificationReport r = run_audit(c);
  CHECK_FALSE(r.passed);
  const std::string md = emit_report(r, OutputFormat::markdown);
  const CheckResult* g = r.find("gauss");
  REQUIRE(g);
  CHECK_FALSE(g->passed);
  std::string row;
  std::istringstream in(md);
  for (std::string line; std::getline(in, line);)
    if (line.rfind("| gauss |", 0) == 0) row = line;
  CHECK(row.find("FAIL") != std::string::npos);
  CHECK(row.find("#" + std::to_string(g->argmax) + " (") != std::string::npos);
  CHECK(md.find("| k | lambda_kk | closed form | mu_k |") != std::string::npos);
  CHECK(md.find("**FAIL**") != std::string::npos);
}

TEST_CASE("order 3 drops the Ricci identity") {
  AuditConfig c = quick(R"({"kind":"flat_torus","n":2})", 3);
  c.jet_order = 3;
  const VerificationReport r = run_audit(c);
  CHECK_FALSE(r.find("ricci_identity")->applicable);
  CHECK(r.passed);
}

TEST_CASE("frame output") {
  const AuditConfig c = parse_spec(R"({"kind":"product_eq381","n1":2,"n2":2})");
  const VerificationReport r = run_frame(c);
  CHECK(r.evaluated == 1);
  const auto j = nlohmann::json::parse(emit_frame(r, OutputFormat::json));
  CHECK(j["spectral"].size() == 2);
  CHECK(j["spectral"][0]["lambda"].get<double>() == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(emit_frame(r, OutputFormat::markdown).find("| 2 |") != std::string::npos);
}

TEST_CASE("catalog and combined output") {
  const auto j = nlohmann::json::parse(emit_catalog(OutputFormat::json));
  CHECK(j["kinds"].contains("product_eq381"));
  CHECK(j["builtins"].size() == builtin_audits().size());
  std::vector<std::pair<std::string, VerificationReport>> rs;
  rs.push_back({"torus", run_audit(quick(R"({"kind":"flat_torus","n":1})", 2))});
  const auto all = nlohmann::json::parse(emit_reports(rs, OutputFormat::json));
  CHECK(all["passed"] == true);
  CHECK(all["reports"].contains("torus"));
}

TEST_CASE("json doubles keep 17 significant digits") {
  nlohmann::json j = {{"x", 0.1}, {"y", 1.0}, {"z", std::nan("")}, {"w", 1.0 / 3.0}};
  const std::string s = emit_json(j);
  CHECK(s.find("1.0000000000000001e-01") != std::string::npos);
  CHECK(s.find("\"y\": 1.0000000000000000e+00") != std::string::npos);
  CHECK(s.find("\"z\": null") != std::string::npos);
  CHECK(nlohmann::json::parse(s)["w"].get<double>() == 1.0 / 3.0);
}
