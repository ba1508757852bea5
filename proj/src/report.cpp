#include <cmath>
#include <cstdio>
#include <sstream>

#include "minlag/audit.hpp"

namespace minlag {

namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json point_json(const std::vector<double>& p) { return json(p); }

json profile_json(const SectionalProfile& p) {
  return {{"c1_estimate", p.c1_estimate},     {"c2_estimate", p.c2_estimate},
          {"mixed_estimate", p.mixed_estimate}, {"c1_deviation", p.c1_deviation},
          {"c2_deviation", p.c2_deviation},   {"mixed_deviation", p.mixed_deviation},
          {"max_deviation", p.max_deviation}, {"c1_planes", p.c1_planes},
          {"c2_planes", p.c2_planes},         {"mixed_planes", p.mixed_planes}};
}

json spectral_json(const std::vector<SpectralRow>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"stage", r.stage},
                   {"lambda", r.lambda},
                   {"lambda_closed_form", r.lambda_closed_form},
                   {"mu", optional_number(r.mu)},
                   {"mu_closed_form", optional_number(r.mu_closed_form)},
                   {"epsilon", r.epsilon},
                   {"spread", r.spread},
                   {"stationarity", r.stationarity}});
  return out;
}

json verdict_json(const VerificationReport& r) {
  if (!r.verdict) return nullptr;
  const auto& v = *r.verdict;
  json rel = json::object();
  for (const auto& [k, x] : v.constraint_residuals) rel[k] = x;
  return {{"label", to_string(v.label)}, {"c1", v.c1},
          {"c2", v.c2},                  {"mixed", v.mixed},
          {"expected_c2", v.expected_c2}, {"reason", v.reason},
          {"constraint_residuals", rel}};
}

json config_json(const AuditConfig& c) {
  json j = spec_to_json(c.spec);
  j["sample_count"] = c.sample_count;
  j["seed"] = c.seed;
  j["jet_order"] = c.jet_order;
  json tol = json::object();
  for (const auto& n : Tolerances::names()) tol[n] = c.tolerances.tier(n);
  j["tolerances"] = tol;
  j["output_format"] = to_string(c.output_format);
  if (!c.points.empty()) j["points"] = c.points;
  return j;
}

void write_double(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  out += buf;
}

void write_json(std::string& out, const json& v, int indent) {
  const std::string pad(indent * 2, ' ');
  const std::string inner((indent + 1) * 2, ' ');
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {  // std::map keeps keys sorted
        if (!first) out += ",\n";
        first = false;
        out += inner + json(it.key()).dump() + ": ";
        write_json(out, it.value(), indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      bool scalar = true;
      for (const auto& e : v) scalar = scalar && !e.is_structured();
      if (scalar) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          write_json(out, v[i], indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        write_json(out, v[i], indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float: write_double(out, v.get<double>()); return;
    default: out += v.dump(); return;
  }
}

std::string fmt(double v, const char* f = "%.3e") {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string fmt_point(const std::vector<double>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + fmt(p[i], "%.6f");
  return s + ")";
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v, "%.10f") : "n/a"; }

void markdown_spectral(std::ostringstream& os, const VerificationReport& r) {
  if (r.spectral.empty()) return;
  os << "\n## Adapted frame\n\n"
     << "| k | lambda_kk | closed form | mu_k | closed form | epsilon | spread | stationarity |\n"
     << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& s : r.spectral)
    os << "| " << s.stage << " | " << fmt(s.lambda, "%.10f") << " | "
       << fmt(s.lambda_closed_form, "%.10f") << " | " << fmt_opt(s.mu) << " | "
       << fmt_opt(s.mu_closed_form) << " | " << (s.epsilon > 0 ? "+1" : s.epsilon < 0 ? "-1" : "0")
       << " | " << fmt(s.spread) << " | " << fmt(s.stationarity) << " |\n";
}

void markdown_verdict(std::ostringstream& os, const VerificationReport& r) {
  if (!r.split) return;
  os << "\n## Classification\n\n";
  os << "- split: n1 = " << r.split->n1 << ", n2 = " << r.split->n2 << "\n";
  if (r.profile)
    os << "- sectional curvature: c1 = " << fmt(r.profile->c1_estimate, "%.10f")
       << ", c2 = " << fmt(r.profile->c2_estimate, "%.10f")
       << ", mixed = " << fmt(r.profile->mixed_estimate) << "\n";
  if (r.verdict) {
    os << "- verdict: **" << to_string(r.verdict->label) << "**";
    if (!r.verdict->reason.empty()) os << " (" << r.verdict->reason << ")";
    os << "\n- expected c2 = " << fmt(r.verdict->expected_c2, "%.10f") << "\n";
  } else if (!r.verdict_error.empty()) {
    os << "- verdict unavailable: " << r.verdict_error << "\n";
  }
}

std::string markdown_report(const VerificationReport& r, int level) {
  std::ostringstream os;
  const std::string h(level, '#');
  os << h << " " << r.description << "\n\n";
  os << "- dimension " << r.dimension << ", ambient complex dimension " << r.ambient_dim << ", jet order "
     << r.config.jet_order << ", seed " << r.config.seed << "\n";
  os << "- points: " << r.evaluated << " evaluated, " << r.skipped.size() << " skipped, "
     << r.errors.size() << " errors\n\n";
  os << "| check | tier | tolerance | max | mean | point of max | status |\n"
     << "|---|---|---|---|---|---|---|\n";
  for (const auto& c : r.checks) {
    const char* status = !c.applicable ? "INFO" : c.passed ? "PASS" : "FAIL";
    os << "| " << c.name << " | " << c.tier << " | " << fmt(c.tolerance, "%.0e") << " | "
       << fmt(c.max) << " | " << fmt(c.mean) << " | ";
    if (c.argmax >= 0) os << "#" << c.argmax << " " << fmt_point(c.argmax_point);
    os << " | " << status << " |\n";
  }
  for (const auto& s : r.skipped)
    os << "\nskipped #" << s.index << " " << fmt_point(s.point) << ": " << s.reason;
  for (const auto& e : r.errors)
    os << "\nerror #" << e.index << " " << fmt_point(e.point) << ": " << e.code << ": " << e.message;
  if (!r.skipped.empty() || !r.errors.empty()) os << "\n";
  std::string body = os.str();
  std::ostringstream tail;
  markdown_spectral(tail, r);
  markdown_verdict(tail, r);
  tail << "\n**" << (r.passed ? "PASS" : "FAIL") << "**\n";
  std::string t = tail.str();
  if (level > 1) {
    // demote subsection headings inside a combined document
    std::string::size_type pos = 0;
    while ((pos = t.find("\n## ", pos)) != std::string::npos) {
      t.insert(pos + 1, std::string(level - 1, '#'));
      pos += 4;
    }
  }
  return body + t;
}

}  // namespace

json report_to_json(const VerificationReport& r) {
  json j;
  j["tool_version"] = kToolVersion;
  j["config"] = config_json(r.config);
  j["immersion"] = {{"description", r.description},
                    {"dimension", r.dimension},
                    {"ambient_dim", r.ambient_dim}};
  j["evaluated"] = r.evaluated;
  json skipped = json::array();
  for (const auto& s : r.skipped)
    skipped.push_back({{"index", s.index}, {"point", point_json(s.point)}, {"reason", s.reason}});
  j["skipped"] = skipped;
  json errors = json::array();
  for (const auto& e : r.errors)
    errors.push_back({{"index", e.index},
                      {"point", point_json(e.point)},
                      {"code", e.code},
                      {"message", e.message}});
  j["errors"] = errors;
  json checks = json::object();
  for (const auto& c : r.checks)
    checks[c.name] = {{"tier", c.tier},
                      {"tolerance", c.tolerance},
                      {"max", c.max},
                      {"mean", c.mean},
                      {"count", c.count},
                      {"argmax", c.argmax},
                      {"argmax_point", point_json(c.argmax_point)},
                      {"applicable", c.applicable},
                      {"passed", c.passed}};
  j["checks"] = checks;
  j["split"] = r.split ? json{{"n1", r.split->n1}, {"n2", r.split->n2}} : json(nullptr);
  j["profile"] = r.profile ? profile_json(*r.profile) : json(nullptr);
  j["spectral"] = spectral_json(r.spectral);
  j["verdict"] = verdict_json(r);
  if (!r.verdict_error.empty()) j["verdict_error"] = r.verdict_error;
  j["passed"] = r.passed;
  return j;
}

std::string emit_json(const json& value) {
  std::string out;
  write_json(out, value, 0);
  out += "\n";
  return out;
}

std::string emit_report(const VerificationReport& r, OutputFormat format) {
  if (format == OutputFormat::json) return emit_json(report_to_json(r));
  return markdown_report(r, 1);
}

std::string emit_frame(const VerificationReport& r, OutputFormat format) {
  if (format == OutputFormat::json) {
    json j;
    j["tool_version"] = kToolVersion;
    j["immersion"] = {{"description", r.description}, {"dimension", r.dimension}};
    j["point"] = r.evaluated > 0 && !r.checks.empty() ? point_json(r.checks.front().argmax_point)
                                                     : json(nullptr);
    j["split"] = r.split ? json{{"n1", r.split->n1}, {"n2", r.split->n2}} : json(nullptr);
    j["spectral"] = spectral_json(r.spectral);
    j["verdict"] = verdict_json(r);
    if (!r.verdict_error.empty()) j["verdict_error"] = r.verdict_error;
    json rel = json::object();
    for (const auto& c : r.checks)
      if (c.name.rfind("frame.", 0) == 0 || c.name == "spectral.closed_form") rel[c.name] = c.max;
    j["relations"] = rel;
    return emit_json(j);
  }
  std::ostringstream os;
  os << "# Adapted frame: " << r.description << "\n";
  if (r.evaluated > 0 && !r.checks.empty())
    os << "\nsample point " << fmt_point(r.checks.front().argmax_point) << "\n";
  if (!r.split) os << "\nno factor split for this immersion\n";
  markdown_spectral(os, r);
  if (!r.spectral.empty()) {
    os << "\n| relation | residual |\n|---|---|\n";
    for (const auto& c : r.checks)
      if (c.name.rfind("frame.", 0) == 0 || c.name == "spectral.closed_form")
        os << "| " << c.name << " | " << fmt(c.max) << " |\n";
  }
  markdown_verdict(os, r);
  return os.str();
}

std::string emit_reports(const std::vector<std::pair<std::string, VerificationReport>>& reports,
                         OutputFormat format) {
  bool all = true;
  for (const auto& [name, r] : reports) all = all && r.passed;
  if (format == OutputFormat::json) {
    json j;
    j["tool_version"] = kToolVersion;
    json rs = json::object();
    for (const auto& [name, r] : reports) rs[name] = report_to_json(r);
    j["reports"] = rs;
    j["passed"] = all;
    return emit_json(j);
  }
  std::ostringstream os;
  os << "# Catalog audit\n\n| entry | points | verdict | status |\n|---|---|---|---|\n";
  for (const auto& [name, r] : reports)
    os << "| " << name << " | " << r.evaluated << " | "
       << (r.verdict ? to_string(r.verdict->label) : "-") << " | " << (r.passed ? "PASS" : "FAIL")
       << " |\n";
  os << "\n**" << (all ? "PASS" : "FAIL") << "**\n";
  for (const auto& [name, r] : reports) os << "\n" << markdown_report(r, 2);
  return os.str();
}

std::string emit_catalog(OutputFormat format) {
  const auto schemas = catalog_schemas();
  if (format == OutputFormat::json) {
    json kinds = json::object();
    for (const auto& s : schemas)
      kinds[to_string(s.kind)] = {{"fields", s.fields}, {"summary", s.summary}};
    json builtins = json::array();
    for (const auto& b : builtin_audits()) builtins.push_back(b.name);
    return emit_json({{"tool_version", kToolVersion}, {"kinds", kinds}, {"builtins", builtins}});
  }
  std::ostringstream os;
  os << "# Catalog\n\n| kind | fields | summary |\n|---|---|---|\n";
  for (const auto& s : schemas)
    os << "| " << to_string(s.kind) << " | " << s.fields << " | " << s.summary << " |\n";
  os << "\nbuilt-in audits:";
  for (const auto& b : builtin_audits()) os << " " << b.name;
  os << "\n";
  return os.str();
}

}  // namespace minlag
