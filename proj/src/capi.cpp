#include "minlag/minlag.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <string>

#include "minlag/audit.hpp"
#include "minlag/error.hpp"

struct minlag_config {
  minlag::AuditConfig cfg;
};

struct minlag_report {
  minlag::VerificationReport rep;
};

namespace {

thread_local std::string g_last_error;

minlag_status set_error(minlag_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <class F>
minlag_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return MINLAG_OK;
  } catch (const minlag::Error& e) {
    return set_error(static_cast<minlag_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::exception& e) {
    return set_error(MINLAG_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(MINLAG_ERR_INTERNAL, "unknown failure");
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

minlag::OutputFormat to_format(minlag_format f) {
  if (f == MINLAG_FORMAT_JSON) return minlag::OutputFormat::json;
  if (f == MINLAG_FORMAT_MARKDOWN) return minlag::OutputFormat::markdown;
  minlag::fail(minlag::ErrorCode::argument, "unknown output format");
}

void require(const void* p, const char* what) {
  if (!p) minlag::fail(minlag::ErrorCode::argument, std::string(what) + " is NULL");
}

const std::vector<minlag::BuiltinAudit>& builtins() {
  static const auto b = minlag::builtin_audits();
  return b;
}

}  // namespace

extern "C" {

const char* minlag_version(void) { return minlag::kToolVersion; }

const char* minlag_last_error(void) { return g_last_error.c_str(); }

minlag_status minlag_config_parse(const char* json_text, minlag_config** out) {
  return guarded([&] {
    require(json_text, "json_text");
    require(out, "out");
    *out = nullptr;
    auto c = std::make_unique<minlag_config>();
    c->cfg = minlag::parse_spec(json_text);
    *out = c.release();
  });
}

size_t minlag_builtin_count(void) { return builtins().size(); }

minlag_status minlag_builtin(size_t index, const char** name, minlag_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    if (index >= builtins().size()) minlag::fail(minlag::ErrorCode::argument, "builtin index out of range");
    if (name) *name = builtins()[index].name.c_str();
    *out = new minlag_config{builtins()[index].config};
  });
}

void minlag_config_free(minlag_config* config) { delete config; }

minlag_status minlag_config_set_samples(minlag_config* config, int samples) {
  return guarded([&] {
    require(config, "config");
    if (samples < 1) minlag::fail(minlag::ErrorCode::validation, "samples must be >= 1");
    config->cfg.sample_count = samples;
  });
}

minlag_status minlag_config_set_seed(minlag_config* config, uint64_t seed) {
  return guarded([&] {
    require(config, "config");
    config->cfg.seed = seed;
  });
}

minlag_status minlag_config_set_order(minlag_config* config, int order) {
  return guarded([&] {
    require(config, "config");
    if (order != 3 && order != 4) minlag::fail(minlag::ErrorCode::validation, "order must be 3 or 4");
    config->cfg.jet_order = order;
  });
}

minlag_status minlag_config_set_tolerance(minlag_config* config, const char* tier, double value) {
  return guarded([&] {
    require(config, "config");
    require(tier, "tier");
    if (!(value > 0.0)) minlag::fail(minlag::ErrorCode::validation, "tolerance must be positive");
    config->cfg.tolerances.tier(tier) = value;
  });
}

minlag_status minlag_config_set_workers(minlag_config* config, int workers) {
  return guarded([&] {
    require(config, "config");
    if (workers < 1) minlag::fail(minlag::ErrorCode::validation, "workers must be >= 1");
    config->cfg.workers = workers;
  });
}

minlag_status minlag_config_set_format(minlag_config* config, minlag_format format) {
  return guarded([&] {
    require(config, "config");
    config->cfg.output_format = to_format(format);
  });
}

minlag_status minlag_config_get_format(const minlag_config* config, minlag_format* out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    *out = config->cfg.output_format == minlag::OutputFormat::json ? MINLAG_FORMAT_JSON
                                                                   : MINLAG_FORMAT_MARKDOWN;
  });
}

minlag_status minlag_run(const minlag_config* config, minlag_report** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    *out = nullptr;
    auto r = std::make_unique<minlag_report>();
    r->rep = minlag::run_audit(config->cfg);
    *out = r.release();
  });
}

int minlag_report_passed(const minlag_report* report) { return report && report->rep.passed ? 1 : 0; }

minlag_status minlag_report_emit(const minlag_report* report, minlag_format format, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = dup(minlag::emit_report(report->rep, to_format(format)));
  });
}

void minlag_report_free(minlag_report* report) { delete report; }

minlag_status minlag_frame_table(const minlag_config* config, minlag_format format, char** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    const auto rep = minlag::run_frame(config->cfg);
    *out = dup(minlag::emit_frame(rep, to_format(format)));
  });
}

minlag_status minlag_catalog_describe(minlag_format format, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = dup(minlag::emit_catalog(to_format(format)));
  });
}

minlag_status minlag_reports_emit(const minlag_report* const* reports, const char* const* names,
                                  size_t count, minlag_format format, char** out) {
  return guarded([&] {
    require(out, "out");
    if (count) require(reports, "reports");
    std::vector<std::pair<std::string, minlag::VerificationReport>> all;
    for (size_t i = 0; i < count; ++i) {
      require(reports[i], "report");
      std::string name = names && names[i] ? names[i] : "report_" + std::to_string(i);
      all.emplace_back(std::move(name), reports[i]->rep);
    }
    *out = dup(minlag::emit_reports(all, to_format(format)));
  });
}

void minlag_string_free(char* s) { std::free(s); }

}  // extern "C"
