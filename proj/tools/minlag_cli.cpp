#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "minlag/minlag.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Overrides {
  std::optional<int> samples;
  std::optional<uint64_t> seed;
  std::optional<int> order;
  std::optional<std::string> format;
  std::vector<std::string> tolerances;
  int workers = 1;
};

int report_error(minlag_status st, const char* what) {
  std::cerr << "minlag: " << what << ": " << minlag_last_error() << " (status " << st << ")\n";
  return st == MINLAG_ERR_PARSE || st == MINLAG_ERR_VALIDATION || st == MINLAG_ERR_ARGUMENT
             ? kExitConfig
             : kExitFail;
}

bool format_value(const std::string& s, minlag_format& out) {
  if (s == "json") out = MINLAG_FORMAT_JSON;
  else if (s == "markdown" || s == "md") out = MINLAG_FORMAT_MARKDOWN;
  else return false;
  return true;
}

// Returns 0 or an exit code.
int apply(minlag_config* cfg, const Overrides& o) {
  minlag_status st = MINLAG_OK;
  if (o.samples && (st = minlag_config_set_samples(cfg, *o.samples))) return report_error(st, "--samples");
  if (o.seed && (st = minlag_config_set_seed(cfg, *o.seed))) return report_error(st, "--seed");
  if (o.order && (st = minlag_config_set_order(cfg, *o.order))) return report_error(st, "--order");
  if (o.format) {
    minlag_format f;
    if (!format_value(*o.format, f)) {
      std::cerr << "minlag: --format: expected json or markdown\n";
      return kExitConfig;
    }
    minlag_config_set_format(cfg, f);
  }
  for (const auto& t : o.tolerances) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      std::cerr << "minlag: --tol-tier expects name=value\n";
      return kExitConfig;
    }
    double v = 0.0;
    try {
      v = std::stod(t.substr(eq + 1));
    } catch (const std::exception&) {
      std::cerr << "minlag: --tol-tier: bad value in '" << t << "'\n";
      return kExitConfig;
    }
    if ((st = minlag_config_set_tolerance(cfg, t.substr(0, eq).c_str(), v)))
      return report_error(st, "--tol-tier");
  }
  if ((st = minlag_config_set_workers(cfg, o.workers))) return report_error(st, "--workers");
  return 0;
}

int load(const std::string& path, const Overrides& o, minlag_config** cfg) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "minlag: cannot read " << path << "\n";
    return kExitConfig;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  if (minlag_status st = minlag_config_parse(ss.str().c_str(), cfg)) return report_error(st, path.c_str());
  if (int rc = apply(*cfg, o)) {
    minlag_config_free(*cfg);
    return rc;
  }
  return 0;
}

void print(char* s) {
  std::fputs(s, stdout);
  minlag_string_free(s);
}

minlag_format format_of(const minlag_config* cfg) {
  minlag_format f = MINLAG_FORMAT_JSON;
  minlag_config_get_format(cfg, &f);
  return f;
}

int cmd_verify(const std::string& path, const Overrides& o) {
  minlag_config* cfg = nullptr;
  if (int rc = load(path, o, &cfg)) return rc;
  minlag_report* rep = nullptr;
  minlag_status st = minlag_run(cfg, &rep);
  const minlag_format f = format_of(cfg);
  minlag_config_free(cfg);
  if (st) return report_error(st, "verify");
  char* text = nullptr;
  if ((st = minlag_report_emit(rep, f, &text))) {
    minlag_report_free(rep);
    return report_error(st, "emit");
  }
  print(text);
  const int rc = minlag_report_passed(rep) ? kExitPass : kExitFail;
  minlag_report_free(rep);
  return rc;
}

int cmd_frame(const std::string& path, const Overrides& o) {
  minlag_config* cfg = nullptr;
  if (int rc = load(path, o, &cfg)) return rc;
  char* text = nullptr;
  minlag_status st = minlag_frame_table(cfg, format_of(cfg), &text);
  minlag_config_free(cfg);
  if (st) return report_error(st, "frame");
  print(text);
  return kExitPass;
}

int cmd_catalog(const Overrides& o) {
  minlag_format f = MINLAG_FORMAT_MARKDOWN;
  if (o.format && !format_value(*o.format, f)) {
    std::cerr << "minlag: --format: expected json or markdown\n";
    return kExitConfig;
  }
  char* text = nullptr;
  if (minlag_status st = minlag_catalog_describe(f, &text)) return report_error(st, "catalog");
  print(text);
  return kExitPass;
}

int cmd_audit_all(const Overrides& o) {
  std::vector<minlag_report*> reports;
  std::vector<const char*> names;
  minlag_format f = MINLAG_FORMAT_JSON;
  int rc = kExitPass;
  for (size_t i = 0; i < minlag_builtin_count(); ++i) {
    minlag_config* cfg = nullptr;
    const char* name = nullptr;
    minlag_status st = minlag_builtin(i, &name, &cfg);
    if (st) {
      rc = report_error(st, "builtin");
      break;
    }
    if ((rc = apply(cfg, o))) {
      minlag_config_free(cfg);
      break;
    }
    f = format_of(cfg);
    minlag_report* rep = nullptr;
    st = minlag_run(cfg, &rep);
    minlag_config_free(cfg);
    if (st) {
      rc = report_error(st, name);
      break;
    }
    reports.push_back(rep);
    names.push_back(name);
  }
  if (rc == kExitPass) {
    char* text = nullptr;
    if (minlag_status st = minlag_reports_emit(reports.data(), names.data(), reports.size(), f, &text)) {
      rc = report_error(st, "emit");
    } else {
      print(text);
      for (auto* r : reports)
        if (!minlag_report_passed(r)) rc = kExitFail;
    }
  }
  for (auto* r : reports) minlag_report_free(r);
  return rc;
}

void add_overrides(CLI::App* app, Overrides& o) {
  app->add_option("--samples", o.samples, "number of sample points")->check(CLI::PositiveNumber);
  app->add_option("--seed", o.seed, "sampling seed");
  app->add_option("--order", o.order, "jet order (3 or 4)")->check(CLI::IsMember({3, 4}));
  app->add_option("--tol-tier", o.tolerances, "override a tolerance tier, name=value");
  app->add_option("--format", o.format, "json or markdown");
  app->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verifier for minimal Lagrangian immersions in complex projective space"};
  app.set_version_flag("--version", std::string(minlag_version()));
  app.require_subcommand(1);

  Overrides o;
  std::string file;

  auto* catalog = app.add_subcommand("catalog", "list immersion kinds and built-in audits");
  catalog->add_option("--format", o.format, "json or markdown");

  auto* verify = app.add_subcommand("verify", "audit an immersion spec file");
  verify->add_option("file", file, "JSON spec")->required();
  add_overrides(verify, o);

  auto* frame = app.add_subcommand("frame", "adapted frame at the first sample point");
  frame->add_option("file", file, "JSON spec")->required();
  add_overrides(frame, o);

  auto* audit = app.add_subcommand("audit-all", "audit every built-in catalog entry");
  add_overrides(audit, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  if (*catalog) return cmd_catalog(o);
  if (*verify) return cmd_verify(file, o);
  if (*frame) return cmd_frame(file, o);
  return cmd_audit_all(o);
}
