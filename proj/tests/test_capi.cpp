#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "minlag/minlag.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  minlag_string_free(s);
  return out;
}

minlag_config* parse(const char* text) {
  minlag_config* c = nullptr;
  REQUIRE(minlag_config_parse(text, &c) == MINLAG_OK);
  REQUIRE(c);
  return c;
}

}  // namespace

TEST_CASE("version and catalog") {
  CHECK(std::string(minlag_version()) == "1.0.0");
  char* text = nullptr;
  REQUIRE(minlag_catalog_describe(MINLAG_FORMAT_JSON, &text) == MINLAG_OK);
  const auto j = nlohmann::json::parse(take(text));
  CHECK(j["kinds"].size() == 7);
}

TEST_CASE("parse errors map to status codes") {
  minlag_config* c = nullptr;
  CHECK(minlag_config_parse("{\"kind\":\"flat_torus\",\"n\":2,\"oops\":1}", &c) == MINLAG_ERR_PARSE);
  CHECK(c == nullptr);
  CHECK(std::string(minlag_last_error()).find("$.oops") != std::string::npos);
  CHECK(minlag_config_parse("{\"kind\":\"product_eq381\",\"n1\":0,\"n2\":2}", &c) == MINLAG_ERR_VALIDATION);
  CHECK(minlag_config_parse(nullptr, &c) == MINLAG_ERR_ARGUMENT);
  CHECK(minlag_run(nullptr, nullptr) == MINLAG_ERR_ARGUMENT);
}

TEST_CASE("setters validate their input") {
  minlag_config* c = parse("{\"kind\":\"flat_torus\",\"n\":2}");
  CHECK(minlag_config_set_samples(c, 0) == MINLAG_ERR_VALIDATION);
  CHECK(minlag_config_set_order(c, 2) == MINLAG_ERR_VALIDATION);
  CHECK(minlag_config_set_tolerance(c, "lift", -1.0) == MINLAG_ERR_VALIDATION);
  CHECK(minlag_config_set_tolerance(c, "nope", 1.0) == MINLAG_ERR_VALIDATION);
  CHECK(minlag_config_set_workers(c, 0) == MINLAG_ERR_VALIDATION);
  CHECK(minlag_config_set_format(c, static_cast<minlag_format>(7)) == MINLAG_ERR_ARGUMENT);
  CHECK(minlag_config_set_tolerance(c, "spectral", 1e-5) == MINLAG_OK);
  CHECK(minlag_config_set_format(c, MINLAG_FORMAT_MARKDOWN) == MINLAG_OK);
  minlag_format f = MINLAG_FORMAT_JSON;
  CHECK(minlag_config_get_format(c, &f) == MINLAG_OK);
  CHECK(f == MINLAG_FORMAT_MARKDOWN);
  minlag_config_free(c);
}

TEST_CASE("run and emit") {
  minlag_config* c = parse("{\"kind\":\"product_eq381\",\"n1\":1,\"n2\":2}");
  REQUIRE(minlag_config_set_samples(c, 5) == MINLAG_OK);
  REQUIRE(minlag_config_set_seed(c, 7) == MINLAG_OK);
  minlag_report* r = nullptr;
  REQUIRE(minlag_run(c, &r) == MINLAG_OK);
  CHECK(minlag_report_passed(r) == 1);
  char* text = nullptr;
  REQUIRE(minlag_report_emit(r, MINLAG_FORMAT_JSON, &text) == MINLAG_OK);
  const auto j = nlohmann::json::parse(take(text));
  CHECK(j["config"]["seed"] == 7);
  CHECK(j["verdict"]["label"] == "case_i");
  REQUIRE(minlag_report_emit(r, MINLAG_FORMAT_MARKDOWN, &text) == MINLAG_OK);
  CHECK(take(text).find("**PASS**") != std::string::npos);

  REQUIRE(minlag_frame_table(c, MINLAG_FORMAT_MARKDOWN, &text) == MINLAG_OK);
  CHECK(take(text).find("lambda_kk") != std::string::npos);

  const minlag_report* all[] = {r, r};
  const char* names[] = {"a", "b"};
  REQUIRE(minlag_reports_emit(all, names, 2, MINLAG_FORMAT_JSON, &text) == MINLAG_OK);
  const auto both = nlohmann::json::parse(take(text));
  CHECK(both["reports"].size() == 2);
  REQUIRE(minlag_reports_emit(all, nullptr, 1, MINLAG_FORMAT_JSON, &text) == MINLAG_OK);
  CHECK(nlohmann::json::parse(take(text))["reports"].contains("report_0"));
  minlag_report_free(r);
  minlag_config_free(c);
}

TEST_CASE("builtins") {
  CHECK(minlag_builtin_count() == 14);
  minlag_config* c = nullptr;
  const char* name = nullptr;
  REQUIRE(minlag_builtin(0, &name, &c) == MINLAG_OK);
  CHECK(std::string(name) == "totally_geodesic_n3");
  minlag_config_free(c);
  CHECK(minlag_builtin(99, nullptr, &c) == MINLAG_ERR_ARGUMENT);
  CHECK(std::strlen(minlag_last_error()) > 0);
}
