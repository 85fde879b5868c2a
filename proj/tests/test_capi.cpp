#include <doctest.h>

#include <bieigen/bieigen.h>

#include <cmath>
#include <cstring>
#include <string>

namespace {

struct Handle {
  bieigen_map* map = nullptr;
  ~Handle() { bieigen_map_free(map); }
};

std::string take(char* s) {
  std::string out = s != nullptr ? s : "";
  bieigen_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(bieigen_version()) > 0);
  CHECK(std::string(bieigen_status_name(BIEIGEN_NOT_APPLICABLE)) == "not applicable");
  CHECK(std::string(bieigen_status_name(BIEIGEN_OK)) == "ok");
}

TEST_CASE("catalog access") {
  const std::size_t n = bieigen_catalog_size();
  REQUIRE(n >= 8);
  bool found = false;
  for (std::size_t i = 0; i < n; ++i) {
    found = found || std::string(bieigen_catalog_name(i)) == "small_circle_S2";
    CHECK(bieigen_catalog_note(i) != nullptr);
  }
  CHECK(found);
  CHECK(bieigen_catalog_name(n) == nullptr);

  Handle h;
  CHECK(bieigen_map_from_catalog("foo", &h.map) == BIEIGEN_E_MANIFEST);
  CHECK(h.map == nullptr);
  CHECK(std::string(bieigen_last_error()).find("foo") != std::string::npos);
}

TEST_CASE("classify and verify through handles") {
  Handle h;
  REQUIRE(bieigen_map_from_catalog("small_circle_S2", &h.map) == BIEIGEN_OK);
  CHECK(std::string(bieigen_map_name(h.map)) == "small_circle_S2");
  CHECK(bieigen_map_dimension(h.map) == 1);
  CHECK(bieigen_map_ambient(h.map) == 3);

  bieigen_options opts;
  bieigen_options_init(&opts);
  CHECK(opts.samples == 64);
  CHECK(opts.tol_abs == 1e-8);
  opts.format = BIEIGEN_FORMAT_JSON;
  char* out = nullptr;
  REQUIRE(bieigen_classify(h.map, &opts, &out) == BIEIGEN_OK);
  const std::string report = take(out);
  CHECK(report.find("\"format_version\": \"1\"") != std::string::npos);
  CHECK(report.find("\"is_buckling\": true") != std::string::npos);

  out = nullptr;
  CHECK(bieigen_verify(h.map, "t2", &opts, &out) == BIEIGEN_OK);
  CHECK(take(out).find("PASS") != std::string::npos);
  CHECK(bieigen_verify(h.map, "t1", &opts, &out) == BIEIGEN_NOT_APPLICABLE);
  CHECK(take(out).find("NOT_APPLICABLE") != std::string::npos);
  CHECK(bieigen_verify(h.map, "t9", &opts, &out) == BIEIGEN_E_ARGUMENT);

  CHECK(bieigen_residual(h.map, "eq102", &opts, &out) == BIEIGEN_OK);
  CHECK(take(out).find("\"equation\": \"eq102\"") != std::string::npos);

  double value = 0.0;
  CHECK(bieigen_bienergy(h.map, 256, &opts, &value, nullptr) == BIEIGEN_OK);
  CHECK(std::abs(value - M_PI / std::sqrt(2.0)) < 1e-9);

  const double p[] = {0.5};
  double density = 0.0, phi = 0.0, lap = 0.0, tension = 0.0;
  CHECK(bieigen_evaluate_point(h.map, p, 1, &density, &phi, &lap, &tension) == BIEIGEN_OK);
  CHECK(std::abs(density - 1.0) < 1e-14);
  CHECK(std::abs(phi - 1.0) < 1e-15);
  CHECK(std::abs(lap - std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(tension - 1.0) < 1e-14);
  CHECK(bieigen_evaluate_point(h.map, p, 2, &density, nullptr, nullptr, nullptr) == BIEIGEN_E_ARGUMENT);
}

TEST_CASE("status codes") {
  bieigen_options opts;
  bieigen_options_init(&opts);
  char* out = nullptr;

  Handle constant;
  REQUIRE(bieigen_map_from_catalog("factor_circle_S1", &constant.map) == BIEIGEN_OK);
  CHECK(bieigen_residual(constant.map, "mf", &opts, &out) == BIEIGEN_NOT_APPLICABLE);

  Handle round;
  REQUIRE(bieigen_map_from_catalog("kfold_equator_S2", &round.map) == BIEIGEN_OK);
  CHECK(bieigen_residual(round.map, "eq102", &opts, &out) == BIEIGEN_NOT_APPLICABLE);
  CHECK(bieigen_residual(round.map, "me1", &opts, &out) == BIEIGEN_OK);
  take(out);

  const char* varying = R"~({"name": "varying",
    "chart": {"params": ["t"], "domain": [[0, 1]], "metric": {"mode": "explicit", "g": [["1"]]}},
    "map": {"target": "sphere", "components": ["cos(t^2)", "sin(t^2)", "0"]}})~";
  Handle v;
  REQUIRE(bieigen_map_from_json(varying, &v.map) == BIEIGEN_OK);
  CHECK(bieigen_residual(v.map, "me1", &opts, &out) == BIEIGEN_E_DENSITY);

  const char* singular = R"~({"name": "singular",
    "chart": {"params": ["t"], "domain": [[0, 1]], "metric": {"mode": "explicit", "g": [["t - 2"]]}},
    "map": {"target": "sphere", "components": ["cos(t)", "sin(t)", "0"]}})~";
  Handle s;
  REQUIRE(bieigen_map_from_json(singular, &s.map) == BIEIGEN_OK);
  CHECK(bieigen_classify(s.map, &opts, &out) == BIEIGEN_E_EVAL);
  CHECK(std::string(bieigen_last_error()).find("metric") != std::string::npos);

  Handle bad;
  CHECK(bieigen_map_from_json("{\"name\": \"x\"}", &bad.map) == BIEIGEN_E_MANIFEST);
  CHECK(bieigen_map_from_json("[", &bad.map) == BIEIGEN_E_MANIFEST);
  CHECK(bieigen_map_from_file("/nonexistent.json", &bad.map) == BIEIGEN_E_MANIFEST);
  CHECK(bad.map == nullptr);

  CHECK(bieigen_classify(nullptr, &opts, &out) == BIEIGEN_E_ARGUMENT);
  opts.samples = 0;
  CHECK(bieigen_classify(v.map, &opts, &out) == BIEIGEN_E_ARGUMENT);
}

TEST_CASE("export round trip") {
  Handle h;
  REQUIRE(bieigen_map_from_catalog("round_sphere_chart_S2_in_R3", &h.map) == BIEIGEN_OK);
  char* out = nullptr;
  REQUIRE(bieigen_map_export(h.map, &out) == BIEIGEN_OK);
  const std::string text = take(out);
  Handle back;
  REQUIRE(bieigen_map_from_json(text.c_str(), &back.map) == BIEIGEN_OK);
  REQUIRE(bieigen_map_export(back.map, &out) == BIEIGEN_OK);
  CHECK(take(out) == text);

  bieigen_options opts;
  bieigen_options_init(&opts);
  opts.format = BIEIGEN_FORMAT_JSON;
  REQUIRE(bieigen_classify(h.map, &opts, &out) == BIEIGEN_OK);
  const std::string a = take(out);
  REQUIRE(bieigen_classify(back.map, &opts, &out) == BIEIGEN_OK);
  CHECK(take(out) == a);
}
