#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "catalog.hpp"
#include "report.hpp"

using namespace bieigen;

namespace {

void check_entry(const CatalogEntry& e, std::size_t samples) {
  CAPTURE(e.name);
  CAPTURE(samples);
  ClassifyOptions opts;
  opts.samples = samples;
  const ClassificationReport r = classify(build_map(e.manifest), opts);
  const Json j = report_json(r);

  for (const auto& c : e.constants) {
    CAPTURE(c.key);
    const Json& got = c.key == "eta_norm" ? j["eta_norm"] : j["constants"][c.key];
    if (!c.value) {
      CHECK(got.is_null());
      continue;
    }
    if (c.key == "eta_norm") {
      REQUIRE(got.is_object());
      CHECK(std::abs(got["min"].get<double>() - *c.value) < 1e-8);
      CHECK(std::abs(got["max"].get<double>() - *c.value) < 1e-8);
    } else {
      REQUIRE(got.is_number());
      CHECK(std::abs(got.get<double>() - *c.value) < 1e-8 * std::max(1.0, std::abs(*c.value)));
    }
  }
  for (const auto& v : e.verdicts) {
    CAPTURE(v.key);
    REQUIRE(j["verdicts"][v.key].is_boolean());
    CHECK(j["verdicts"][v.key].get<bool>() == v.value);
  }
  for (const auto& t : e.theorems) {
    CAPTURE(to_string(t.theorem));
    const TheoremVerdict got = verify(r, t.theorem);
    CAPTURE(got.reason);
    CHECK(got.status == t.status);
  }
}

}  // namespace

TEST_CASE("catalog listing") {
  const auto& list = catalog_list();
  CHECK(list.size() >= 8);
  std::set<std::string> names;
  for (const auto& e : list) {
    names.insert(e.name);
    CHECK(catalog_find(e.name) == &e);
    CHECK_FALSE(e.note.empty());
    CHECK(e.theorems.size() == 5);
    CHECK(e.manifest.name == e.name);
  }
  CHECK(names.size() == list.size());
  CHECK(names.count("small_circle_S2") == 1);
  CHECK(catalog_find("foo") == nullptr);
  CHECK(&catalog_list() == &list);
}

TEST_CASE("every expected value carries a source") {
  for (const auto& e : catalog_list()) {
    CHECK_FALSE(e.constants.empty());
    CHECK_FALSE(e.verdicts.empty());
    for (const auto& c : e.constants) {
      const auto s = to_string(c.source);
      CHECK((s == "published" || s == "derived" || s == "elementary"));
    }
  }
}

TEST_CASE("expectations reproduce at the default sample count") {
  for (const auto& e : catalog_list()) {
    check_entry(e, kDefaultSamples);
  }
}

TEST_CASE("expectations reproduce at four times the sample count") {
  for (const auto& e : catalog_list()) {
    check_entry(e, 4 * kDefaultSamples);
  }
}

TEST_CASE("each verifier has a passing and a non-applicable entry") {
  for (Theorem t : {Theorem::Takahashi, Theorem::T1, Theorem::T2, Theorem::T3, Theorem::T4}) {
    CAPTURE(to_string(t));
    bool pass = false;
    bool na = false;
    for (const auto& e : catalog_list()) {
      for (const auto& s : e.theorems) {
        if (s.theorem == t) {
          pass = pass || s.status == Status::Pass;
          na = na || s.status == Status::NotApplicable;
        }
      }
    }
    CHECK(pass);
    CHECK(na);
  }
}

TEST_CASE("entries export as valid manifests") {
  for (const auto& e : catalog_list()) {
    const std::string text = manifest_to_string(e.manifest);
    const Manifest back = manifest_from_string(text);
    CHECK(manifest_to_string(back) == text);
    CHECK_NOTHROW(build_map(back));
  }
}
