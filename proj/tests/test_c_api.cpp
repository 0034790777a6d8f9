#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "asymcop/asymcop.h"

using nlohmann::json;

namespace {

json take_json(char* s) {
  REQUIRE(s != nullptr);
  auto j = json::parse(s);
  asymcop_string_free(s);
  return j;
}

asymcop_spec* spec(const char* ref) {
  asymcop_spec* s = nullptr;
  REQUIRE(asymcop_spec_from_ref(ref, &s) == ASYMCOP_OK);
  return s;
}

}  // namespace

TEST_CASE("error codes") {
  asymcop_spec* s = nullptr;
  CHECK(asymcop_spec_from_ref("nope", &s) == ASYMCOP_ERR_INVALID_ARGUMENT);
  CHECK(std::string(asymcop_last_error()).find("nope") != std::string::npos);
  CHECK(asymcop_spec_from_ref("clayton:-1", &s) == ASYMCOP_ERR_INVALID_ARGUMENT);
  CHECK(asymcop_spec_from_ref(nullptr, &s) == ASYMCOP_ERR_INVALID_ARGUMENT);
  CHECK(asymcop_spec_from_json("{not json", &s) == ASYMCOP_ERR_PARSE);
  CHECK(asymcop_spec_from_csv_sample("/nonexistent.csv", "0", "1", 16, &s) == ASYMCOP_ERR_IO);

  const char* path = "c_api_bad.csv";
  std::ofstream(path) << "x,y\n1,2\n3,abc\n";
  CHECK(asymcop_spec_from_csv_sample(path, "x", "y", 16, &s) == ASYMCOP_ERR_PARSE);
  CHECK(std::string(asymcop_last_error()).find("line 3") != std::string::npos);
  std::remove(path);

  asymcop_gridfn* f = nullptr;
  CHECK(asymcop_gridfn_from_csv("garbage", &f) == ASYMCOP_ERR_PARSE);
  CHECK(s == nullptr);
  CHECK(f == nullptr);
}

TEST_CASE("evaluate, transpose and measure") {
  auto* c = spec("cobb_douglas_C:0.5");
  double x = 0.0;
  REQUIRE(asymcop_spec_evaluate(c, 0.25, 0.64, &x) == ASYMCOP_OK);
  CHECK(x == doctest::Approx(2.0 / 3.0 * 0.5 * 0.64));
  CHECK(asymcop_spec_evaluate(c, 1.5, 0.5, &x) != ASYMCOP_OK);

  asymcop_spec* t = nullptr;
  REQUIRE(asymcop_spec_transpose(c, &t) == ASYMCOP_OK);
  double a = 0.0, b = 0.0;
  REQUIRE(asymcop_measure(c, 1.0, 1024, 1.0, &a) == ASYMCOP_OK);
  REQUIRE(asymcop_measure(t, 1.0, 1024, 1.0, &b) == ASYMCOP_OK);
  CHECK(a == b);
  CHECK(std::abs(a - 4.0 / 63.0) < 5e-4);
  CHECK(asymcop_measure(c, 0.5, 64, 1.0, &a) == ASYMCOP_ERR_INVALID_ARGUMENT);
  CHECK(asymcop_measure(c, 1.0, 48, 1.0, &a) == ASYMCOP_ERR_INVALID_ARGUMENT);
  CHECK(asymcop_spec_is_formula(c) == 1);
  CHECK(asymcop_spec_default_tolerance(c, 64) == 1e-9);
  asymcop_spec_free(t);
  asymcop_spec_free(c);
}

TEST_CASE("documents carry the schema field") {
  auto* p = spec("product");
  auto* c = spec("cd_c:0.25");
  char* out = nullptr;
  int pass = 0;
  REQUIRE(asymcop_check_axioms(p, 32, 1e-9, 7, &out, &pass) == ASYMCOP_OK);
  CHECK(pass == 1);
  CHECK(take_json(out).at("schema") == 1);

  REQUIRE(asymcop_compare_order(p, c, 32, 1e-9, &out) == ASYMCOP_OK);
  const auto order = take_json(out);
  CHECK(order.at("schema") == 1);
  CHECK(order.at("relation") == "first_more_symmetric");

  REQUIRE(asymcop_compare_equivalent(c, c, 32, 1e-9, &out) == ASYMCOP_OK);
  CHECK(take_json(out).at("relation") == "equivalent");

  REQUIRE(asymcop_compare_tolerance(c, p, 0.5, INFINITY, 32, &out) == ASYMCOP_OK);
  CHECK(take_json(out).at("p") == "inf");

  const asymcop_spec* list[] = {p, c};
  REQUIRE(asymcop_distinct_classes(list, 2, 32, 1e-3, &out) == ASYMCOP_OK);
  CHECK(take_json(out).at("class_count") == 2);

  REQUIRE(asymcop_family_list(&out) == ASYMCOP_OK);
  CHECK(std::string(out).find("archimedean_clayton") != std::string::npos);
  asymcop_string_free(out);

  asymcop_spec_free(p);
  asymcop_spec_free(c);
}

TEST_CASE("grid functions and decomposition") {
  auto* c = spec("cd_c:0.25");
  asymcop_gridfn* b = nullptr;
  REQUIRE(asymcop_gridfn_bracket(c, 64, &b) == ASYMCOP_OK);
  CHECK(asymcop_gridfn_resolution(b) == 64);
  double l1 = 0.0;
  REQUIRE(asymcop_gridfn_norm(b, 1.0, &l1) == ASYMCOP_OK);

  char* csv = nullptr;
  REQUIRE(asymcop_gridfn_to_csv(b, &csv) == ASYMCOP_OK);
  asymcop_gridfn* again = nullptr;
  REQUIRE(asymcop_gridfn_from_csv(csv, &again) == ASYMCOP_OK);
  asymcop_string_free(csv);
  double l1b = 0.0;
  REQUIRE(asymcop_gridfn_norm(again, 1.0, &l1b) == ASYMCOP_OK);
  CHECK(l1 == l1b);

  char* doc = nullptr;
  char* good = nullptr;
  REQUIRE(asymcop_cz_decompose(b, 0.05, &doc, &good, nullptr) == ASYMCOP_OK);
  const auto j = take_json(doc);
  CHECK(j.at("n") == 64);
  CHECK(j.at("area_union").get<double>() <= j.at("l1_f").get<double>() / 0.05);
  REQUIRE(good != nullptr);
  asymcop_gridfn* g = nullptr;
  CHECK(asymcop_gridfn_from_csv(good, &g) == ASYMCOP_OK);
  asymcop_string_free(good);
  CHECK(asymcop_cz_decompose(b, -1.0, &doc, nullptr, nullptr) == ASYMCOP_ERR_INVALID_ARGUMENT);

  asymcop_gridfn_free(g);
  asymcop_gridfn_free(again);
  asymcop_gridfn_free(b);
  asymcop_spec_free(c);
}

TEST_CASE("sweep and worked example") {
  char* summary = nullptr;
  char* scan = nullptr;
  REQUIRE(asymcop_sweep("mixture", "{\"alpha\": 0.5}", "weight", 0.0, 1.0, 1.0, 32, &summary,
                        &scan) == ASYMCOP_OK);
  const auto s = take_json(summary);
  CHECK(s.at("argmin") == 0.0);
  CHECK(std::string(scan).rfind("param,mu_p\n", 0) == 0);
  asymcop_string_free(scan);
  CHECK(asymcop_sweep("mixture", nullptr, "weight", 1.0, 0.0, 1.0, 32, &summary, nullptr) ==
        ASYMCOP_ERR_INVALID_ARGUMENT);
  CHECK(asymcop_sweep("mixture", nullptr, "bogus", 0.0, 1.0, 1.0, 32, &summary, nullptr) ==
        ASYMCOP_ERR_INVALID_ARGUMENT);

  char* ex = nullptr;
  REQUIRE(asymcop_worked_example(0.5, 128, 0.5, &ex) == ASYMCOP_OK);
  const auto e = take_json(ex);
  CHECK(e.at("schema") == 1);
  CHECK(e.at("classes").at("class_count") == 3);
}

TEST_CASE("spec json through the interface") {
  auto* m = spec("mixture:0.3:0.5");
  char* text = nullptr;
  REQUIRE(asymcop_spec_to_json(m, &text) == ASYMCOP_OK);
  asymcop_spec* back = nullptr;
  REQUIRE(asymcop_spec_from_json(text, &back) == ASYMCOP_OK);
  asymcop_string_free(text);
  double x = 0.0, y = 0.0;
  asymcop_spec_evaluate(m, 0.3, 0.7, &x);
  asymcop_spec_evaluate(back, 0.3, 0.7, &y);
  CHECK(x == y);
  asymcop_spec_free(back);
  asymcop_spec_free(m);
}
