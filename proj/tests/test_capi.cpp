// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "hsig/hsig.h"

namespace {

const char* kDoc =
    "algebra { division: base m: 4 phi0: [[1,0,0,0],[0,-1,0,0],[0,0,1,0],[0,0,0,-1]] }\n"
    "form h { gram: [[1,0,0,0],[0,1,0,0],[0,0,-1,0],[0,0,0,1]] }\n"
    "form h1 { gram: [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]] }\n"
    "form h2 { gram: [[1,0,0,0],[0,-1,0,0],[0,0,1,0],[0,0,0,-1]] }\n"
    "reference H { h1, h2 }\n";

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(hsig_version()) == "0.1.0");
  CHECK(std::string(hsig_status_name(HSIG_OK)) == "Ok");
  CHECK(std::string(hsig_status_name(9999)) == "Unknown");
}

TEST_CASE("parse, run and free") {
  hsig_document* doc = nullptr;
  REQUIRE(hsig_document_parse(kDoc, &doc) == HSIG_OK);
  CHECK(hsig_document_form_count(doc) == 3);
  CHECK(std::string(hsig_document_form_name(doc, 1)) == "h1");
  CHECK(hsig_document_form_name(doc, 7) == nullptr);

  hsig_run_options opts;
  hsig_run_options_init(&opts);
  opts.form = "h";
  opts.ref = "H";
  hsig_report* rep = nullptr;
  REQUIRE(hsig_run(doc, "hsig", &opts, &rep) == HSIG_OK);
  CHECK(hsig_report_exit_code(rep) == 0);
  CHECK(std::string(hsig_report_text(rep)) == "P#0 signs=[] nil=false lambda=1 ref=2 value=-2\n");
  CHECK(std::string(hsig_report_error(rep)).empty());
  hsig_report_free(rep);

  opts.ref = "nothing";
  REQUIRE(hsig_run(doc, "hsig", &opts, &rep) == HSIG_OK);
  CHECK(hsig_report_exit_code(rep) == 1);
  CHECK(std::string(hsig_report_error(rep)).find("MissingReference") != std::string::npos);
  hsig_report_free(rep);

  char* text = nullptr;
  REQUIRE(hsig_document_serialize(doc, &text) == HSIG_OK);
  hsig_document* again = nullptr;
  CHECK(hsig_document_parse(text, &again) == HSIG_OK);
  char* text2 = nullptr;
  REQUIRE(hsig_document_serialize(again, &text2) == HSIG_OK);
  CHECK(std::string(text) == std::string(text2));
  hsig_string_free(text);
  hsig_string_free(text2);
  hsig_document_free(again);
  hsig_document_free(doc);
}

TEST_CASE("errors are reported through status and last_error") {
  hsig_document* doc = nullptr;
  const hsig_status st = hsig_document_parse("algebra { division: base m: 2 epsilon0: -1 phi0: [[0,1],[1,0]] }", &doc);
  CHECK(st != HSIG_OK);
  CHECK(std::string(hsig_status_name(st)) == "ValidationError");
  CHECK(std::string(hsig_last_error()).find("NotEpsilonHermitian") != std::string::npos);
  CHECK(doc == nullptr);
  CHECK(std::string(hsig_status_name(hsig_document_parse("algebra {", &doc))) == "ParseError");
  CHECK(hsig_document_parse(nullptr, &doc) != HSIG_OK);
  // success clears the message
  CHECK(hsig_document_parse("algebra { division: base }", &doc) == HSIG_OK);
  CHECK(std::string(hsig_last_error()).empty());
  hsig_document_free(doc);
}

TEST_CASE("field helpers") {
  const char* rad[] = {"2", "3"};
  size_t n = 0;
  REQUIRE(hsig_field_ordering_count(rad, 2, &n) == HSIG_OK);
  CHECK(n == 4);
  int s = 0;
  REQUIRE(hsig_field_sign(rad, 2, "r1 + r2 - 3", 0, &s) == HSIG_OK);  // 3.146 − 3
  CHECK(s == 1);
  REQUIRE(hsig_field_sign(rad, 2, "r1 - r2", 1, &s) == HSIG_OK);
  CHECK(s == 1);
  REQUIRE(hsig_field_sign(rad, 2, "(r1 + r2)*(r1 + r2) - 5 - 2*r1*r2", 3, &s) == HSIG_OK);
  CHECK(s == 0);
  CHECK(hsig_field_sign(rad, 2, "r1", 4, &s) != HSIG_OK);
  char* out = nullptr;
  REQUIRE(hsig_field_normalize(rad, 2, "(1 + r1)*(1 + r1)", &out) == HSIG_OK);
  CHECK(std::string(out) == "3 + 2*r1");
  hsig_string_free(out);
  const char* bad[] = {"4"};
  CHECK(std::string(hsig_status_name(hsig_field_ordering_count(bad, 1, &n))) == "SquareRadicand");
}
