#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "regtensor/regtensor.h"

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    regtensor_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("parse, print and run through the C interface") {
    regtensor_session* s = nullptr;
    const char* text =
        "base k = Fp(2) subfield of ambient(t) generated by [t^2]\n"
        "field K = k adjoin insep t\n"
        "query regular tensor(K, K)\n";
    REQUIRE(regtensor_session_parse(text, &s) == REGTENSOR_OK);
    CHECK(std::string(regtensor_last_error()).empty());
    CHECK(regtensor_session_query_count(s) == 1);

    char* canon = nullptr;
    REQUIRE(regtensor_session_canonical(s, &canon) == REGTENSOR_OK);
    CHECK(take(canon).find("field K = k adjoin insep t") != std::string::npos);

    char* report = nullptr;
    size_t errors = 99;
    REQUIRE(regtensor_session_run(s, REGTENSOR_FORMAT_JSON, &report, &errors) == REGTENSOR_OK);
    CHECK(errors == 0);
    std::string json = take(report);
    CHECK(json.find("\"not_regular\"") != std::string::npos);
    CHECK(json.find("\"X + t\"") != std::string::npos);

    REQUIRE(regtensor_session_run(s, REGTENSOR_FORMAT_TEXT, &report, nullptr) == REGTENSOR_OK);
    CHECK(take(report).find("not_regular") != std::string::npos);
    regtensor_session_free(s);
}

TEST_CASE("errors map to status codes") {
    regtensor_session* s = nullptr;
    CHECK(regtensor_session_parse("base k = Q\nquery regular tensor(k, M)\n", &s) == REGTENSOR_ERR_UNKNOWN_NAME);
    CHECK(s == nullptr);
    CHECK(std::string(regtensor_last_error()).find("unknown name M") != std::string::npos);
    CHECK(regtensor_session_parse("base k = Q\nbase k = Q\n", &s) == REGTENSOR_ERR_DUPLICATE_NAME);
    CHECK(regtensor_session_parse("field = \n", &s) == REGTENSOR_ERR_SYNTAX);
    CHECK(regtensor_session_parse(nullptr, &s) == REGTENSOR_ERR_INVALID_ARGUMENT);
    CHECK(std::strcmp(regtensor_status_name(REGTENSOR_ERR_SYNTAX), "syntax") == 0);

    REQUIRE(regtensor_session_parse("base q = Q\nfield F = q adjoin root a of X^2 - 1\n", &s) == REGTENSOR_OK);
    char* report = nullptr;
    size_t errors = 0;
    CHECK(regtensor_session_run(s, REGTENSOR_FORMAT_JSON, &report, &errors) == REGTENSOR_ERR_QUERY);
    CHECK(errors == 1);
    CHECK(take(report).find("ReducibleMinPoly") != std::string::npos);
    regtensor_session_free(s);
    regtensor_session_free(nullptr);
}

TEST_CASE("corpus through the C interface") {
    char* report = nullptr;
    size_t failures = 99;
    CHECK(regtensor_corpus_run(REGTENSOR_CORPUS_DIR, "frobenius_square", REGTENSOR_FORMAT_TEXT, &report, &failures) ==
          REGTENSOR_OK);
    CHECK(failures == 0);
    CHECK(take(report).find("1/1 pass") != std::string::npos);
    CHECK(regtensor_corpus_run("/nonexistent/corpus", nullptr, REGTENSOR_FORMAT_TEXT, &report, &failures) ==
          REGTENSOR_ERR_IO);
    CHECK(std::string(regtensor_version()) == "1.0.0");
}
