#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>

#include "corpus.hpp"
#include "error.hpp"
#include "session.hpp"

using namespace regtensor;
using json = nlohmann::json;

namespace {

const char* kMeetIsBase = R"(# K = k(x^2, y^2), L = k(z, x^2*(y^2 + z))
base k = Fp(2) subfield of ambient(x, y, z) generated by [x^4, y^4]
field K = k adjoin insep x^2, y^2
field L = k adjoin transcendental z; insep x^2*(y^2 + z)
query intersect(K, L)
query regular tensor(K, L)
)";

ErrorCode code_of(const std::string& text) {
    try {
        parse_session(text);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a parse error");
    return ErrorCode::InternalInconsistency;
}

std::string message_of(const std::string& text) {
    try {
        parse_session(text);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

json run_json(const std::string& text) { return json::parse(run_session(parse_session(text), Format::Json).output); }

}  // namespace

TEST_CASE("a session with three fields and two queries") {
    Session s = parse_session(kMeetIsBase);
    CHECK(s.statements.size() == 5);
    CHECK(s.query_count() == 2);
    const auto& l = std::get<FieldDecl>(s.statements[2].body);
    CHECK(l.name == "L");
    REQUIRE(l.groups.size() == 2);
    CHECK(l.groups[0].kind == StepGroup::Kind::Transcendental);
    CHECK(l.groups[1].items == std::vector<std::string>{"x^2*(y^2 + z)"});
    CHECK(s.statements[4].line == 6);
}

TEST_CASE("empty sessions run without records") {
    for (const char* text : {"", "\n\n", "# only a comment\n"}) {
        Session s = parse_session(text);
        CHECK(s.statements.empty());
        RunResult r = run_session(s, Format::Json);
        CHECK(r.errors == 0);
        json j = json::parse(r.output);
        CHECK(j["records"].empty());
        CHECK(j["schema_version"] == 1);
    }
}

TEST_CASE("parse errors carry line and column") {
    CHECK(code_of("base k = Q\nfield K = k adjoin insep (x\n") == ErrorCode::Syntax);
    CHECK(message_of("base k = Q\nquery regular tensor K, K)\n").find("line 2, column 22") != std::string::npos);
    CHECK(message_of("bogus k\n").find("line 1, column 1") != std::string::npos);
    CHECK(code_of("base k = Fp(4)\n") == ErrorCode::Syntax);
    CHECK(code_of("base k = Q\nquery frobnicate tensor(k, k)\n") == ErrorCode::Syntax);
    CHECK(code_of("algebra A = descriptor regular=maybe\n") == ErrorCode::Syntax);
    CHECK(code_of("algebra A = descriptor colour=true\n") == ErrorCode::Syntax);
    CHECK(code_of("base k = Q\nquery theorem3 k k\n") == ErrorCode::Syntax);
}

TEST_CASE("unknown and duplicate names") {
    std::string text = "base k = Q\nfield K = k adjoin root a of X^2 - 2\nquery regular tensor(K, M)\n";
    CHECK(code_of(text) == ErrorCode::UnknownName);
    CHECK(message_of(text).find("line 3, column 25: unknown name M") != std::string::npos);
    CHECK(code_of("base k = Q\nbase k = Q\n") == ErrorCode::DuplicateName);
    CHECK(code_of("field K = k\n") == ErrorCode::UnknownName);
}

TEST_CASE("printing and re-parsing gives the same session") {
    const char* texts[] = {
        kMeetIsBase,
        "base q = Q\nfield F = q adjoin root s of X^2 - 2; root i of X^2+1\nquery self_tensor F\n",
        "base k = Fp(3) generated by [u]\nfield K = k adjoin insep u ; transcendental w\nquery dim tensor(K,K)\n",
        "base k = Fp(2)\nfield K = k\nalgebra A = descriptor regular=true finitely_generated=false "
        "residue_fields=[K, k]\nalgebra B = descriptor\nquery theorem3 A B assume ii, iv\n",
    };
    for (const char* text : texts) {
        Session s = parse_session(text);
        std::string once = s.to_text();
        Session again = parse_session(once);
        CHECK(again.to_text() == once);
        CHECK(again.statements.size() == s.statements.size());
        CHECK(again.query_count() == s.query_count());
    }
}

TEST_CASE("runs are deterministic and continue past failing statements") {
    std::string text =
        "base q = Q\n"
        "field F = q adjoin root s of X^2 - 4\n"  // reducible
        "field G = q adjoin root s of X^2 - 2\n"
        "query self_tensor G\n"
        "query regular tensor(F, G)\n";
    Session s = parse_session(text);
    RunResult a = run_session(s, Format::Json);
    RunResult b = run_session(s, Format::Json);
    CHECK(a.output == b.output);
    CHECK(a.errors == 2);
    json j = json::parse(a.output);
    REQUIRE(j["records"].size() == 3);
    CHECK(j["records"][0]["error"]["code"] == "ReducibleMinPoly");
    CHECK(j["records"][1]["verdict"] == "regular");
    CHECK(j["records"][2].contains("error"));
    CHECK(run_session(s, Format::Text).output == run_session(s, Format::Text).output);
}

TEST_CASE("structured records carry the documented fields") {
    json j = run_json(kMeetIsBase);
    const json& r = j["records"][1];
    for (const char* key : {"query", "verdict", "noetherian", "dim", "rule_chain", "witnesses"}) {
        CHECK(r.contains(key));
    }
    CHECK(r["query"] == "regular tensor(K, L)");
    CHECK(r["verdict"] == "not_regular");
    CHECK(r["witnesses"][0]["subset"] == json({"x^2", "y^2"}));
    CHECK(r["witnesses"][0]["deg_k"] == 4);
    CHECK(r["witnesses"][0]["deg_L"] == 2);
    CHECK(j["records"][0]["equals_base"] == true);
}

TEST_CASE("golden comparison is key by key") {
    std::string actual = R"({"records": [{"verdict": "regular", "dim": 0, "rule_chain": ["a", "b"]}]})";
    CHECK(golden_mismatches(R"({"records": [{"verdict": "regular"}]})", actual).empty());
    CHECK(golden_mismatches(R"({"records": [{"verdict": "not_regular"}]})", actual).size() == 1);
    CHECK(golden_mismatches(R"({"records": [{"rule_chain": ["a"]}]})", actual).size() == 1);
    CHECK(golden_mismatches(R"({"records": [{}, {}]})", actual).size() == 1);
    CHECK(golden_mismatches(R"({"records": [{"missing": 1}]})", actual).size() == 1);
    CHECK(golden_mismatches("{", actual).size() == 1);
}

TEST_CASE("the bundled corpus passes and a tampered golden fails") {
    namespace fs = std::filesystem;
    CorpusResult all = run_corpus(REGTENSOR_CORPUS_DIR, "", Format::Text);
    CHECK(all.cases.size() == 8);
    CHECK(all.failures() == 0);
    CHECK(all.output.find("8/8 pass") != std::string::npos);

    CorpusResult one = run_corpus(REGTENSOR_CORPUS_DIR, "meet_is_base", Format::Text);
    CHECK(one.cases.size() == 1);
    CHECK(one.output.find("1/1 pass") != std::string::npos);

    fs::path dir = fs::temp_directory_path() / "regtensor_tampered_corpus";
    fs::remove_all(dir);
    fs::create_directories(dir);
    fs::copy_file(fs::path(REGTENSOR_CORPUS_DIR) / "meet_is_base.session", dir / "meet_is_base.session");
    std::ifstream in(fs::path(REGTENSOR_CORPUS_DIR) / "meet_is_base.golden.json");
    json golden = json::parse(in);
    golden["records"][1]["witnesses"][0]["deg_k"] = 2;
    std::ofstream(dir / "meet_is_base.golden.json") << golden.dump(2);
    CorpusResult bad = run_corpus(dir.string(), "", Format::Json);
    CHECK(bad.failures() == 1);
    json report = json::parse(bad.output);
    CHECK(report["cases"][0]["pass"] == false);
    CHECK(report["cases"][0]["mismatches"][0].get<std::string>().find("deg_k") != std::string::npos);
    fs::remove_all(dir);

    CHECK_THROWS_AS(run_corpus((dir / "absent").string(), "", Format::Text), Error);
}
