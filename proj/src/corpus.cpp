#include "corpus.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace regtensor {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot read " + p.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void compare(const json& expected, const json& actual, const std::string& path, std::vector<std::string>& out) {
    if (expected.is_object()) {
        if (!actual.is_object()) {
            out.push_back(path + ": expected an object, got " + actual.dump());
            return;
        }
        for (const auto& [k, v] : expected.items()) {
            if (!actual.contains(k)) {
                out.push_back(path + "." + k + ": missing");
            } else {
                compare(v, actual[k], path + "." + k, out);
            }
        }
        return;
    }
    if (expected.is_array() && actual.is_array() && expected.size() == actual.size() &&
        std::any_of(expected.begin(), expected.end(), [](const json& e) { return e.is_object(); })) {
        for (std::size_t i = 0; i < expected.size(); ++i) {
            compare(expected[i], actual[i], path + "[" + std::to_string(i) + "]", out);
        }
        return;
    }
    if (expected != actual) out.push_back(path + ": expected " + expected.dump() + ", got " + actual.dump());
}

}  // namespace

std::size_t CorpusResult::failures() const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const CorpusCase& c) { return !c.passed; }));
}

std::vector<std::string> golden_mismatches(const std::string& expected_json, const std::string& actual_json) {
    std::vector<std::string> out;
    json expected;
    json actual;
    try {
        expected = json::parse(expected_json);
        actual = json::parse(actual_json);
    } catch (const json::exception& e) {
        out.push_back(std::string("unreadable JSON: ") + e.what());
        return out;
    }
    compare(expected, actual, "", out);
    return out;
}

CorpusResult run_corpus(const std::string& dir, const std::string& filter, Format format) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) fail(ErrorCode::Io, "corpus directory " + dir + " not found");
    std::vector<fs::path> sessions;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().extension() == ".session") sessions.push_back(e.path());
    }
    std::sort(sessions.begin(), sessions.end());

    CorpusResult res;
    for (const auto& p : sessions) {
        CorpusCase c;
        c.name = p.stem().string();
        if (c.name.find(filter) == std::string::npos) continue;
        auto start = std::chrono::steady_clock::now();
        try {
            RunResult r = run_session(parse_session(read_file(p)), Format::Json);
            c.json_output = r.output;
        } catch (const Error& e) {
            c.mismatches.push_back(std::string("session failed: ") + e.what());
        }
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.mismatches.empty()) {
            fs::path golden = p.parent_path() / (c.name + ".golden.json");
            try {
                c.mismatches = golden_mismatches(read_file(golden), c.json_output);
            } catch (const Error& e) {
                c.mismatches.push_back(e.what());
            }
        }
        c.passed = c.mismatches.empty();
        res.cases.push_back(std::move(c));
    }

    const std::size_t passed = res.cases.size() - res.failures();
    if (format == Format::Json) {
        json cases = json::array();
        for (const auto& c : res.cases) {
            json rec = {{"name", c.name}, {"pass", c.passed}, {"mismatches", c.mismatches}};
            rec["report"] = c.json_output.empty() ? json(nullptr) : json::parse(c.json_output);
            cases.push_back(rec);
        }
        json out = {{"schema_version", 1}, {"cases", cases}, {"passed", passed}, {"total", res.cases.size()}};
        res.output = out.dump(2) + "\n";
    } else {
        std::ostringstream out;
        std::size_t width = 4;
        for (const auto& c : res.cases) width = std::max(width, c.name.size());
        for (const auto& c : res.cases) {
            char secs[32];
            std::snprintf(secs, sizeof secs, "%8.3fs", c.seconds);
            out << c.name << std::string(width - c.name.size() + 2, ' ') << (c.passed ? "pass" : "FAIL") << "  "
                << secs << "\n";
            for (const auto& m : c.mismatches) out << "    " << m << "\n";
        }
        out << passed << "/" << res.cases.size() << " pass\n";
        res.output = out.str();
    }
    return res;
}

}  // namespace regtensor
