#include <array>
#include <chrono>
#include <cstdio>
#include <memory>
#include <regex>
#include <string>

#include "corpus.hpp"
#include "engine.hpp"
#include "error.hpp"
#include "family.hpp"
#include "tensor.hpp"

using namespace regtensor;

namespace {

constexpr std::size_t kCorpusCases = 8;
constexpr double kCaseSeconds = 5.0;
constexpr double kCorpusSeconds = 30.0;
constexpr std::size_t kMinFamily = 50;
constexpr double kFamilySeconds = 60.0;
constexpr std::size_t kPropertySuites = 14;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

bool report(int n, const std::string& name, bool ok, const std::string& detail) {
    std::printf("criterion %d %-22s %s  %s\n", n, name.c_str(), ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    return ok;
}

// Output and exit status of a shell command.
std::pair<std::string, int> capture(const std::string& cmd) {
    std::string out;
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return {"", -1};
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
    int status = pclose(f);
    return {out, status};
}

bool corpus_exactness() {
    auto start = Clock::now();
    CorpusResult r = run_corpus(REGTENSOR_CORPUS_DIR, "", Format::Text);
    double total = since(start);
    double slowest = 0;
    for (const auto& c : r.cases) slowest = std::max(slowest, c.seconds);
    bool ok = r.cases.size() == kCorpusCases && r.failures() == 0 && slowest < kCaseSeconds && total < kCorpusSeconds;
    char detail[160];
    std::snprintf(detail, sizeof detail, "%zu/%zu golden matches, slowest %.3f s, total %.3f s",
                  r.cases.size() - r.failures(), r.cases.size(), slowest, total);
    if (!ok) std::fputs(r.output.c_str(), stdout);
    return report(1, "corpus exactness", ok, detail);
}

struct FamilyStats {
    std::size_t instances = 0;
    std::size_t regular = 0;
    std::size_t direct_agree = 0;
    std::size_t conditions_agree = 0;
    double seconds = 0;
};

FamilyStats run_family() {
    FamilyStats s;
    auto start = Clock::now();
    for (const auto& f : binomial_family()) {
        ++s.instances;
        try {
            Verdict iv = check_theorem2(f.K, f.L);
            Answer v = theorem2_by_intersections(f.K, f.L);
            bool direct = regular_direct(build_tensor(f.K.tower, f.L.tower, f.K.base_len));
            bool decided = iv.regular != Answer::HypothesisNotVerified;
            if (iv.regular == Answer::Yes) ++s.regular;
            if (decided && (iv.regular == Answer::Yes) == direct) {
                ++s.direct_agree;
            } else {
                std::printf("  disagreement with the direct algebra: %s\n", f.label.c_str());
            }
            if (decided && iv.regular == v) {
                ++s.conditions_agree;
            } else {
                std::printf("  degree and intersection conditions differ: %s\n", f.label.c_str());
            }
        } catch (const Error& e) {
            std::printf("  %s: %s\n", f.label.c_str(), e.what());
        }
    }
    s.seconds = since(start);
    return s;
}

bool oracle_agreement(const FamilyStats& s) {
    bool ok = s.instances >= kMinFamily && s.direct_agree == s.instances && s.seconds < kFamilySeconds;
    char detail[160];
    std::snprintf(detail, sizeof detail, "%zu/%zu binomial pairs agree (%zu regular), %.2f s", s.direct_agree,
                  s.instances, s.regular, s.seconds);
    return report(2, "oracle agreement", ok, detail);
}

bool internal_equivalence(const FamilyStats& s) {
    bool ok = s.instances >= kMinFamily && s.conditions_agree == s.instances;
    char detail[160];
    std::snprintf(detail, sizeof detail, "%zu/%zu pairs: degree and intersection conditions agree",
                  s.conditions_agree, s.instances);
    return report(3, "internal equivalence", ok, detail);
}

bool property_suites() {
    auto [out, status] = capture(std::string("\"") + REGTENSOR_UNIT_TESTS + "\" -ts=properties 2>&1");
    std::smatch m;
    static const std::regex summary(R"(test cases:\s*(\d+)\s*\|\s*(\d+) passed\s*\|\s*(\d+) failed)");
    bool parsed = std::regex_search(out, m, summary);
    std::size_t cases = parsed ? std::stoul(m[1]) : 0;
    std::size_t passed = parsed ? std::stoul(m[2]) : 0;
    bool ok = status == 0 && parsed && cases >= kPropertySuites && passed == cases;
    if (!ok) std::fputs(out.c_str(), stdout);
    return report(4, "property suites", ok, std::to_string(passed) + "/" + std::to_string(cases) + " suites pass");
}

bool determinism() {
    std::string cmd = std::string("\"") + REGTENSOR_CLI + "\" corpus --format json --dir \"" + REGTENSOR_CORPUS_DIR + "\"";
    auto [first, s1] = capture(cmd);
    auto [second, s2] = capture(cmd);
    bool ok = s1 == 0 && s2 == 0 && !first.empty() && first == second;
    return report(5, "determinism", ok, std::to_string(first.size()) + " bytes, identical: " +
                                            (first == second ? "yes" : "no"));
}

}  // namespace

int main() {
    bool ok = corpus_exactness();
    FamilyStats s = run_family();
    ok = oracle_agreement(s) && ok;
    ok = internal_equivalence(s) && ok;
    ok = property_suites() && ok;
    ok = determinism() && ok;
    return ok ? 0 : 1;
}
