#ifndef REGTENSOR_CORPUS_HPP
#define REGTENSOR_CORPUS_HPP

#include <string>
#include <vector>

#include "session.hpp"

namespace regtensor {

struct CorpusCase {
    std::string name;
    bool passed = false;
    std::vector<std::string> mismatches;
    double seconds = 0;
    std::string json_output;  // the session's structured report
};

struct CorpusResult {
    std::vector<CorpusCase> cases;
    std::string output;
    std::size_t failures() const;
};

/// Runs every NAME.session in `dir` whose name contains `filter` and
/// compares its JSON report with NAME.golden.json. Golden records are
/// matched key by key: objects recursively, everything else exactly.
/// Throws Io when the directory cannot be read.
CorpusResult run_corpus(const std::string& dir, const std::string& filter, Format format);

/// Key-by-key comparison used for golden files; returns the mismatches.
std::vector<std::string> golden_mismatches(const std::string& expected_json, const std::string& actual_json);

}  // namespace regtensor

#endif  // REGTENSOR_CORPUS_HPP
