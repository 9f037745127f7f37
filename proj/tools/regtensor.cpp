#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "regtensor/regtensor.h"

#ifndef REGTENSOR_CORPUS_DIR
#define REGTENSOR_CORPUS_DIR "corpus"
#endif

namespace {

bool read_input(const std::string& path, std::string& text) {
    std::ostringstream s;
    if (path == "-") {
        s << std::cin.rdbuf();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) return false;
        s << in.rdbuf();
    }
    text = s.str();
    return true;
}

regtensor_format format_of(const std::string& f) { return f == "json" ? REGTENSOR_FORMAT_JSON : REGTENSOR_FORMAT_TEXT; }

void emit(char* report) {
    if (report) {
        std::fputs(report, stdout);
        regtensor_string_free(report);
    }
}

int run(const std::string& path, const std::string& format) {
    std::string text;
    if (!read_input(path, text)) {
        std::cerr << "error: cannot read " << path << "\n";
        return 2;
    }
    regtensor_session* session = nullptr;
    regtensor_status st = regtensor_session_parse(text.c_str(), &session);
    if (st != REGTENSOR_OK) {
        std::cerr << "error: " << regtensor_last_error() << "\n";
        return 2;
    }
    char* report = nullptr;
    size_t errors = 0;
    st = regtensor_session_run(session, format_of(format), &report, &errors);
    regtensor_session_free(session);
    emit(report);
    if (st == REGTENSOR_OK) return 0;
    std::cerr << "error: " << regtensor_last_error() << "\n";
    return st == REGTENSOR_ERR_QUERY ? 1 : 2;
}

int corpus(const std::string& dir, const std::string& filter, const std::string& format) {
    char* report = nullptr;
    size_t failures = 0;
    regtensor_status st = regtensor_corpus_run(dir.c_str(), filter.c_str(), format_of(format), &report, &failures);
    emit(report);
    if (st == REGTENSOR_OK) return 0;
    std::cerr << "error: " << regtensor_last_error() << "\n";
    return st == REGTENSOR_ERR_MISMATCH ? 1 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regularity of tensor products of field extensions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(regtensor_version()));

    std::string file;
    std::string format = "text";
    auto* run_cmd = app.add_subcommand("run", "Run a session file ('-' reads stdin)");
    run_cmd->add_option("file", file, "Session file")->required();
    run_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    std::string filter;
    std::string dir = REGTENSOR_CORPUS_DIR;
    std::string corpus_format = "text";
    auto* corpus_cmd = app.add_subcommand("corpus", "Replay the bundled example sessions against their golden files");
    corpus_cmd->add_option("--filter", filter, "Only cases whose name contains this text");
    corpus_cmd->add_option("--dir", dir, "Corpus directory");
    corpus_cmd->add_option("--format", corpus_format, "Output format")->check(CLI::IsMember({"text", "json"}));

    CLI11_PARSE(app, argc, argv);
    if (run_cmd->parsed()) return run(file, format);
    return corpus(dir, filter, corpus_format);
}
