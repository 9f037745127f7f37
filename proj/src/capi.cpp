#include "regtensor/regtensor.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "corpus.hpp"
#include "error.hpp"
#include "session.hpp"

struct regtensor_session {
    regtensor::Session session;
};

namespace {

thread_local std::string g_last_error;

regtensor_status status_of(regtensor::ErrorCode code) {
    using regtensor::ErrorCode;
    switch (code) {
        case ErrorCode::Syntax:
            return REGTENSOR_ERR_SYNTAX;
        case ErrorCode::UnknownName:
            return REGTENSOR_ERR_UNKNOWN_NAME;
        case ErrorCode::DuplicateName:
            return REGTENSOR_ERR_DUPLICATE_NAME;
        case ErrorCode::Io:
            return REGTENSOR_ERR_IO;
        case ErrorCode::InternalInconsistency:
        case ErrorCode::ConsistencyFailure:
            return REGTENSOR_ERR_INTERNAL;
        default:
            return REGTENSOR_ERR_INVALID_ARGUMENT;
    }
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class F>
regtensor_status guarded(F&& f) {
    try {
        g_last_error.clear();
        return f();
    } catch (const regtensor::Error& e) {
        g_last_error = std::string(regtensor::error_code_name(e.code())) + ": " + e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return REGTENSOR_ERR_INTERNAL;
    }
}

regtensor::Format format_of(regtensor_format f) {
    return f == REGTENSOR_FORMAT_JSON ? regtensor::Format::Json : regtensor::Format::Text;
}

}  // namespace

extern "C" {

const char* regtensor_version(void) { return "1.0.0"; }

const char* regtensor_status_name(regtensor_status status) {
    switch (status) {
        case REGTENSOR_OK: return "ok";
        case REGTENSOR_ERR_SYNTAX: return "syntax";
        case REGTENSOR_ERR_UNKNOWN_NAME: return "unknown_name";
        case REGTENSOR_ERR_DUPLICATE_NAME: return "duplicate_name";
        case REGTENSOR_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case REGTENSOR_ERR_IO: return "io";
        case REGTENSOR_ERR_QUERY: return "query";
        case REGTENSOR_ERR_MISMATCH: return "mismatch";
        case REGTENSOR_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* regtensor_last_error(void) { return g_last_error.c_str(); }

regtensor_status regtensor_session_parse(const char* text, regtensor_session** out) {
    return guarded([&] {
        if (!text || !out) regtensor::fail(regtensor::ErrorCode::InvalidArgument, "null argument");
        *out = nullptr;
        auto* s = new regtensor_session{regtensor::parse_session(text)};
        *out = s;
        return REGTENSOR_OK;
    });
}

void regtensor_session_free(regtensor_session* session) { delete session; }

size_t regtensor_session_query_count(const regtensor_session* session) {
    return session ? session->session.query_count() : 0;
}

regtensor_status regtensor_session_canonical(const regtensor_session* session, char** out) {
    return guarded([&] {
        if (!session || !out) regtensor::fail(regtensor::ErrorCode::InvalidArgument, "null argument");
        *out = copy_string(session->session.to_text());
        return REGTENSOR_OK;
    });
}

regtensor_status regtensor_session_run(const regtensor_session* session, regtensor_format format, char** report,
                                       size_t* errors) {
    return guarded([&] {
        if (!session || !report) regtensor::fail(regtensor::ErrorCode::InvalidArgument, "null argument");
        *report = nullptr;
        regtensor::RunResult r = regtensor::run_session(session->session, format_of(format));
        *report = copy_string(r.output);
        if (errors) *errors = r.errors;
        if (r.errors) g_last_error = std::to_string(r.errors) + " statement(s) failed";
        return r.errors ? REGTENSOR_ERR_QUERY : REGTENSOR_OK;
    });
}

regtensor_status regtensor_corpus_run(const char* dir, const char* filter, regtensor_format format, char** report,
                                      size_t* failures) {
    return guarded([&] {
        if (!dir || !report) regtensor::fail(regtensor::ErrorCode::InvalidArgument, "null argument");
        *report = nullptr;
        regtensor::CorpusResult r = regtensor::run_corpus(dir, filter ? filter : "", format_of(format));
        *report = copy_string(r.output);
        if (failures) *failures = r.failures();
        if (r.failures()) g_last_error = std::to_string(r.failures()) + " corpus case(s) failed";
        return r.failures() ? REGTENSOR_ERR_MISMATCH : REGTENSOR_OK;
    });
}

void regtensor_string_free(char* s) { std::free(s); }

}  // extern "C"
