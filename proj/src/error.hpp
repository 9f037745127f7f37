#ifndef REGTENSOR_ERROR_HPP
#define REGTENSOR_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace regtensor {

enum class ErrorCode {
    DivisionByZero,
    ModulusMismatch,
    InexactDivision,
    ArityMismatch,
    BothZero,
    ConstantInput,
    ReducibleMinPoly,
    UncertifiableIrreducibility,
    InfiniteDegree,
    NotAlgebraic,
    NotInField,
    ContextMismatch,
    NotASubfield,
    InternalInconsistency,
    CharMismatch,
    BadGenerators,
    UnsupportedField,
    BaseMismatch,
    OracleUnavailable,
    UnsplitTower,
    AmbientUnavailable,
    SeparabilityNotCertified,
    InsufficientDescriptors,
    ConsistencyFailure,
    Syntax,
    UnknownName,
    DuplicateName,
    InvalidArgument,
    Io,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace regtensor

#endif  // REGTENSOR_ERROR_HPP
