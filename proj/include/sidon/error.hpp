#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sidon {

enum class ErrorCode {
    NotPrime,
    FieldTooLarge,
    DivisionByZero,
    InvalidElement,
    DuplicateElement,
    SetTooLarge,
    OracleFailure,
    ExtensionFieldUnsupported,
    EvenCharacteristic,
    NotSquarefree,
    BadDegree,
    GenusUnsupported,
    InconsistentCenter,
    NotAGroup,
    ZeroForm,
    Singular,
    PointNotOnCurve,
    InternalMultiplicityError,
    InvalidSeed,
    ParseError,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can dispatch without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view error_code_name(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::InvalidElement: return "InvalidElement";
    case ErrorCode::DuplicateElement: return "DuplicateElement";
    case ErrorCode::SetTooLarge: return "SetTooLarge";
    case ErrorCode::OracleFailure: return "OracleFailure";
    case ErrorCode::ExtensionFieldUnsupported: return "ExtensionFieldUnsupported";
    case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::BadDegree: return "BadDegree";
    case ErrorCode::GenusUnsupported: return "GenusUnsupported";
    case ErrorCode::InconsistentCenter: return "InconsistentCenter";
    case ErrorCode::NotAGroup: return "NotAGroup";
    case ErrorCode::ZeroForm: return "ZeroForm";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::PointNotOnCurve: return "PointNotOnCurve";
    case ErrorCode::InternalMultiplicityError: return "InternalMultiplicityError";
    case ErrorCode::InvalidSeed: return "InvalidSeed";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

} // namespace sidon
