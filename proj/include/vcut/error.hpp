#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vcut {

enum class ErrorKind {
    InvalidParams,
    OutOfRange,
    DisconnectedInput,
    TooManyFailures,
    QueriedFailedVertex,
    SizeCapExceeded,
    BudgetExceeded,
    QueryOutsideSU,
    InvalidCut,
    ContractUnsatisfiable,
    NotFConnected,
    WrongQuerySize,
    VerificationFailed,
    CertificationFailed,
    FTooLarge,
    MissingExplicitLabel,
    TerminalReductionViolated,
    ParseError,
    FormatError,
};

constexpr std::string_view to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::DisconnectedInput: return "DisconnectedInput";
        case ErrorKind::TooManyFailures: return "TooManyFailures";
        case ErrorKind::QueriedFailedVertex: return "QueriedFailedVertex";
        case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::QueryOutsideSU: return "QueryOutsideSU";
        case ErrorKind::InvalidCut: return "InvalidCut";
        case ErrorKind::ContractUnsatisfiable: return "ContractUnsatisfiable";
        case ErrorKind::NotFConnected: return "NotFConnected";
        case ErrorKind::WrongQuerySize: return "WrongQuerySize";
        case ErrorKind::VerificationFailed: return "VerificationFailed";
        case ErrorKind::CertificationFailed: return "CertificationFailed";
        case ErrorKind::FTooLarge: return "FTooLarge";
        case ErrorKind::MissingExplicitLabel: return "MissingExplicitLabel";
        case ErrorKind::TerminalReductionViolated: return "TerminalReductionViolated";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::FormatError: return "FormatError";
    }
    return "Unknown";
}

/// Every failure surfaced by the library carries one of the kinds above.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

}  // namespace vcut
