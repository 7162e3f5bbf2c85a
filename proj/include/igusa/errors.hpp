#pragma once

#include <stdexcept>
#include <string>

namespace igusa {

enum class ErrorKind {
    InvalidInput,
    EmptyInput,
    Syntax,
    ZeroSeries,
    NonPrimitive,
    NotRegular,
    NotAdmissible,
    ConditionViolated,
    UnsupportedGroundField,
    SmoothBranchUnsupported,
    NonReducedBranch,
    PrecisionExhausted,
    DepthExceeded,
    FieldTooLarge,
    SymbolicCountMissing,
    GlobalStructureUnsupported,
    TruePoleViolation,
    Mismatch,
    BudgetExceeded,
    InvariantViolation,
};

inline const char* kind_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::ZeroSeries: return "ZeroSeries";
    case ErrorKind::NonPrimitive: return "NonPrimitive";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::ConditionViolated: return "ConditionViolated";
    case ErrorKind::UnsupportedGroundField: return "UnsupportedGroundField";
    case ErrorKind::SmoothBranchUnsupported: return "SmoothBranchUnsupported";
    case ErrorKind::NonReducedBranch: return "NonReducedBranch";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::FieldTooLarge: return "FieldTooLarge";
    case ErrorKind::SymbolicCountMissing: return "SymbolicCountMissing";
    case ErrorKind::GlobalStructureUnsupported: return "GlobalStructureUnsupported";
    case ErrorKind::TruePoleViolation: return "TruePoleViolation";
    case ErrorKind::Mismatch: return "Mismatch";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind), message_(what)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& message() const noexcept { return message_; }

private:
    ErrorKind kind_;
    std::string message_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

inline void ensure(bool cond, const std::string& what)
{
    if (!cond)
        fail(ErrorKind::InvariantViolation, what);
}

} // namespace igusa
