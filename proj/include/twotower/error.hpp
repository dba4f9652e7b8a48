#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twotower {

enum class ErrorKind {
    InvalidInput,
    NotFundamental,
    FactorizationFailed,
    NoSolution,
    SquareDiscriminant,
    DiscriminantMismatch,
    BoundExceeded,
    NoSquareRoot,
    DivisibilityViolation,
    PreconditionUnmet,
    TemplateMismatch,
    Exhausted,
    Overflow,
};

constexpr std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NotFundamental: return "NotFundamental";
    case ErrorKind::FactorizationFailed: return "FactorizationFailed";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::SquareDiscriminant: return "SquareDiscriminant";
    case ErrorKind::DiscriminantMismatch: return "DiscriminantMismatch";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::NoSquareRoot: return "NoSquareRoot";
    case ErrorKind::DivisibilityViolation: return "DivisibilityViolation";
    case ErrorKind::PreconditionUnmet: return "PreconditionUnmet";
    case ErrorKind::TemplateMismatch: return "TemplateMismatch";
    case ErrorKind::Exhausted: return "Exhausted";
    case ErrorKind::Overflow: return "Overflow";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error
{
    ErrorKind kind_;

  public:
    Error(ErrorKind kind, std::string const & what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what)
        , kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
};

[[noreturn]] inline void fail(ErrorKind kind, std::string const & what)
{
    throw Error(kind, what);
}

} // namespace twotower
