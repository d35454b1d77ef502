#ifndef NILPATH_ERROR_HPP
#define NILPATH_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace nilpath {

enum class ErrorKind {
    ParseError,
    InvalidArgument,
    NotSquare,
    DimensionMismatch,
    Singular,
    NotNilpotent,
    NotSimilar,
    InvalidMove,
    SizeCapExceeded,
    PowerMismatch,
    ZeroPolynomial,
    DuplicateSample,
    DegenerateParameter,
    NotInKernel,
    OutsideNeighborhood,
    WindowViolation,
    LiftDepthExceeded,
    MissingCells,
    DetourSearchExhausted,
    InternalGuard,
};

inline std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::NotSimilar: return "NotSimilar";
    case ErrorKind::InvalidMove: return "InvalidMove";
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::PowerMismatch: return "PowerMismatch";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::DuplicateSample: return "DuplicateSample";
    case ErrorKind::DegenerateParameter: return "DegenerateParameter";
    case ErrorKind::NotInKernel: return "NotInKernel";
    case ErrorKind::OutsideNeighborhood: return "OutsideNeighborhood";
    case ErrorKind::WindowViolation: return "WindowViolation";
    case ErrorKind::LiftDepthExceeded: return "LiftDepthExceeded";
    case ErrorKind::MissingCells: return "MissingCells";
    case ErrorKind::DetourSearchExhausted: return "DetourSearchExhausted";
    case ErrorKind::InternalGuard: return "InternalGuard";
    }
    return "Unknown";
}

/// Exception carrying a machine-readable error kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what)
        , kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string& what)
{
    if (!condition)
        fail(kind, what);
}

} // namespace nilpath

#endif // NILPATH_ERROR_HPP
