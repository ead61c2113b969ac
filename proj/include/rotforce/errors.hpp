#pragma once

#include <stdexcept>
#include <string>

namespace rotforce {

/// Base class for every domain error raised by the library. The CLI maps any
/// `Error` to exit status 1; usage problems never derive from it.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define ROTFORCE_ERROR(Name)                                                  \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& what) : Error(#Name, what) {}        \
    }

// moebius
ROTFORCE_ERROR(InvalidMatrix);
ROTFORCE_ERROR(InvalidPoint);
ROTFORCE_ERROR(NotElliptic);
ROTFORCE_ERROR(NotHyperbolic);
ROTFORCE_ERROR(NotHyperbolicTriangle);

// circledyn
ROTFORCE_ERROR(NotMonotone);
ROTFORCE_ERROR(StabilizerNotTrivial);
ROTFORCE_ERROR(GapBudgetExceeded);

// rotarith
ROTFORCE_ERROR(Undefined);
ROTFORCE_ERROR(Ambiguous);
ROTFORCE_ERROR(NonDiscrete);
ROTFORCE_ERROR(NoSolution);
ROTFORCE_ERROR(InvalidSystem);

// eulerorb
ROTFORCE_ERROR(BudgetExceeded);
ROTFORCE_ERROR(InvalidSignature);

// quatalg
ROTFORCE_ERROR(NotIrreducible);
ROTFORCE_ERROR(NotTotallyReal);
ROTFORCE_ERROR(UnsupportedDegree);
ROTFORCE_ERROR(SignUndecidable);
ROTFORCE_ERROR(NotAdmissible);
ROTFORCE_ERROR(NotNormOne);
ROTFORCE_ERROR(InvalidAlgebra);

// forcing
ROTFORCE_ERROR(UnknownGenerator);
ROTFORCE_ERROR(UnassignedGenerator);
ROTFORCE_ERROR(Inconsistent);
ROTFORCE_ERROR(InvalidCoverGenerator);
ROTFORCE_ERROR(NotRepresentable);

#undef ROTFORCE_ERROR

/// Parse failure with a 1-based source position.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, int line, int column)
        : Error("SyntaxError", what + " at line " + std::to_string(line) +
                                   ", column " + std::to_string(column)),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace rotforce
