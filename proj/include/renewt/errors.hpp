#ifndef RENEWT_ERRORS_HPP
#define RENEWT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace renewt {

// Base class for all library errors. `code` is a stable machine-readable
// identifier mirrored into CLI diagnostics.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Input does not satisfy an operation's precondition (CLI exit code 2).
class InputError : public Error {
public:
    using Error::Error;
};

// A numeric computation or internal verification failed (CLI exit code 3).
class MathError : public Error {
public:
    using Error::Error;
};

struct InvalidParameter : InputError {
    explicit InvalidParameter(const std::string& what) : InputError("invalid-parameter", what) {}
};
struct DegenerateInput : InputError {
    explicit DegenerateInput(const std::string& what) : InputError("degenerate-input", what) {}
};
struct UnicriticalInput : InputError {
    explicit UnicriticalInput(const std::string& what) : InputError("unicritical-input", what) {}
};
struct PoleInput : InputError {
    explicit PoleInput(const std::string& what) : InputError("pole-input", what) {}
};
struct NotRealizable : InputError {
    explicit NotRealizable(const std::string& what) : InputError("not-realizable", what) {}
};
struct NonIntegerMultiplicity : InputError {
    explicit NonIntegerMultiplicity(const std::string& what)
        : InputError("non-integer-multiplicity", what) {}
};
struct PaletteTooSmall : InputError {
    explicit PaletteTooSmall(const std::string& what) : InputError("palette-too-small", what) {}
};
struct ParseError : InputError {
    explicit ParseError(const std::string& what) : InputError("parse-error", what) {}
};

struct SolverFailure : MathError {
    using MathError::MathError;
    explicit SolverFailure(const std::string& what) : MathError("solver-failure", what) {}
};
// Root solver missed its residual target; a SolverFailure so callers that
// merely propagate ("SolverFailure propagated from polyroot") need no remap.
struct NoConvergence : SolverFailure {
    explicit NoConvergence(const std::string& what) : SolverFailure("no-convergence", what) {}
};
struct ParabolicFixedPoint : MathError {
    explicit ParabolicFixedPoint(const std::string& what)
        : MathError("parabolic-fixed-point", what) {}
};
struct VerificationFailure : MathError {
    explicit VerificationFailure(const std::string& what)
        : MathError("verification-failure", what) {}
};

} // namespace renewt

#endif
