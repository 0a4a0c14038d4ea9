#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sobseq {

enum class ErrorCode {
    InvalidArgument,
    IndexOutsideDomain,
    MissingWeight,
    InfimumNotPositive,
    DomainMismatch,
    InvalidExponents,
    NotAHilbertSpace,
    NotStrictlySmoother,
    HypothesisFailure,
    ParameterMismatch,
    NotContinuous,
    EnvelopeViolated,
    ParseError,
    // Convergence failures. The CLI reports these with a distinct exit status.
    SeriesDiverges,
    EnvelopeNotSummable,
    ToleranceUnreachable,
};

std::string_view to_string(ErrorCode code);

/// True for the error codes that signal a divergent or uncertifiable series.
bool is_divergence(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what)
        , code_(code)
    {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace sobseq
