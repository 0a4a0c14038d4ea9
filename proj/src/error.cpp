#include "sobseq/error.hpp"

namespace sobseq {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IndexOutsideDomain: return "IndexOutsideDomain";
    case ErrorCode::MissingWeight: return "MissingWeight";
    case ErrorCode::InfimumNotPositive: return "InfimumNotPositive";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::InvalidExponents: return "InvalidExponents";
    case ErrorCode::NotAHilbertSpace: return "NotAHilbertSpace";
    case ErrorCode::NotStrictlySmoother: return "NotStrictlySmoother";
    case ErrorCode::HypothesisFailure: return "HypothesisFailure";
    case ErrorCode::ParameterMismatch: return "ParameterMismatch";
    case ErrorCode::NotContinuous: return "NotContinuous";
    case ErrorCode::EnvelopeViolated: return "EnvelopeViolated";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SeriesDiverges: return "SeriesDiverges";
    case ErrorCode::EnvelopeNotSummable: return "EnvelopeNotSummable";
    case ErrorCode::ToleranceUnreachable: return "ToleranceUnreachable";
    }
    return "Unknown";
}

bool is_divergence(ErrorCode code)
{
    return code == ErrorCode::SeriesDiverges || code == ErrorCode::EnvelopeNotSummable ||
           code == ErrorCode::ToleranceUnreachable;
}

} // namespace sobseq
