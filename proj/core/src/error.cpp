#include <sheafctx/error.hpp>

using namespace sheafctx;

auto sheafctx::to_string(ErrorCode code) -> std::string_view
{
    switch (code) {
        case ErrorCode::DuplicateObservable:  return "DuplicateObservable";
        case ErrorCode::UnknownObservable:    return "UnknownObservable";
        case ErrorCode::InvalidObservable:    return "InvalidObservable";
        case ErrorCode::DominatedContext:     return "DominatedContext";
        case ErrorCode::InvalidContext:       return "InvalidContext";
        case ErrorCode::EmptyCover:           return "EmptyCover";
        case ErrorCode::SizeLimitExceeded:    return "SizeLimitExceeded";
        case ErrorCode::NotASubcontext:       return "NotASubcontext";
        case ErrorCode::InvalidModel:         return "InvalidModel";
        case ErrorCode::EmptySupport:         return "EmptySupport";
        case ErrorCode::IncompatibleModel:    return "IncompatibleModel";
        case ErrorCode::SolverBudgetExceeded: return "SolverBudgetExceeded";
        case ErrorCode::OutcomeOutOfRange:    return "OutcomeOutOfRange";
        case ErrorCode::ParseError:           return "ParseError";
        case ErrorCode::StabilityViolation:   return "StabilityViolation";
        case ErrorCode::DensityCollapse:      return "DensityCollapse";
        case ErrorCode::NonMonotoneMap:       return "NonMonotoneMap";
        case ErrorCode::InvalidArgument:      return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string & message) :
    std::runtime_error(std::string{to_string(code)} + ": " + message),
    _code(code)
{
}
