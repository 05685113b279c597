#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sheafctx
{
    enum class ErrorCode
    {
        DuplicateObservable,
        UnknownObservable,
        InvalidObservable,
        DominatedContext,
        InvalidContext,
        EmptyCover,
        SizeLimitExceeded,
        NotASubcontext,
        InvalidModel,
        EmptySupport,
        IncompatibleModel,
        SolverBudgetExceeded,
        OutcomeOutOfRange,
        ParseError,
        StabilityViolation,
        DensityCollapse,
        NonMonotoneMap,
        InvalidArgument
    };

    auto to_string(ErrorCode code) -> std::string_view;

    /// Every failure raised by the library. The code identifies the contract
    /// that was violated; the message carries the offending detail.
    class Error : public std::runtime_error
    {
        public:
            Error(ErrorCode code, const std::string & message);

            auto code() const noexcept -> ErrorCode { return _code; }

        private:
            ErrorCode _code;
    };
}
