#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace maslov {

enum class ErrorCode {
    InvalidArgument,
    NotSymmetric,
    NoConvergence,
    Singular,
    NotPositive,
    OddDimension,
    FactorNotSymplectic,
    NotUnitary,
    DimensionMismatch,
    GridMismatch,
    RefinementNeeded,
    Overflow,
    NotRefinable,
    StepTooLarge,
    NotALoop,
    NotNearInteger,
    InvalidPath,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::FactorNotSymplectic: return "FactorNotSymplectic";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::RefinementNeeded: return "RefinementNeeded";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NotRefinable: return "NotRefinable";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::NotALoop: return "NotALoop";
    case ErrorCode::NotNearInteger: return "NotNearInteger";
    case ErrorCode::InvalidPath: return "InvalidPath";
    }
    return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code the
/// CLI maps onto its exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

    /// True for the codes that mean "sample the path more densely and retry".
    bool is_resolution_failure() const noexcept {
        return code_ == ErrorCode::RefinementNeeded || code_ == ErrorCode::StepTooLarge;
    }

private:
    ErrorCode code_;
    std::string detail_;
};

} // namespace maslov
