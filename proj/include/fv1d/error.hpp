#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fv1d {

enum class ErrorCode {
    InvalidParameter,
    NonConvergence,
    PrecisionLoss,
    PoleAtZero,
    DomainError,
    ZeroNorm,
    NegativeCharge,
    InteriorPole,
    AnchorSingularity,
    StepUnderflow,
    OutsideDecayWindow,
    GridTooCoarse,
    LevelNotFound,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidParameter: return "InvalidParameter";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::PrecisionLoss: return "PrecisionLoss";
        case ErrorCode::PoleAtZero: return "PoleAtZero";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::ZeroNorm: return "ZeroNorm";
        case ErrorCode::NegativeCharge: return "NegativeCharge";
        case ErrorCode::InteriorPole: return "InteriorPole";
        case ErrorCode::AnchorSingularity: return "AnchorSingularity";
        case ErrorCode::StepUnderflow: return "StepUnderflow";
        case ErrorCode::OutsideDecayWindow: return "OutsideDecayWindow";
        case ErrorCode::GridTooCoarse: return "GridTooCoarse";
        case ErrorCode::LevelNotFound: return "LevelNotFound";
    }
    return "Unknown";
}

}  // namespace fv1d
