#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace roundtable {

enum class ErrorCode {
    InvalidInput,
    MalformedCsv,
    // fov-geometry
    TargetExceedsDevice,
    AspectMismatch,
    // circle-layout
    InvalidCount,
    AtOrigin,
    // placement-models
    UnsupportedScenario,
    NotTabulated,
    // model-fitting
    InsufficientData,
    DegenerateDesign,
    ZeroVariance,
    // bandwidth accounting
    NonMonotoneTime,
    // media-pipeline
    FormatMismatch,
    // wire codec
    Truncated,
    UnknownType,
    LengthMismatch,
    InvariantViolation,
};

std::string_view to_string(ErrorCode code);

/// Domain error carrying a stable code; the CLI maps codes to exit statuses.
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
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::MalformedCsv: return "malformed-csv";
    case ErrorCode::TargetExceedsDevice: return "target-exceeds-device";
    case ErrorCode::AspectMismatch: return "aspect-mismatch";
    case ErrorCode::InvalidCount: return "invalid-count";
    case ErrorCode::AtOrigin: return "at-origin";
    case ErrorCode::UnsupportedScenario: return "unsupported-scenario";
    case ErrorCode::NotTabulated: return "not-tabulated";
    case ErrorCode::InsufficientData: return "insufficient-data";
    case ErrorCode::DegenerateDesign: return "degenerate-design";
    case ErrorCode::ZeroVariance: return "zero-variance";
    case ErrorCode::NonMonotoneTime: return "non-monotone-time";
    case ErrorCode::FormatMismatch: return "format-mismatch";
    case ErrorCode::Truncated: return "truncated";
    case ErrorCode::UnknownType: return "unknown-type";
    case ErrorCode::LengthMismatch: return "length-mismatch";
    case ErrorCode::InvariantViolation: return "invariant-violation";
    }
    return "unknown-error";
}

}  // namespace roundtable
