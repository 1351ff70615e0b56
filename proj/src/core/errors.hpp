#pragma once

#include <stdexcept>
#include <string>

namespace nsconic {

enum class ErrorCode {
    NotPositiveDefinite,
    SingularSystem,
    NegativeQuadratic,
    DimensionMismatch,
    NotInterior,
    NotInteriorDual,
    NoConvergence,
    OutOfAnalysisRegion,
    StepLeftCone,
    UnknownConeType,
    ParseError,
    InvalidArgument,
    IoError,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

inline const char *error_code_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NegativeQuadratic: return "NegativeQuadratic";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::NotInteriorDual: return "NotInteriorDual";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::OutOfAnalysisRegion: return "OutOfAnalysisRegion";
    case ErrorCode::StepLeftCone: return "StepLeftCone";
    case ErrorCode::UnknownConeType: return "UnknownConeType";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

} // namespace nsconic
