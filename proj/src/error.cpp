#include "revmark/error.hpp"

namespace revmark {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OddLength: return "OddLength";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::OddDimensions: return "OddDimensions";
    case ErrorCode::ThresholdOutOfRange: return "ThresholdOutOfRange";
    case ErrorCode::AmbiguousShiftDirection: return "AmbiguousShiftDirection";
    case ErrorCode::EmptyLogo: return "EmptyLogo";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::CentreUnderflow: return "CentreUnderflow";
    case ErrorCode::CoordinateOverflow: return "CoordinateOverflow";
    case ErrorCode::MalformedOverhead: return "MalformedOverhead";
    case ErrorCode::InsufficientCapacity: return "InsufficientCapacity";
    case ErrorCode::OverflowUnrecoverable: return "OverflowUnrecoverable";
    case ErrorCode::ImageTooSmall: return "ImageTooSmall";
    case ErrorCode::NotAuthentic: return "NotAuthentic";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

InsufficientCapacityError::InsufficientCapacityError(std::size_t capacity, std::size_t required)
    : Error(ErrorCode::InsufficientCapacity,
            "capacity " + std::to_string(capacity) + " bits, payload needs " +
                std::to_string(required) + " bits"),
      capacity_(capacity),
      required_(required) {}

}  // namespace revmark
