#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace revmark {

enum class ErrorCode {
  InvalidArgument,
  MalformedFile,
  IoFailure,
  DimensionMismatch,
  OddLength,
  LengthMismatch,
  OddDimensions,
  ThresholdOutOfRange,
  AmbiguousShiftDirection,
  EmptyLogo,
  GridMismatch,
  CentreUnderflow,
  CoordinateOverflow,
  MalformedOverhead,
  InsufficientCapacity,
  OverflowUnrecoverable,
  ImageTooSmall,
  NotAuthentic,
};

std::string_view error_name(ErrorCode code) noexcept;

// Every failure raised by the library. what() is "<Name>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

class InsufficientCapacityError : public Error {
 public:
  InsufficientCapacityError(std::size_t capacity, std::size_t required);

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t capacity_;
  std::size_t required_;
};

}  // namespace revmark
