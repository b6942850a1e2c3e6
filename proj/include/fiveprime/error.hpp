#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fiveprime {

enum class ErrorKind {
  InvalidParams,
  RatioOutOfBand,
  RangeTooLarge,
  LimitExceeded,
  NonPositiveDelta,
  StepTooCoarse,
  GridTooLarge,
  DomainViolation,
  MalformedWord,
  OutOfRange,
  InfeasibleProfile,
  InstanceTooLarge,
  MemoryLimit,
  SizeLimit,
  Io,
  Usage,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fiveprime
