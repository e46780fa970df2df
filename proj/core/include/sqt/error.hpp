#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sqt {

enum class ErrorKind {
  BadPermutation,
  Disconnected,
  EmptyMarking,
  UnmarkedSingularity,
  IrrationalDirection,
  NotHorizontal,
  DegenerateRegion,
  RadiusTooLarge,
  CapExceeded,
  OrbitCapExceeded,
  ParseError,
  Overflow,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Domain error raised by every public operation of the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sqt
