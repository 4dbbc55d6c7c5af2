#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dwmod {

enum class Errc {
  DimensionMismatch,
  NonFinite,
  NotHermitian,
  NoConvergence,
  NotPSD,
  InvalidParameters,
  ZeroScalar,
  NotCoisometryMultiple,
  InvalidInstance,
  BoundViolation,
  PreconditionViolated,
  InvalidSpec,
  WrongDimension,
  InvalidState,
  Parse,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can dispatch without string parsing.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace dwmod
