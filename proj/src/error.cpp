#include "dwmod/error.hpp"

namespace dwmod {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonFinite: return "NonFinite";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::NotPSD: return "NotPSD";
    case Errc::InvalidParameters: return "InvalidParameters";
    case Errc::ZeroScalar: return "ZeroScalar";
    case Errc::NotCoisometryMultiple: return "NotCoisometryMultiple";
    case Errc::InvalidInstance: return "InvalidInstance";
    case Errc::BoundViolation: return "BoundViolation";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::WrongDimension: return "WrongDimension";
    case Errc::InvalidState: return "InvalidState";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace dwmod
