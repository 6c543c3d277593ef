#include "rectinv/error.hpp"

namespace rectinv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::UnsupportedMap: return "UnsupportedMap";
    case ErrorCode::NonFiniteIntegrand: return "NonFiniteIntegrand";
    case ErrorCode::TailDivergence: return "TailDivergence";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NoStrip: return "NoStrip";
    case ErrorCode::NoClosedForm: return "NoClosedForm";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::UnknownBoundary: return "UnknownBoundary";
    case ErrorCode::NotRectangularizable: return "NotRectangularizable";
    case ErrorCode::SidePoleConflict: return "SidePoleConflict";
    case ErrorCode::ZInsideRectangle: return "ZInsideRectangle";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
  }
  return "Unknown";
}

}  // namespace rectinv
