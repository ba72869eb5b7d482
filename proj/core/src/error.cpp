#include "sealrestore/error.hpp"

namespace sealrestore {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::DecodeError: return "DecodeError";
    case ErrorCode::ZeroDimension: return "ZeroDimension";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidKernel: return "InvalidKernel";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyImage: return "EmptyImage";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::InvalidCodepoint: return "InvalidCodepoint";
    case ErrorCode::PlacementInfeasible: return "PlacementInfeasible";
    case ErrorCode::NoTemplates: return "NoTemplates";
    case ErrorCode::EmptyCanvas: return "EmptyCanvas";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace sealrestore
