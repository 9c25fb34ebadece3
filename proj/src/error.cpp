#include "dce/error.hpp"

namespace dce {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::RingTooSmall: return "RingTooSmall";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::InvalidTopology: return "InvalidTopology";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::UnsupportedTopology: return "UnsupportedTopology";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NonPositiveModeEnergy: return "NonPositiveModeEnergy";
    case ErrorCode::NoResponse: return "NoResponse";
    case ErrorCode::ZeroIntensity: return "ZeroIntensity";
    case ErrorCode::AsymmetricModes: return "AsymmetricModes";
    case ErrorCode::NotNormalOrdered: return "NotNormalOrdered";
    case ErrorCode::TruncationUnreliable: return "TruncationUnreliable";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NoPhotons: return "NoPhotons";
    case ErrorCode::QuadratureDisagreement: return "QuadratureDisagreement";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::MissingRequired: return "MissingRequired";
    case ErrorCode::RangeError: return "RangeError";
  }
  return "Unknown";
}

}  // namespace dce
