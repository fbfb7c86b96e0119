#include "finfom/errors.hpp"

namespace finfom {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::InconsistentGroup: return "InconsistentGroup";
    case ErrorCode::UnattainableGait: return "UnattainableGait";
    case ErrorCode::TooFewCycles: return "TooFewCycles";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::DivergedTraining: return "DivergedTraining";
    case ErrorCode::WrongModelKind: return "WrongModelKind";
    case ErrorCode::EmptyHoldout: return "EmptyHoldout";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::VersionError: return "VersionError";
    case ErrorCode::ChecksumError: return "ChecksumError";
    case ErrorCode::ZeroPower: return "ZeroPower";
    case ErrorCode::ZeroActuatorPower: return "ZeroActuatorPower";
    case ErrorCode::OffAxisQuery: return "OffAxisQuery";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::NoFeasibleGait: return "NoFeasibleGait";
    case ErrorCode::MissingModel: return "MissingModel";
  }
  return "Unknown";
}

void raise(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(error_code_name(code)) + ": " + message);
}

}  // namespace finfom
