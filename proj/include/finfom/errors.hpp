#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace finfom {

enum class ErrorCode {
  InvalidArgument,
  MalformedRow,
  InconsistentGroup,
  UnattainableGait,
  TooFewCycles,
  EmptyDataset,
  DivergedTraining,
  WrongModelKind,
  EmptyHoldout,
  IoError,
  VersionError,
  ChecksumError,
  ZeroPower,
  ZeroActuatorPower,
  OffAxisQuery,
  EmptyGrid,
  NoFeasibleGait,
  MissingModel,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // NoFeasibleGait carries the closest thrust the grid can deliver.
  std::optional<double> nearest_thrust;
  // MalformedRow carries the 1-based line number.
  std::optional<long> line_number;

private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace finfom
