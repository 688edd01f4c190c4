#pragma once

#include <stdexcept>
#include <string>

namespace polylim {

// Input-guard violations (CLI exit code 2).
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotClosedError : GuardError {
  NotClosedError() : GuardError("step sequence does not return to its start") {}
};
struct SelfIntersectingError : GuardError {
  SelfIntersectingError() : GuardError("step sequence revisits a vertex") {}
};
struct OddLengthError : GuardError {
  OddLengthError() : GuardError("closed lattice walks have even length") {}
};
struct SizeLimitError : GuardError {
  explicit SizeLimitError(const std::string& what) : GuardError(what) {}
};
struct OddPerimeterError : GuardError {
  OddPerimeterError() : GuardError("polygon perimeter must be even") {}
};
struct ZeroCountError : GuardError {
  explicit ZeroCountError(const std::string& what) : GuardError(what) {}
};
struct IrrationalConstantError : GuardError {
  explicit IrrationalConstantError(const std::string& what) : GuardError(what) {}
};
struct DegenerateFitError : GuardError {
  DegenerateFitError() : GuardError("least-squares fit needs two distinct abscissae") {}
};

// Verification failures (CLI exit code 3).
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Statistical-validation failures (CLI exit code 4).
struct StatisticalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal invariants; reaching these is a bug, not bad input.
struct NonStabilizedError : std::logic_error {
  NonStabilizedError() : std::logic_error("series fixed point failed to stabilize") {}
};
struct GammaPoleError : std::logic_error {
  GammaPoleError() : std::logic_error("gamma evaluated at a non-positive integer") {}
};
struct MixedRadicalError : std::logic_error {
  MixedRadicalError() : std::logic_error("exact scalars with different radical parts cannot be added") {}
};

}  // namespace polylim
