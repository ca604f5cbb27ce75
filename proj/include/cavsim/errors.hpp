#pragma once

#include <stdexcept>

namespace cavsim {

// Common base so callers can catch everything the simulator throws with one
// handler while tests still discriminate on the concrete type.
struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidSubsystem : SimError { using SimError::SimError; };
struct OutOfRange : SimError { using SimError::SimError; };
struct SpaceMismatch : SimError { using SimError::SimError; };
struct ZeroNorm : SimError { using SimError::SimError; };
struct NotNormalized : SimError { using SimError::SimError; };
struct TruncationLeakage : SimError { using SimError::SimError; };
struct IndexError : SimError { using SimError::SimError; };
struct NotHermitian : SimError { using SimError::SimError; };
struct NoConvergence : SimError { using SimError::SimError; };
struct ZeroProbabilityBranch : SimError { using SimError::SimError; };
struct InvalidRange : SimError { using SimError::SimError; };
struct NonPositiveCoupling : SimError { using SimError::SimError; };
struct DegenerateAngle : SimError { using SimError::SimError; };

}  // namespace cavsim
