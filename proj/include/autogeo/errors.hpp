#pragma once

#include <stdexcept>
#include <string>

namespace autogeo {

// Base class for all domain/precondition failures raised by this library.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Speed vector is null (or not timelike-positive in the index-2 metric).
struct NullSpeedError final : DomainError {
    using DomainError::DomainError;
};

// u x u' vanishes while the A-term is active; the 4/3 power is not smooth there.
struct CrossSingularError final : DomainError {
    using DomainError::DomainError;
};

// Chart condition violated (u^0 ~ 0, or 1 + v.v <= 0 on the contact chart).
struct ChartViolationError final : DomainError {
    using DomainError::DomainError;
};

// A 3-vector handed to the reduction does not satisfy the density constraint.
struct InconsistentDensityError final : DomainError {
    using DomainError::DomainError;
};

// Speed is parallel to the frame axis selected for the Lagrangian.
struct AxisSingularError final : DomainError {
    using DomainError::DomainError;
};

struct StepOutOfRangeError final : DomainError {
    using DomainError::DomainError;
};

// A matrix fails R^T G R = G.
struct NotAnIsometryError final : DomainError {
    using DomainError::DomainError;
};

struct EmptyTrajectoryError final : DomainError {
    using DomainError::DomainError;
};

struct StepBudgetError final : DomainError {
    using DomainError::DomainError;
};

// Raised by a single RK4 step when a stage leaves the admissible domain.
// `stage` is 0..3 for the four internal evaluations, -1 for a non-finite state.
struct DomainExitError final : DomainError {
    DomainExitError(const std::string& what, int stage_)
        : DomainError(what), stage(stage_) {}
    int stage;
};

}  // namespace autogeo
