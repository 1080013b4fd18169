#pragma once

#include <stdexcept>
#include <string>

namespace madelung {

// Base for all recoverable failures of the numerical contracts. The CLI maps
// these to exit code 2; bad configuration input maps to exit code 1.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Right-hand side produced NaN/Inf while the state was still below the
// blow-up threshold, so the integrator cannot make progress.
struct NonFiniteRhs : DomainError {
    using DomainError::DomainError;
};

// Log-divergence tail fit rejected: too few tail nodes or no divergence.
struct FitFailed : DomainError {
    using DomainError::DomainError;
};

// Stencil applied to a grid whose spacing is not uniform.
struct NonUniformGrid : DomainError {
    using DomainError::DomainError;
};

// Integration reached the no-trapping horizon without the potential diverging.
struct NoBlowup : DomainError {
    using DomainError::DomainError;
};

// Central potential value zero: the identically flat solution cannot be
// normalized into a density.
struct DegenerateFlat : DomainError {
    using DomainError::DomainError;
};

// Gibbs exponent would overflow; only possible if max-shift was skipped.
struct OverflowGuard : DomainError {
    using DomainError::DomainError;
};

// Temporal central value has the wrong sign for the trapped family.
struct WrongSign : DomainError {
    using DomainError::DomainError;
};

// Combined flat potential is non-negative, so no real mass can be assigned.
struct NonNegativeUtot : DomainError {
    using DomainError::DomainError;
};

// Round-trip evaluation was requested inside the density-floor zone where
// the reconstructed amplitude is cut off.
struct DensityFloorReached : DomainError {
    using DomainError::DomainError;
};

}  // namespace madelung
