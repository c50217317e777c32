#pragma once

#include <stdexcept>
#include <string>

namespace fsm_jacobi {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A symbol set is empty or violates its variant invariants.
struct InvalidSetError : Error {
    using Error::Error;
};

/// Selfadjoint operation requested for a non-real main-diagonal set.
struct NotSelfadjointError : Error {
    using Error::Error;
};

/// Requested index range outside a field's window and the field cannot grow.
struct OutOfRangeError : Error {
    using Error::Error;
};

/// Explicitly materialized fields cannot be extended.
struct CannotExtendError : Error {
    using Error::Error;
};

/// A search (pattern wait, word sweep, matrix size) exceeded its budget.
struct BudgetExceededError : Error {
    using Error::Error;
};

/// Window planning ran past the configured search horizon.
struct HorizonExceededError : Error {
    using Error::Error;
};

/// Vector/window dimensions do not match.
struct DimensionError : Error {
    using Error::Error;
};

/// Operation requires an unshifted system.
struct UnsupportedShiftError : Error {
    using Error::Error;
};

/// Toeplitz symbol vanishes on the unit circle; operator not invertible.
struct SymbolVanishesError : Error {
    using Error::Error;
};

/// A required pivot is exactly zero; the window matrix is singular.
struct ExactlySingularError : Error {
    using Error::Error;
};

/// The set configuration classifies as NotFredholm; solve refused.
struct NotFredholmError : Error {
    using Error::Error;
};

/// Malformed configuration, flags or input files.
struct ConfigError : Error {
    using Error::Error;
};

/// Degenerate pseudospectrum grid.
struct InvalidGridError : Error {
    using Error::Error;
};

/// Empty input where a non-empty cloud is required.
struct InvalidInputError : Error {
    using Error::Error;
};

} // namespace fsm_jacobi
