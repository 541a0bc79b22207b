#pragma once

namespace awkit {

/// Numerical thresholds used across the library. All of them are relative:
/// a quantity is compared against `tol * scale`, where the scale of a matrix
/// is max(1, max |entry|). Defaults are engineering choices; override per call
/// where a different trade-off is needed.
struct Tolerances {
  /// A reduction/elimination pivot smaller than this (relative) is an error.
  double pivot = 1e-12;
  /// A reduced matrix with max-entry norm below this (relative) has vanished.
  double vanish = 1e-9;
  /// Constraint residuals below this (relative) count as "on the surface".
  double constraint = 1e-8;
};

/// Rejection threshold for self-adjointness of externally loaded matrices,
/// relative to max |entry|.
inline constexpr double kAsymmetryRejection = 1e-8;

/// Condition-estimate level above which reconstruction flags a warning.
inline constexpr double kConditionWarning = 1e12;

}  // namespace awkit
