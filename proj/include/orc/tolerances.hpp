#pragma once

// Floating-point tolerances used wherever a float result is compared with an
// exact or closed-form value.

namespace orc::tolerance {

inline constexpr double eigenvalue = 1e-10;     // relative, eigenvalue checks
inline constexpr double identity = 1e-9;        // absolute, spectral identities
inline constexpr double bound_slack = 1e-8;     // eigenvalue vs bound comparisons
inline constexpr double rayleigh = 1e-8;        // Rayleigh ratio vs 2 - lambda
inline constexpr double degenerate = 1e-12;     // relative, "denominator is zero"

}  // namespace orc::tolerance
