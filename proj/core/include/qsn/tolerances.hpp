#pragma once

namespace qsn::tol {

// Numeric contract for amplitude-level work. Digit arithmetic is exact and
// never consults these.
inline constexpr double norm = 1e-12;        // unit-norm slack on states
inline constexpr double prune = 1e-15;       // amplitudes below this are dropped
inline constexpr double unitarity = 1e-10;   // gauge matrix admission
inline constexpr double covariance = 1e-10;  // gauge-transported comparisons

}  // namespace qsn::tol
