#pragma once

// All numeric tolerances used across the library live here. Structural
// checks (hermiticity, norms, probability sums) are tighter than the
// accuracy promised by iterative routines.

namespace wbell::tol {

// Structural invariants: hermiticity, unit norms, trace-one, probability sums.
inline constexpr double kStructural = 1e-12;

// Accuracy contract of hermitian_eigenvalues.
inline constexpr double kEigen = 1e-10;

// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this.
inline constexpr double kOffDiagonal = 1e-14;

// Largest imaginary residue tolerated (then discarded) in an expectation value.
inline constexpr double kImagResidue = 1e-10;

// Minimum W-state fidelity required by the counterfactual-correlation chain.
inline constexpr double kFidelityGate = 1e-9;

// Slack allowed above the 2*sqrt(2) quantum ceiling in sampling checks.
inline constexpr double kCirelsonSlack = 1e-9;

// Smallest probability a conditioning event may carry.
inline constexpr double kConditioningFloor = 1e-12;

}  // namespace wbell::tol
