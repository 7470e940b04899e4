#pragma once

// Numerical tolerances shared by the library and its tests.

namespace qprotect::tol {

inline constexpr double kHermitian = 1e-12;
inline constexpr double kUnitary = 1e-12;
inline constexpr double kNormalized = 1e-12;
inline constexpr double kTrace = 1e-10;
inline constexpr double kNegativeEigenvalue = 1e-10;
inline constexpr double kOrthonormal = 1e-10;
inline constexpr double kCptp = 1e-10;
inline constexpr double kImaginaryResidue = 1e-12;

// Relative width of an eigenvalue cluster treated as degenerate.
inline constexpr double kDegenerate = 1e-12;

// Gram-Schmidt candidates with a smaller residual norm are skipped.
inline constexpr double kGramSchmidtResidual = 1e-8;

// Schmidt weights below this are treated as exactly zero.
inline constexpr double kSchmidtZero = 1e-14;

// State files whose norm deviates more than this trigger a warning.
inline constexpr double kStateFileNorm = 1e-6;

}  // namespace qprotect::tol
