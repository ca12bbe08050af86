#pragma once

namespace zres {

// Euler-Mascheroni constant, 30 significant digits (OEIS A001620).
inline constexpr double kEulerGamma = 0.577215664901532860606512090082;

// exp(EulerGamma), 30 significant digits (OEIS A073004).
inline constexpr double kExpEulerGamma = 1.78107241799019798523650410311;

inline constexpr double kPi = 3.14159265358979323846264338328;

inline constexpr double kSqrtTwoPi = 2.50662827463100050241576528481;

}  // namespace zres
