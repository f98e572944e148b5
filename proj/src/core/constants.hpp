#pragma once

namespace vgl {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kFourPi = 4.0 * kPi;

// Mean of ln(x^2+y^2) over the unit cell centered at the origin.  Used to give
// the logarithmic background a finite, quadrature-consistent value at grid
// nodes that coincide with a vortex center:  pi/2 - 3 - ln 2.
inline constexpr double kLogCellMean = 1.57079632679489661923 - 3.0 - 0.69314718055994530942;

inline constexpr const char* kVersion = "0.1.0";

}  // namespace vgl
