#pragma once

namespace viag::constants {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

/// Reduced Planck constant, J s.
inline constexpr double hbar = 1.054571817e-34;

/// Vacuum permittivity, F/m.
inline constexpr double epsilon0 = 8.85e-12;

}  // namespace viag::constants
