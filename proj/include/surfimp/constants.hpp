#pragma once

// Physical constants in Gaussian units (erg, s, cm, K).

namespace surfimp::constants {

inline constexpr double hbar = 1.054571817e-27;        // erg s
inline constexpr double k_boltzmann = 1.380649e-16;    // erg / K
inline constexpr double c = 2.99792458e10;             // cm / s
inline constexpr double erg_per_ev = 1.602176634e-12;  // erg
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double cm_per_um = 1.0e-4;

/// Stefan-Boltzmann constant pi^2 k^4 / (60 hbar^3 c^2), erg / (s cm^2 K^4).
inline constexpr double stefan_boltzmann =
    pi * pi * k_boltzmann * k_boltzmann * k_boltzmann * k_boltzmann /
    (60.0 * hbar * hbar * hbar * c * c);

/// Angular frequency (rad/s) corresponding to an energy hbar*omega in eV.
constexpr double ev_to_rad_per_s(double ev) { return ev * erg_per_ev / hbar; }

}  // namespace surfimp::constants
