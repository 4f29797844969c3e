#pragma once

#include "surfimp/materials.hpp"

namespace surfimp {

/// A single metal surface in thermal equilibrium at `temperature` (K).
struct SurfaceState {
  MaterialModel model;
  double temperature;
};

/// Spectral densities of the TE (a) and TM (b) field amplitudes radiated by a
/// surface, as the coefficients of delta(omega - omega') delta(k - k'):
///
///   <a a*> = (4 pi hbar omega / c) coth(hbar omega / 2kT) Re zeta / |1 + zeta p|^2
///   <b b*> = (4 pi hbar omega / c) coth(hbar omega / 2kT) Re zeta / |zeta + p|^2
///
/// with p = c k_z / omega (evanescent kperp > omega/c gives imaginary p). The
/// impedance zeta is the model's surface impedance; Drude models use
/// 1/sqrt(eps_D). All other second moments (<a a>, <b b>, <a b*>, <a b>)
/// vanish identically, so no accessor for them is provided beyond the
/// constant zeros below.
double te_amplitude_density(AngularFrequency omega, double kperp, const SurfaceState& surface);
double tm_amplitude_density(AngularFrequency omega, double kperp, const SurfaceState& surface);

/// coth(hbar omega / 2kT), the equilibrium weight shared by both densities.
double thermal_weight(AngularFrequency omega, double temperature);

/// <a b*>: polarizations are uncorrelated.
constexpr double cross_density(AngularFrequency, double) { return 0.0; }
/// <a a> and <b b>: no anomalous correlations in equilibrium.
constexpr double anomalous_density(AngularFrequency, double) { return 0.0; }

}  // namespace surfimp
