#include "surfimp/spectra.hpp"

#include <cmath>

#include "surfimp/constants.hpp"
#include "surfimp/errors.hpp"

namespace surfimp {

namespace {

double density(AngularFrequency omega, double kperp, const SurfaceState& surface,
               Polarization pol) {
  const PValue p = p_of(omega, kperp);
  const complex zeta = impedance_of(surface.model, omega);
  const double denom = pol == Polarization::te ? std::norm(1.0 + zeta * p.p)
                                               : std::norm(zeta + p.p);
  if (zeta.real() == 0.0) return 0.0;
  if (denom == 0.0) {
    throw SingularityError(std::string(to_string(pol)) + " amplitude density: vanishing denominator",
                           omega.rad_s, p.p);
  }
  return 4.0 * constants::pi * constants::hbar * omega.rad_s / constants::c *
         thermal_weight(omega, surface.temperature) * zeta.real() / denom;
}

}  // namespace

double thermal_weight(AngularFrequency omega, double temperature) {
  if (!(temperature > 0.0)) throw DomainError("surface temperature must be positive");
  if (!(omega.rad_s > 0.0)) throw DomainError("omega must be positive");
  const double x = constants::hbar * omega.rad_s / (2.0 * constants::k_boltzmann * temperature);
  return 1.0 / std::tanh(x);
}

double te_amplitude_density(AngularFrequency omega, double kperp, const SurfaceState& surface) {
  return density(omega, kperp, surface, Polarization::te);
}

double tm_amplitude_density(AngularFrequency omega, double kperp, const SurfaceState& surface) {
  return density(omega, kperp, surface, Polarization::tm);
}

}  // namespace surfimp
