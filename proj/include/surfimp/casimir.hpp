#pragma once

#include <string>

#include "surfimp/materials.hpp"
#include "surfimp/quadrature.hpp"
#include "surfimp/sectors.hpp"

namespace surfimp {

/// Two mirrors at a common temperature T (K, T = 0 allowed), gap in cm.
struct CavitySpec {
  MaterialModel mirror1;
  MaterialModel mirror2;
  double gap_cm;
  double temperature;

  void validate() const;
};

/// C_alpha = e^{-2ipx} / (r1 r2), x = omega L / c, held as the product
/// R = r1 r2 and the phase E = e^{2ipx} so that neither overflows. R = 0 is
/// the "infinite C" case, whose (C - 1)^{-1} is exactly zero.
struct CAlpha {
  complex r_product;
  complex phase;

  bool infinite() const { return r_product == complex(0.0, 0.0); }
  complex value() const { return 1.0 / (r_product * phase); }
  /// (C - 1)^{-1} = R E / (1 - R E).
  complex resolvent() const;
};

CAlpha c_alpha(const PValue& p, double omega, double gap_cm, complex r1, complex r2);

/// Pressure pi^2 hbar c / (240 L^4) between perfect mirrors at T = 0, dyn/cm^2.
double ideal_casimir_force(double gap_cm);

/// Real-frequency spectral density of the attraction, dyn/(cm^2 rad/s):
///   F_w = coth(hbar w / 2kT) (hbar w^3 / 2 pi^2 c^3) Re \int p^2 dp sum_a (C_a - 1)^{-1}
/// on the contour real p: 1 -> 0, then 0 -> i s_max. The L-independent
/// 1/2 terms are dropped. Sectors follow the contour legs.
SectorValues casimir_spectral_density(AngularFrequency omega, const CavitySpec& cavity,
                                      ModelTag tag, const QuadratureConfig& cfg,
                                      double* error = nullptr);

/// Same quantity with the p integral moved onto the vertical line
/// p = 1 + i t, t >= 0, where the Fabry-Perot factor decays. Valid when the
/// integrand is analytic in the strip 0 <= Re p <= 1, Im p >= 0, which holds
/// for passive impedance mirrors. No sector split; only TE/TM.
PolarizationValues casimir_spectral_density_deformed(AngularFrequency omega,
                                                     const CavitySpec& cavity, ModelTag tag,
                                                     const QuadratureConfig& cfg,
                                                     double* error = nullptr);

struct ForceDecomposition {
  PolarizationValues parts;  // dyn/cm^2, positive = attraction
  double error = 0.0;
  ModelTag model = ModelTag::impedance;
  long matsubara_terms = 0;  // 0 for the T = 0 frequency integral
  std::string static_limit;  // xi -> 0 reflection limits used for n = 0

  double total() const { return parts.total(); }
};

/// Total force in the imaginary-frequency representation:
///   F = (kT/pi) sum'_n \int_{xi_n/c}^inf q^2 dq sum_a [e^{2qL}/(r1 r2) - 1]^{-1},
/// reflection coefficients at omega = i xi_n with p_tilde = c q / xi_n, the
/// n = 0 term halved and taken from the analytic xi -> 0 limits. T = 0
/// replaces the sum by (hbar / 2 pi^2) \int d xi.
ForceDecomposition casimir_force(const CavitySpec& cavity, ModelTag tag,
                                 const QuadratureConfig& cfg, const MatsubaraConfig& mcfg);

/// Summand of the Matsubara series (without the kT/pi factor) at xi; xi = 0
/// gives the static term.
PolarizationValues matsubara_summand(double xi, const CavitySpec& cavity, ModelTag tag,
                                     const QuadratureConfig& cfg, double* error = nullptr);

/// F_TE(T) - F_TE(0); positive adds to the attraction.
double thermal_te_correction(const CavitySpec& cavity, ModelTag tag, const QuadratureConfig& cfg,
                             const MatsubaraConfig& mcfg);

}  // namespace surfimp
