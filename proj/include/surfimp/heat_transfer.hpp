#pragma once

#include <vector>

#include "surfimp/materials.hpp"
#include "surfimp/quadrature.hpp"
#include "surfimp/sectors.hpp"

namespace surfimp {

/// Two plates at temperatures T1 (mirror1) and T2 (mirror2), gap in cm.
struct HeatCavitySpec {
  MaterialModel mirror1;
  MaterialModel mirror2;
  double gap_cm;
  double t1;
  double t2;

  void validate() const;
};

/// s(omega) at one frequency, erg/(rad cm^2), split by sector.
struct SpectralPoint {
  double omega;
  SectorValues s;
};

struct HeatResult {
  SectorValues flux;  // S, erg/(s cm^2)
  double error = 0.0;
  int evaluations = 0;
  ModelTag model = ModelTag::impedance;
  std::vector<SpectralPoint> spectrum;  // for plotting only; never summed into `flux`
};

struct HeatOptions {
  bool keep_spectrum = true;
  int points_per_decade = 60;
};

/// Bose occupation 1/(exp(hbar omega / kT) - 1).
double bose_occupation(double omega, double temperature);

/// B_TE = |(1+p z1)(1+p z2) - (1-p z1)(1-p z2) e^{2ipx}|^2 and
/// B_TM = |(p+z1)(p+z2) - (p-z1)(p-z2) e^{2ipx}|^2, with x = L omega / c.
double b_factor(Polarization pol, const PValue& p, complex zeta1, complex zeta2, double phase_x);

/// Spectral density s(omega) of the net flux from plate 1 to plate 2.
///
/// Impedance treatment:
///   s = -(4 hbar w^3 / pi^2 c^2) [n(w,T1) - n(w,T2)] Re z1 Re z2
///       Re \int dp p |p|^2 |e^{2ipx}| (1/B_TE + 1/B_TM)
/// Dielectric treatment: transmission form with Fresnel coefficients,
///   propagating (1-|r1|^2)(1-|r2|^2)/|1 - r1 r2 e^{2ipx}|^2,
///   evanescent  4 Im r1 Im r2 e^{-2sx}/|1 - r1 r2 e^{-2sx}|^2,
/// weighted by (hbar w^3 / 4 pi^2 c^2)[n(T1) - n(T2)] on the same p measure.
/// Both use the contour real p: 1 -> 0, then p = i s: 0 -> i s_max.
/// `error`, when given, receives the absolute quadrature error estimate.
SectorValues heat_spectral_density(AngularFrequency omega, const HeatCavitySpec& cavity,
                                   ModelTag tag, const QuadratureConfig& cfg,
                                   double* error = nullptr);

/// S = \int s(omega) d omega over the thermal band of max(T1, T2).
HeatResult heat_transfer(const HeatCavitySpec& cavity, ModelTag tag, const QuadratureConfig& cfg,
                         const HeatOptions& options = {});

/// s(omega) on a log grid spanning [omega_lo, omega_hi].
std::vector<SpectralPoint> heat_spectrum(const HeatCavitySpec& cavity, ModelTag tag,
                                         double omega_lo, double omega_hi,
                                         const QuadratureConfig& cfg, int points_per_decade = 60);

struct SpectralDifferenceRow {
  double omega;
  double impedance_te_ew;
  double lifshitz_te_ew;
  double difference() const { return impedance_te_ew - lifshitz_te_ew; }
};

/// s_imp,TE-ew(omega) - s_Lif,TE-ew(omega) on a log grid; band within [1e8, 1e16].
std::vector<SpectralDifferenceRow> spectral_difference(const HeatCavitySpec& cavity,
                                                       double omega_lo, double omega_hi,
                                                       const QuadratureConfig& cfg,
                                                       int points_per_decade = 60);

/// Log-spaced grid with `points_per_decade` points per decade, both ends included.
std::vector<double> log_grid(double lo, double hi, int points_per_decade);

}  // namespace surfimp
