#include "surfimp/heat_transfer.hpp"

#include <algorithm>
#include <cmath>

#include "surfimp/constants.hpp"
#include "surfimp/errors.hpp"

namespace surfimp {

namespace {

using constants::c;
using constants::hbar;
using constants::pi;

// e^z - 1 without cancellation for small |z|.
complex expm1_complex(complex z) {
  const double a = z.real();
  const double b = z.imag();
  const double half_sin = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * half_sin * half_sin, std::exp(a) * std::sin(b)};
}

// Maximum number of Fabry-Perot breakpoints placed on the propagating leg.
constexpr int kMaxResonanceBreaks = 4000;

ContourHints make_hints(double phase_x, std::initializer_list<complex> scales) {
  ContourHints hints;
  const double spacing = pi / phase_x;
  if (1.0 / spacing <= kMaxResonanceBreaks) {
    for (double p = spacing; p < 1.0; p += spacing) hints.propagating.push_back(p);
  }
  hints.evanescent.push_back(1.0 / (2.0 * phase_x));
  for (complex z : scales) {
    const double m = std::abs(z);
    if (m > 0.0 && std::isfinite(m)) {
      hints.evanescent.push_back(m);
      hints.evanescent.push_back(1.0 / m);
    }
  }
  return hints;
}

QuadratureConfig inner_config(const QuadratureConfig& cfg) {
  return cfg.with_rel_tol(cfg.rel_tol * 0.1);
}

SectorValues impedance_density(AngularFrequency omega, const HeatCavitySpec& cav,
                               const QuadratureConfig& cfg, double bose_diff, double* error) {
  const complex z1 = impedance_of(cav.mirror1, omega);
  const complex z2 = impedance_of(cav.mirror2, omega);
  const double kernel = z1.real() * z2.real();
  if (kernel == 0.0) return {};
  const double x = cav.gap_cm * omega.rad_s / c;
  auto integrand = [&](const PValue& pv) {
    const complex p = pv.p;
    const double bte = b_factor(Polarization::te, pv, z1, z2, x);
    const double btm = b_factor(Polarization::tm, pv, z1, z2, x);
    // p |p|^2 is real on the propagating leg and i s^3 on the evanescent one.
    const complex pw = p * std::norm(p) * std::exp(-2.0 * p.imag() * x);
    return PolarizationPair{pw / bte, pw / btm};
  };
  const auto r = integrate_p_contour(integrand, omega.rad_s, cav.gap_cm, inner_config(cfg),
                                     make_hints(x, {z1, z2}));
  const double w = omega.rad_s;
  const double pref = -4.0 * hbar * w * w * w / (pi * pi * c * c) * bose_diff * kernel;
  if (error) *error = std::abs(pref) * r.error();
  SectorValues s;
  s.te_pw = pref * r.propagating.te.real();
  s.tm_pw = pref * r.propagating.tm.real();
  s.te_ew = pref * r.evanescent.te.real();
  s.tm_ew = pref * r.evanescent.tm.real();
  return s;
}

SectorValues dielectric_density(AngularFrequency omega, const HeatCavitySpec& cav,
                                const QuadratureConfig& cfg, double bose_diff, double* error) {
  if (cav.mirror1.is_ideal() || cav.mirror2.is_ideal()) {
    // Lossless perfect reflectors neither emit nor absorb; validate the other side anyway.
    if (!cav.mirror1.is_ideal()) (void)permittivity_of(cav.mirror1, omega);
    if (!cav.mirror2.is_ideal()) (void)permittivity_of(cav.mirror2, omega);
    return {};
  }
  const complex e1 = permittivity_of(cav.mirror1, omega);
  const complex e2 = permittivity_of(cav.mirror2, omega);
  const double x = cav.gap_cm * omega.rad_s / c;
  auto integrand = [&](const PValue& pv) {
    PolarizationPair out;
    for (Polarization pol : kPolarizations) {
      const complex r1 = reflection_fresnel(pv, e1, pol, omega.rad_s);
      const complex r2 = reflection_fresnel(pv, e2, pol, omega.rad_s);
      double tau;
      if (pv.sector == Sector::propagating) {
        const complex phase = std::exp(complex(0.0, 2.0 * pv.p.real() * x));
        tau = (1.0 - std::norm(r1)) * (1.0 - std::norm(r2)) / std::norm(1.0 - r1 * r2 * phase);
      } else {
        const double decay = std::exp(-2.0 * pv.p.imag() * x);
        tau = 4.0 * r1.imag() * r2.imag() * decay / std::norm(1.0 - r1 * r2 * decay);
      }
      (pol == Polarization::te ? out.te : out.tm) = pv.p * tau;
    }
    return out;
  };
  const auto r = integrate_p_contour(integrand, omega.rad_s, cav.gap_cm, inner_config(cfg),
                                     make_hints(x, {1.0 / std::sqrt(e1), 1.0 / std::sqrt(e2)}));
  const double w = omega.rad_s;
  const double pref = -hbar * w * w * w / (4.0 * pi * pi * c * c) * bose_diff;
  if (error) *error = std::abs(pref) * r.error();
  SectorValues s;
  s.te_pw = pref * r.propagating.te.real();
  s.tm_pw = pref * r.propagating.tm.real();
  s.te_ew = pref * r.evanescent.te.real();
  s.tm_ew = pref * r.evanescent.tm.real();
  return s;
}

}  // namespace

void HeatCavitySpec::validate() const {
  if (!(gap_cm > 0.0) || !std::isfinite(gap_cm)) throw DomainError("gap L must be positive");
  if (!(t1 > 0.0) || !(t2 > 0.0)) throw DomainError("plate temperatures must be positive");
}

double bose_occupation(double omega, double temperature) {
  return 1.0 / std::expm1(hbar * omega / (constants::k_boltzmann * temperature));
}

double b_factor(Polarization pol, const PValue& pv, complex zeta1, complex zeta2, double phase_x) {
  const complex p = pv.p;
  // Rearranged as (1 - E) A + p (z1 + z2)(1 + E), E = e^{2ipx}, to keep
  // precision when E -> 1.
  const complex one_minus_e = -expm1_complex(complex(0.0, 2.0) * p * phase_x);
  const complex one_plus_e = 2.0 - one_minus_e;
  const complex a = pol == Polarization::te ? 1.0 + p * p * zeta1 * zeta2 : p * p + zeta1 * zeta2;
  return std::norm(one_minus_e * a + p * (zeta1 + zeta2) * one_plus_e);
}

SectorValues heat_spectral_density(AngularFrequency omega, const HeatCavitySpec& cavity,
                                   ModelTag tag, const QuadratureConfig& cfg, double* error) {
  cavity.validate();
  if (!(omega.rad_s > 0.0)) throw DomainError("omega must be positive");
  if (error) *error = 0.0;
  const double bose_diff =
      bose_occupation(omega.rad_s, cavity.t1) - bose_occupation(omega.rad_s, cavity.t2);
  if (bose_diff == 0.0) {
    // Still reject unusable materials so T1 == T2 does not mask a model error.
    if (tag == ModelTag::impedance) {
      (void)impedance_of(cavity.mirror1, omega);
      (void)impedance_of(cavity.mirror2, omega);
    } else {
      if (!cavity.mirror1.is_ideal()) (void)permittivity_of(cavity.mirror1, omega);
      if (!cavity.mirror2.is_ideal()) (void)permittivity_of(cavity.mirror2, omega);
    }
    return {};
  }
  return tag == ModelTag::impedance ? impedance_density(omega, cavity, cfg, bose_diff, error)
                                    : dielectric_density(omega, cavity, cfg, bose_diff, error);
}

HeatResult heat_transfer(const HeatCavitySpec& cavity, ModelTag tag, const QuadratureConfig& cfg,
                         const HeatOptions& options) {
  cavity.validate();
  cfg.validate();
  HeatResult out;
  out.model = tag;
  const double t_max = std::max(cavity.t1, cavity.t2);
  double inner_error = 0.0;
  auto h = [&](double w) {
    double err = 0.0;
    SectorValues s = heat_spectral_density(AngularFrequency{w}, cavity, tag, cfg, &err);
    inner_error = std::max(inner_error, err / std::max(magnitude(s), 1e-300));
    return s;
  };
  const auto r = integrate_frequency(h, t_max, cfg);
  out.flux = r.value;
  // Inner integrals are relative to their own value; charge the worst one to the total.
  out.error = r.error + inner_error * magnitude(r.value);
  out.evaluations = r.evaluations;
  if (options.keep_spectrum) {
    out.spectrum =
        heat_spectrum(cavity, tag, kOmegaMin, frequency_cutoff(t_max), cfg, options.points_per_decade);
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, int points_per_decade) {
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("log grid needs 0 < lo < hi");
  if (points_per_decade < 1) throw DomainError("points_per_decade must be >= 1");
  const double decades = std::log10(hi / lo);
  const int n = std::max(1, static_cast<int>(std::ceil(decades * points_per_decade - 1e-9)));
  std::vector<double> out;
  out.reserve(n + 1);
  for (int i = 0; i <= n; ++i) out.push_back(lo * std::pow(10.0, decades * i / n));
  out.back() = hi;
  return out;
}

std::vector<SpectralPoint> heat_spectrum(const HeatCavitySpec& cavity, ModelTag tag,
                                         double omega_lo, double omega_hi,
                                         const QuadratureConfig& cfg, int points_per_decade) {
  std::vector<SpectralPoint> out;
  for (double w : log_grid(omega_lo, omega_hi, points_per_decade)) {
    out.push_back({w, heat_spectral_density(AngularFrequency{w}, cavity, tag, cfg)});
  }
  return out;
}

std::vector<SpectralDifferenceRow> spectral_difference(const HeatCavitySpec& cavity,
                                                       double omega_lo, double omega_hi,
                                                       const QuadratureConfig& cfg,
                                                       int points_per_decade) {
  if (!(omega_lo >= 1e8 && omega_hi <= 1e16)) {
    throw DomainError("spectral difference band must lie within [1e8, 1e16] rad/s");
  }
  std::vector<SpectralDifferenceRow> out;
  for (double w : log_grid(omega_lo, omega_hi, points_per_decade)) {
    const AngularFrequency omega{w};
    out.push_back({w, heat_spectral_density(omega, cavity, ModelTag::impedance, cfg).te_ew,
                   heat_spectral_density(omega, cavity, ModelTag::lifshitz_dielectric, cfg).te_ew});
  }
  return out;
}

}  // namespace surfimp
