#include "surfimp/casimir.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "surfimp/constants.hpp"
#include "surfimp/errors.hpp"
#include "surfimp/spectra.hpp"

namespace surfimp {

namespace {

using constants::c;
using constants::hbar;
using constants::pi;

constexpr double kPoleProximity = 1e-12;

// Width Y of the window in y = 2qL past which e^{-y} y^2 is below tol.
double decay_window(double tol) {
  const double l = std::log(1.0 / tol);
  return l + 3.0 * std::log(l + 1.0) + 5.0;
}

double thermal_factor(double omega, double temperature) {
  return temperature > 0.0 ? thermal_weight(AngularFrequency{omega}, temperature) : 1.0;
}

QuadratureConfig inner_config(const QuadratureConfig& cfg) {
  return cfg.with_rel_tol(cfg.rel_tol * 0.1);
}

complex resolvent_checked(const CAlpha& ca, double omega, complex p) {
  if (ca.infinite()) return {0.0, 0.0};
  const complex re = ca.r_product * ca.phase;
  // |C - 1| = |1 - RE| / |RE|. Every contour passes C = 1 at p = 0, where the
  // p^2 weight keeps the integrand finite, so proximity is measured against |p|.
  if (std::abs(1.0 - re) < kPoleProximity * std::abs(re) * std::min(1.0, std::abs(p))) {
    throw SingularityError("cavity resonance: |C - 1| below pole-proximity threshold", omega, p);
  }
  return re / (1.0 - re);
}

PolarizationPair resolvents(const PValue& pv, double omega, const CavitySpec& cav, ModelTag tag) {
  const AngularFrequency w{omega};
  PolarizationPair out;
  for (Polarization pol : kPolarizations) {
    const complex r1 = reflection(cav.mirror1, tag, w, pv, pol);
    const complex r2 = reflection(cav.mirror2, tag, w, pv, pol);
    const complex g = resolvent_checked(c_alpha(pv, omega, cav.gap_cm, r1, r2), omega, pv.p);
    (pol == Polarization::te ? out.te : out.tm) = pv.p * pv.p * g;
  }
  return out;
}

}  // namespace

void CavitySpec::validate() const {
  if (!(gap_cm > 0.0) || !std::isfinite(gap_cm)) throw DomainError("gap L must be positive");
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    throw DomainError("temperature must be >= 0");
  }
}

complex CAlpha::resolvent() const {
  if (infinite()) return {0.0, 0.0};
  const complex re = r_product * phase;
  return re / (1.0 - re);
}

CAlpha c_alpha(const PValue& p, double omega, double gap_cm, complex r1, complex r2) {
  const double x = omega * gap_cm / c;
  return {r1 * r2, std::exp(complex(0.0, 2.0 * x) * p.p)};
}

double ideal_casimir_force(double gap_cm) {
  if (!(gap_cm > 0.0)) throw DomainError("gap L must be positive");
  const double l2 = gap_cm * gap_cm;
  return pi * pi * hbar * c / (240.0 * l2 * l2);
}

SectorValues casimir_spectral_density(AngularFrequency omega, const CavitySpec& cavity,
                                      ModelTag tag, const QuadratureConfig& cfg, double* error) {
  cavity.validate();
  if (!(omega.rad_s > 0.0)) throw DomainError("omega must be positive");
  const double w = omega.rad_s;
  const double x = w * cavity.gap_cm / c;
  auto integrand = [&](const PValue& pv) { return resolvents(pv, w, cavity, tag); };
  ContourHints hints;
  const double spacing = pi / x;
  if (1.0 / spacing <= 20000.0) {
    for (double p = spacing; p < 1.0; p += spacing) hints.propagating.push_back(p);
  }
  hints.evanescent.push_back(1.0 / (2.0 * x));
  const auto r = integrate_p_contour(integrand, w, cavity.gap_cm, inner_config(cfg), hints);
  const double pref = thermal_factor(w, cavity.temperature) * hbar * w * w * w /
                      (2.0 * pi * pi * c * c * c);
  if (error) *error = std::abs(pref) * r.error();
  SectorValues s;
  s.te_pw = pref * r.propagating.te.real();
  s.tm_pw = pref * r.propagating.tm.real();
  s.te_ew = pref * r.evanescent.te.real();
  s.tm_ew = pref * r.evanescent.tm.real();
  return s;
}

PolarizationValues casimir_spectral_density_deformed(AngularFrequency omega,
                                                     const CavitySpec& cavity, ModelTag tag,
                                                     const QuadratureConfig& cfg, double* error) {
  cavity.validate();
  if (!(omega.rad_s > 0.0)) throw DomainError("omega must be positive");
  const double w = omega.rad_s;
  const QuadratureConfig inner = inner_config(cfg);
  const double t_max = evanescent_cutoff(w, cavity.gap_cm, inner.rel_tol);
  // The p-measure carries dp = i dt; the point p = 1 + i t is labelled
  // propagating only so the reflection routines accept it.
  auto integrand = [&](double t) {
    const PValue pv{complex(1.0, t), Sector::propagating};
    return resolvents(pv, w, cavity, tag) * complex(0.0, 1.0);
  };
  const auto r = integrate_adaptive(integrand, 0.0, t_max, inner, evanescent_decades(t_max));
  const double pref = thermal_factor(w, cavity.temperature) * hbar * w * w * w /
                      (2.0 * pi * pi * c * c * c);
  if (error) *error = std::abs(pref) * r.error;
  // The deformed path starts at p = 1, the start of the original contour, and
  // runs to i infinity, its end; it carries the same orientation.
  return {pref * r.value.te.real(), pref * r.value.tm.real()};
}

PolarizationValues matsubara_summand(double xi, const CavitySpec& cavity, ModelTag tag,
                                     const QuadratureConfig& cfg, double* error) {
  const double gap = cavity.gap_cm;
  const double y0 = 2.0 * xi * gap / c;  // y = 2 q L
  const double window = decay_window(cfg.rel_tol);
  auto integrand = [&](double y) {
    const double q = y / (2.0 * gap);
    const double decay = std::exp(-y);
    PolarizationValues v;
    for (Polarization pol : kPolarizations) {
      double r_product;
      if (xi == 0.0) {
        r_product = static_reflection(cavity.mirror1, tag, q, pol) *
                    static_reflection(cavity.mirror2, tag, q, pol);
      } else {
        const double p_tilde = c * q / xi;
        const ImaginaryFrequency f{xi};
        r_product = reflection(cavity.mirror1, tag, f, p_tilde, pol) *
                    reflection(cavity.mirror2, tag, f, p_tilde, pol);
      }
      const double re = r_product * decay;
      (pol == Polarization::te ? v.te : v.tm) = y * y * re / (1.0 - re);
    }
    return v;
  };
  const double breaks[] = {y0 + 0.5, y0 + 2.0, y0 + 5.0, y0 + 10.0};
  const auto r = integrate_adaptive(integrand, y0, y0 + window, cfg, breaks);
  const double jac = 1.0 / (8.0 * gap * gap * gap);  // q^2 dq = y^2 dy / 8L^3
  if (error) *error = r.error * jac;
  return r.value * jac;
}

ForceDecomposition casimir_force(const CavitySpec& cavity, ModelTag tag,
                                 const QuadratureConfig& cfg, const MatsubaraConfig& mcfg) {
  cavity.validate();
  cfg.validate();
  mcfg.validate();
  ForceDecomposition out;
  out.model = tag;
  out.static_limit = static_limit_description(cavity.mirror1, tag);
  if (!(cavity.mirror1.variant().index() == cavity.mirror2.variant().index())) {
    out.static_limit += " | mirror2: " + static_limit_description(cavity.mirror2, tag);
  }
  const QuadratureConfig inner = inner_config(cfg);

  if (cavity.temperature == 0.0) {
    // F = (hbar / 2 pi^2) \int_0^inf d xi S(xi), with eta = 2 xi L / c.
    const double scale = c / (2.0 * cavity.gap_cm);
    auto integrand = [&](double eta) {
      return matsubara_summand(eta * scale, cavity, tag, inner);
    };
    std::vector<double> breaks = evanescent_decades(1.0);
    for (double b : {1.0, 3.0, 10.0}) breaks.push_back(b);
    try {
      const auto r =
          integrate_adaptive(integrand, 0.0, decay_window(cfg.rel_tol), cfg, breaks);
      const double pref = hbar / (2.0 * pi * pi) * scale;
      out.parts = r.value * pref;
      out.error = (r.error + inner.rel_tol * magnitude(r.value)) * pref;
    } catch (const ConvergenceError& e) {
      throw ConvergenceError(e.what(), "T=0 imaginary-frequency integral; " + e.context());
    }
    return out;
  }

  std::vector<double> term_errors;
  auto term = [&](long n, double xi) {
    double err = 0.0;
    try {
      const auto v = matsubara_summand(xi, cavity, tag, inner, &err);
      term_errors.push_back(err);
      return v;
    } catch (const ConvergenceError& e) {
      throw ConvergenceError(e.what(), "Matsubara term n=" + std::to_string(n) + "; " + e.context());
    }
  };
  const auto r = matsubara_sum(term, cavity.temperature, mcfg);
  const double pref = constants::k_boltzmann * cavity.temperature / pi;
  out.parts = r.value * pref;
  double err_sum = r.tail_estimate;
  for (double e : term_errors) err_sum += e;
  out.error = err_sum * pref;
  out.matsubara_terms = r.terms;
  return out;
}

double thermal_te_correction(const CavitySpec& cavity, ModelTag tag, const QuadratureConfig& cfg,
                             const MatsubaraConfig& mcfg) {
  if (!(cavity.temperature > 0.0)) throw DomainError("thermal correction needs T > 0");
  CavitySpec cold = cavity;
  cold.temperature = 0.0;
  return casimir_force(cavity, tag, cfg, mcfg).parts.te - casimir_force(cold, tag, cfg, mcfg).parts.te;
}

}  // namespace surfimp
