#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "surfimp/constants.hpp"
#include "surfimp/errors.hpp"
#include "surfimp/spectra.hpp"

using namespace surfimp;
using oracle::mp_complex;
using oracle::mp_real;

namespace {

const SurfaceState kAl300{MaterialModel::drude_impedance(DrudeParams::from_ev(11.5, 0.05)), 300.0};

// (4 pi hbar w / c) coth(hbar w / 2kT) Re z / |D|^2 evaluated in 50 digits,
// with z and p rebuilt from scratch.
std::pair<double, double> mp_densities(double w, double kperp, double T) {
  const DrudeParams d = DrudeParams::from_ev(11.5, 0.05);
  const mp_complex W(w, 0);
  const mp_complex eps = mp_complex(1) - mp_complex(d.plasma_freq * d.plasma_freq) /
                                             (W * (W + mp_complex(0, d.relaxation_freq)));
  mp_complex root = sqrt(eps);
  if (root.imag() < 0) root = -root;
  const mp_complex z = mp_complex(1) / root;
  const mp_real ck_w = mp_real(constants::c) * kperp / w;
  const mp_real arg = 1 - ck_w * ck_w;
  const mp_complex p = arg >= 0 ? mp_complex(sqrt(arg), 0) : mp_complex(0, sqrt(-arg));
  const mp_real x = mp_real(constants::hbar) * w / (2 * mp_real(constants::k_boltzmann) * T);
  const mp_real coth = cosh(x) / sinh(x);
  const mp_real pre = 4 * boost::math::constants::pi<mp_real>() * mp_real(constants::hbar) * w /
                      mp_real(constants::c) * coth * z.real();
  const mp_real te = pre / norm(mp_complex(1) + z * p);
  const mp_real tm = pre / norm(z + p);
  return {static_cast<double>(te), static_cast<double>(tm)};
}

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("densities against 50-digit evaluation") {
  for (double w : {1e11, 1e13, 1e15}) {
    for (double frac : {0.0, 0.5, 0.999, 2.0, 50.0}) {
      const double k = frac * w / constants::c;
      CAPTURE(w);
      CAPTURE(frac);
      const auto [te, tm] = mp_densities(w, k, 300.0);
      CHECK(te_amplitude_density(AngularFrequency{w}, k, kAl300) == doctest::Approx(te).epsilon(1e-12));
      CHECK(tm_amplitude_density(AngularFrequency{w}, k, kAl300) == doctest::Approx(tm).epsilon(1e-12));
    }
  }
}

TEST_CASE("normal incidence: TE and TM coincide") {
  for (double w : {1e10, 1e12, 1e14, 1e16}) {
    CHECK(te_amplitude_density(AngularFrequency{w}, 0.0, kAl300) ==
          doctest::Approx(tm_amplitude_density(AngularFrequency{w}, 0.0, kAl300)).epsilon(1e-14));
  }
}

TEST_CASE("densities are positive and grow with temperature") {
  const SurfaceState cold{kAl300.model, 77.0};
  const SurfaceState hot{kAl300.model, 600.0};
  for (double w = 1e10; w < 1e16; w *= 4.3) {
    for (double frac : {0.0, 0.3, 1.0, 1.5, 10.0}) {
      const double k = frac * w / constants::c;
      const double te = te_amplitude_density(AngularFrequency{w}, k, kAl300);
      const double tm = tm_amplitude_density(AngularFrequency{w}, k, kAl300);
      CHECK(te > 0.0);
      CHECK(tm > 0.0);
      CHECK(te_amplitude_density(AngularFrequency{w}, k, cold) <= te);
      CHECK(te_amplitude_density(AngularFrequency{w}, k, hot) >= te);
      CHECK(tm_amplitude_density(AngularFrequency{w}, k, hot) >= tm);
    }
  }
}

TEST_CASE("thermal weight limits") {
  const double w = 1e11, T = 3000.0;
  const double classical = 2.0 * constants::k_boltzmann * T / (constants::hbar * w);
  CHECK(thermal_weight(AngularFrequency{w}, T) == doctest::Approx(classical).epsilon(1e-3));
  CHECK(thermal_weight(AngularFrequency{1e16}, 300.0) == doctest::Approx(1.0));
}

TEST_CASE("lossless surface has no fluctuating sources") {
  const SurfaceState reactive{MaterialModel::constant_impedance({0.0, 0.05}), 300.0};
  CHECK(te_amplitude_density(AngularFrequency{1e13}, 0.0, reactive) == 0.0);
  CHECK(tm_amplitude_density(AngularFrequency{1e13}, 1e4, reactive) == 0.0);
  const SurfaceState ideal{MaterialModel::ideal(), 300.0};
  CHECK(te_amplitude_density(AngularFrequency{1e13}, 0.0, ideal) == 0.0);
}

TEST_CASE("vanishing cross and anomalous moments") {
  CHECK(cross_density(AngularFrequency{1e13}, 0.0) == 0.0);
  CHECK(anomalous_density(AngularFrequency{1e13}, 1e3) == 0.0);
  static_assert(cross_density(AngularFrequency{1.0}, 1.0) == 0.0);
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(te_amplitude_density(AngularFrequency{1e13}, -1.0, kAl300), DomainError);
  CHECK_THROWS_AS(te_amplitude_density(AngularFrequency{-1e13}, 0.0, kAl300), DomainError);
  const SurfaceState frozen{kAl300.model, 0.0};
  CHECK_THROWS_AS(tm_amplitude_density(AngularFrequency{1e13}, 0.0, frozen), DomainError);
}

}  // TEST_SUITE
