#pragma once

#include <cmath>
#include <complex>

#include "surfimp/materials.hpp"

namespace surfimp {

/// A real quantity split over {TE, TM} x {propagating, evanescent}.
struct SectorValues {
  double te_pw = 0.0;
  double te_ew = 0.0;
  double tm_pw = 0.0;
  double tm_ew = 0.0;

  double total() const { return te_pw + te_ew + tm_pw + tm_ew; }
  double te() const { return te_pw + te_ew; }
  double tm() const { return tm_pw + tm_ew; }
  double propagating() const { return te_pw + tm_pw; }
  double evanescent() const { return te_ew + tm_ew; }

  double& at(Polarization pol, Sector sector) {
    if (pol == Polarization::te) return sector == Sector::propagating ? te_pw : te_ew;
    return sector == Sector::propagating ? tm_pw : tm_ew;
  }
  double at(Polarization pol, Sector sector) const {
    return const_cast<SectorValues&>(*this).at(pol, sector);
  }

  SectorValues& operator+=(const SectorValues& o) {
    te_pw += o.te_pw;
    te_ew += o.te_ew;
    tm_pw += o.tm_pw;
    tm_ew += o.tm_ew;
    return *this;
  }
  SectorValues& operator*=(double s) {
    te_pw *= s;
    te_ew *= s;
    tm_pw *= s;
    tm_ew *= s;
    return *this;
  }
  friend SectorValues operator+(SectorValues a, const SectorValues& b) { return a += b; }
  friend SectorValues operator-(SectorValues a, const SectorValues& b) { return a += b * -1.0; }
  friend SectorValues operator*(SectorValues a, double s) { return a *= s; }
  friend SectorValues operator*(double s, SectorValues a) { return a *= s; }
};

inline double magnitude(const SectorValues& v) {
  return std::abs(v.te_pw) + std::abs(v.te_ew) + std::abs(v.tm_pw) + std::abs(v.tm_ew);
}

/// Complex integrand values for both polarizations at one contour point.
struct PolarizationPair {
  complex te{};
  complex tm{};

  PolarizationPair& operator+=(const PolarizationPair& o) {
    te += o.te;
    tm += o.tm;
    return *this;
  }
  friend PolarizationPair operator+(PolarizationPair a, const PolarizationPair& b) { return a += b; }
  friend PolarizationPair operator-(PolarizationPair a, const PolarizationPair& b) {
    return {a.te - b.te, a.tm - b.tm};
  }
  friend PolarizationPair operator*(PolarizationPair a, complex s) { return {a.te * s, a.tm * s}; }
  friend PolarizationPair operator*(complex s, PolarizationPair a) { return a * s; }
  friend PolarizationPair operator*(PolarizationPair a, double s) { return {a.te * s, a.tm * s}; }
  friend PolarizationPair operator*(double s, PolarizationPair a) { return a * s; }
};

inline double magnitude(const PolarizationPair& v) { return std::abs(v.te) + std::abs(v.tm); }

/// Real counterpart of PolarizationPair, used on the imaginary frequency axis.
struct PolarizationValues {
  double te = 0.0;
  double tm = 0.0;

  double total() const { return te + tm; }
  PolarizationValues& operator+=(const PolarizationValues& o) {
    te += o.te;
    tm += o.tm;
    return *this;
  }
  friend PolarizationValues operator+(PolarizationValues a, const PolarizationValues& b) {
    return a += b;
  }
  friend PolarizationValues operator-(PolarizationValues a, const PolarizationValues& b) {
    return {a.te - b.te, a.tm - b.tm};
  }
  friend PolarizationValues operator*(PolarizationValues a, double s) { return {a.te * s, a.tm * s}; }
  friend PolarizationValues operator*(double s, PolarizationValues a) { return a * s; }
};

inline double magnitude(const PolarizationValues& v) { return std::abs(v.te) + std::abs(v.tm); }

}  // namespace surfimp
