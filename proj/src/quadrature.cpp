#include "surfimp/quadrature.hpp"

#include <cmath>
#include <sstream>

namespace surfimp {

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) {
    throw UsageError("rel_tol must lie in (0, 1e-2], got " + std::to_string(rel_tol));
  }
  if (!(abs_floor >= 0.0)) throw UsageError("abs_floor must be >= 0");
  if (max_subdivisions < 10) {
    throw UsageError("max_subdivisions must be >= 10, got " + std::to_string(max_subdivisions));
  }
}

void MatsubaraConfig::validate() const {
  if (!(tail_rel_tol > 0.0)) throw UsageError("tail_rel_tol must be positive");
  if (max_terms <= 0) throw UsageError("max_terms must be positive");
}

namespace detail {

std::string describe_interval(double a, double b) {
  std::ostringstream os;
  os.precision(10);
  os << "[" << a << ", " << b << "]";
  return os.str();
}

}  // namespace detail

double evanescent_cutoff(double omega, double gap_cm, double rel_tol) {
  if (!(omega > 0.0) || !(gap_cm > 0.0)) {
    throw DomainError("evanescent cutoff needs omega > 0 and L > 0");
  }
  const double decay_scale = constants::c / (2.0 * omega * gap_cm);
  return std::max(3.0, decay_scale * std::log(1.0 / rel_tol) * 2.0);
}

std::vector<double> evanescent_decades(double s_max) {
  std::vector<double> out;
  for (double s = 1e-6; s < s_max; s *= 10.0) out.push_back(s);
  return out;
}

double frequency_cutoff(double t_max) {
  return 60.0 * constants::k_boltzmann * t_max / constants::hbar;
}

std::vector<double> half_decade_edges(double omega_max) {
  if (!(omega_max > kOmegaMin)) {
    throw DomainError("frequency cutoff " + std::to_string(omega_max) +
                      " rad/s lies below omega_min");
  }
  std::vector<double> edges;
  const double step = std::sqrt(10.0);
  for (int k = 0;; ++k) {
    const double w = kOmegaMin * std::pow(step, k);
    if (w >= omega_max * (1.0 - 1e-12)) break;
    edges.push_back(w);
  }
  edges.push_back(omega_max);
  return edges;
}

double matsubara_frequency(long n, double temperature) {
  return 2.0 * constants::pi * static_cast<double>(n) * constants::k_boltzmann * temperature /
         constants::hbar;
}

}  // namespace surfimp
