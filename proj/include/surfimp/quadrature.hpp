#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <type_traits>
#include <vector>

#include "surfimp/constants.hpp"
#include "surfimp/errors.hpp"
#include "surfimp/materials.hpp"

namespace surfimp {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const complex& v) { return std::abs(v); }

struct QuadratureConfig {
  double rel_tol = 1e-6;
  double abs_floor = 1e-30;
  /// Bisection budget per initial panel.
  int max_subdivisions = 60;

  void validate() const;
  QuadratureConfig with_rel_tol(double tol) const {
    QuadratureConfig c = *this;
    c.rel_tol = tol;
    return c;
  }
};

struct MatsubaraConfig {
  double tail_rel_tol = 1e-8;
  long max_terms = 1'000'000;

  void validate() const;
};

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  int evaluations = 0;
  int subdivisions = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15 nodes).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes 1, 3, 5, 7.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<T, 15> fx;
  fx[7] = f(center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    fx[j] = f(center - dx);
    fx[14 - j] = f(center + dx);
  }
  T kronrod = fx[7] * kKronrodWeights[7];
  T gauss = fx[7] * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    kronrod += (fx[j] + fx[14 - j]) * kKronrodWeights[j];
    if (j % 2 == 1) gauss += (fx[j] + fx[14 - j]) * kGaussWeights[j / 2];
  }
  // QUADPACK error scaling: the raw |K - G| overestimates badly for smooth f.
  const T mean = kronrod * 0.5;
  double resasc = kKronrodWeights[7] * magnitude(fx[7] - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kKronrodWeights[j] * (magnitude(fx[j] - mean) + magnitude(fx[14 - j] - mean));
  }
  resasc *= half;
  kronrod = kronrod * half;
  gauss = gauss * half;
  double err = magnitude(kronrod - gauss);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  return {a, b, kronrod, err};
}

std::string describe_interval(double a, double b);

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
///
/// Optional interior `breaks` seed the initial panels. The bisection budget
/// is `cfg.max_subdivisions` per initial panel. Converged when the summed
/// error estimate is at most max(rel_tol * |value|, abs_floor); otherwise a
/// ConvergenceError naming the worst subinterval is thrown. Endpoints are
/// never evaluated.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, const QuadratureConfig& cfg,
                        std::span<const double> breaks = {})
    -> QuadResult<std::decay_t<std::invoke_result_t<F&, double>>> {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  cfg.validate();
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integrate_adaptive requires finite a < b, got " +
                      detail::describe_interval(a, b));
  }
  std::vector<double> edges{a};
  for (double x : breaks) {
    if (x > a && x < b) edges.push_back(x);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<detail::Panel<T>> heap;
  heap.reserve(edges.size() * 4);
  QuadResult<T> result;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    heap.push_back(detail::gauss_kronrod_15<T>(f, edges[i], edges[i + 1]));
    result.evaluations += 15;
  }
  std::make_heap(heap.begin(), heap.end());
  const int budget = cfg.max_subdivisions * static_cast<int>(edges.size() - 1);

  auto exact_totals = [&heap]() {
    T value{};
    double error = 0.0;
    for (const auto& p : heap) {
      value += p.value;
      error += p.error;
    }
    return std::pair<T, double>{value, error};
  };
  T value{};
  double error = 0.0;
  std::tie(value, error) = exact_totals();

  while (true) {
    double target = std::max(cfg.rel_tol * magnitude(value), cfg.abs_floor);
    if (error <= target) {
      // Running sums drift; confirm on exact sums before accepting.
      std::tie(value, error) = exact_totals();
      target = std::max(cfg.rel_tol * magnitude(value), cfg.abs_floor);
      if (error <= target) {
        result.value = value;
        result.error = error;
        return result;
      }
    }
    std::pop_heap(heap.begin(), heap.end());
    detail::Panel<T> worst = heap.back();
    const double mid = 0.5 * (worst.a + worst.b);
    const bool splittable = mid > worst.a && mid < worst.b &&
                            (worst.b - worst.a) > 64.0 * std::numeric_limits<double>::epsilon() *
                                                      std::max(std::abs(worst.a), std::abs(worst.b));
    if (result.subdivisions >= budget || !splittable) {
      std::ostringstream msg;
      msg << (splittable ? "subdivision budget exhausted" : "subinterval below resolution")
          << ": error " << error << " > target " << target;
      throw ConvergenceError(msg.str(), "worst subinterval " +
                                            detail::describe_interval(worst.a, worst.b));
    }
    heap.pop_back();
    auto left = detail::gauss_kronrod_15<T>(f, worst.a, mid);
    auto right = detail::gauss_kronrod_15<T>(f, mid, worst.b);
    value = value - worst.value + left.value + right.value;
    error = std::max(0.0, error - worst.error + left.error + right.error);
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
    result.evaluations += 30;
    ++result.subdivisions;
  }
}

// ---------------------------------------------------------------------------
// p-contour

/// Extra breakpoints for the two legs, in p (propagating, 0 < p < 1) and in
/// s = Im p (evanescent).
struct ContourHints {
  std::vector<double> propagating;
  std::vector<double> evanescent;
};

template <class T>
struct ContourResult {
  T propagating{};  // integral along real p from 1 to 0
  T evanescent{};   // integral along p = i s, s from 0 to s_max
  double error_propagating = 0.0;
  double error_evanescent = 0.0;
  double s_max = 0.0;

  T total() const { return propagating + evanescent; }
  double error() const { return error_propagating + error_evanescent; }
};

/// Truncation of the evanescent leg: the e^{-2 s omega L / c} envelope is below
/// rel_tol at s_max/2.
double evanescent_cutoff(double omega, double gap_cm, double rel_tol);

/// Breakpoints on the evanescent leg: decades from 1e-6 up to s_max.
std::vector<double> evanescent_decades(double s_max);

/// Integral of g(p) dp along real p from 1 to 0, then from 0 along the
/// imaginary axis to i s_max. g receives a PValue tagged with its leg.
template <class G>
auto integrate_p_contour(G&& g, double omega, double gap_cm, const QuadratureConfig& cfg,
                         const ContourHints& hints = {})
    -> ContourResult<std::decay_t<std::invoke_result_t<G&, const PValue&>>> {
  using T = std::decay_t<std::invoke_result_t<G&, const PValue&>>;
  ContourResult<T> out;
  out.s_max = evanescent_cutoff(omega, gap_cm, cfg.rel_tol);
  try {
    auto on_real = [&g](double p) { return g(PValue::propagating(p)); };
    auto r = integrate_adaptive(on_real, 0.0, 1.0, cfg, hints.propagating);
    out.propagating = r.value * -1.0;  // traversed from 1 to 0
    out.error_propagating = r.error;
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(e.what(), "propagating leg, omega=" + std::to_string(omega));
  }
  try {
    std::vector<double> breaks = evanescent_decades(out.s_max);
    breaks.insert(breaks.end(), hints.evanescent.begin(), hints.evanescent.end());
    auto on_imag = [&g](double s) { return g(PValue::evanescent(s)); };
    auto r = integrate_adaptive(on_imag, 0.0, out.s_max, cfg, breaks);
    out.evanescent = r.value * complex(0.0, 1.0);  // dp = i ds
    out.error_evanescent = r.error;
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(e.what(), "evanescent leg, omega=" + std::to_string(omega));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Frequency integration

inline constexpr double kOmegaMin = 1e8;  // rad/s

/// Upper cutoff 60 k T_max / hbar of the thermal frequency integral.
double frequency_cutoff(double t_max);

/// Half-decade panel edges from kOmegaMin to `omega_max`.
std::vector<double> half_decade_edges(double omega_max);

/// Integral of h over [1e8 rad/s, 60 k T_max / hbar] on half-decade panels
/// under one global error budget. h must be thermally weighted; the
/// neglected tail is bounded by h(omega_max) k T_max / hbar and must stay
/// below rel_tol * |result|.
template <class H>
auto integrate_frequency(H&& h, double t_max, const QuadratureConfig& cfg)
    -> QuadResult<std::decay_t<std::invoke_result_t<H&, double>>> {
  if (!(t_max > 0.0)) throw DomainError("integrate_frequency needs T_max > 0");
  const double omega_max = frequency_cutoff(t_max);
  const std::vector<double> edges = half_decade_edges(omega_max);
  auto result = [&] {
    try {
      return integrate_adaptive(h, kOmegaMin, omega_max, cfg,
                                std::span<const double>(edges).subspan(1, edges.size() - 2));
    } catch (const ConvergenceError& e) {
      throw ConvergenceError(e.what(), "frequency panels up to omega_max=" +
                                           std::to_string(omega_max) + "; " + e.context());
    }
  }();
  const double tail = 2.0 * magnitude(h(omega_max)) * constants::k_boltzmann * t_max /
                      constants::hbar;
  if (tail > std::max(cfg.rel_tol * magnitude(result.value), cfg.abs_floor)) {
    throw ConvergenceError("thermal tail beyond omega_max not negligible",
                           "tail bound " + std::to_string(tail));
  }
  result.error += tail;
  return result;
}

// ---------------------------------------------------------------------------
// Matsubara summation

template <class T>
struct MatsubaraResult {
  T value{};
  long terms = 0;
  double tail_estimate = 0.0;
};

/// Matsubara frequency xi_n = 2 pi n k T / hbar.
double matsubara_frequency(long n, double temperature);

/// term(0)/2 + sum_{n>=1} term(n), term called as term(n, xi_n). Stops when a
/// geometric extrapolation from the last three terms puts the remaining tail
/// below tail_rel_tol * |partial sum|.
template <class Term>
auto matsubara_sum(Term&& term, double temperature, const MatsubaraConfig& cfg)
    -> MatsubaraResult<std::decay_t<std::invoke_result_t<Term&, long, double>>> {
  using T = std::decay_t<std::invoke_result_t<Term&, long, double>>;
  cfg.validate();
  if (!(temperature > 0.0)) throw DomainError("matsubara_sum needs T > 0");
  MatsubaraResult<T> out;
  out.value = term(0L, 0.0) * 0.5;
  std::array<double, 3> last{magnitude(out.value) * 2.0, 0.0, 0.0};
  for (long n = 1; n <= cfg.max_terms; ++n) {
    const T t = term(n, matsubara_frequency(n, temperature));
    out.value += t;
    out.terms = n + 1;
    last = {last[1], last[2], magnitude(t)};
    if (n < 3) continue;
    const double partial = magnitude(out.value);
    if (last[0] == 0.0 && last[1] == 0.0 && last[2] == 0.0) {
      out.tail_estimate = 0.0;
      return out;
    }
    const double ratio = std::max(last[1] > 0.0 ? last[2] / last[1] : 0.0,
                                  last[0] > 0.0 ? last[1] / last[0] : 1.0);
    if (ratio < 1.0) {
      out.tail_estimate = last[2] * ratio / (1.0 - ratio);
      if (out.tail_estimate <= cfg.tail_rel_tol * partial) return out;
    }
  }
  throw ConvergenceError("Matsubara series did not converge",
                         "max_terms=" + std::to_string(cfg.max_terms));
}

}  // namespace surfimp
