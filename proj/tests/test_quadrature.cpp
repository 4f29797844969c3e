#include <doctest.h>

#include <cmath>
#include <vector>

#include "surfimp/constants.hpp"
#include "surfimp/errors.hpp"
#include "surfimp/quadrature.hpp"

using namespace surfimp;

TEST_SUITE("quadrature") {

TEST_CASE("smooth integrals to tolerance") {
  const QuadratureConfig cfg;
  auto r = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, constants::pi, cfg);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.error <= 1e-6 * 2.0);

  r = integrate_adaptive([](double x) { return std::exp(-x * x); }, -6.0, 6.0, cfg);
  CHECK(r.value == doctest::Approx(std::sqrt(constants::pi)).epsilon(1e-10));
}

TEST_CASE("integrable endpoint singularity, endpoints never evaluated") {
  const QuadratureConfig cfg;
  auto r = integrate_adaptive([](double x) {
    REQUIRE(x > 0.0);
    return 1.0 / std::sqrt(x);
  }, 0.0, 1.0, cfg);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(std::abs(r.value - 2.0) <= 10.0 * r.error + 1e-12);
}

TEST_CASE("oscillatory integrand with breakpoints") {
  const QuadratureConfig cfg{1e-9, 0.0, 60};
  std::vector<double> breaks;
  for (int k = 1; k < 64; ++k) breaks.push_back(k / 64.0);
  auto r = integrate_adaptive([](double x) { return std::cos(400.0 * x); }, 0.0, 1.0, cfg, breaks);
  CHECK(r.value == doctest::Approx(std::sin(400.0) / 400.0).epsilon(1e-8));
  // without breakpoints one panel has to find every oscillation itself
  auto plain = integrate_adaptive([](double x) { return std::cos(400.0 * x); }, 0.0, 1.0,
                                  QuadratureConfig{1e-9, 0.0, 500});
  CHECK(plain.value == doctest::Approx(r.value).epsilon(1e-8));
}

TEST_CASE("complex integrand") {
  const QuadratureConfig cfg{1e-10, 0.0, 60};
  auto r = integrate_adaptive([](double x) { return std::exp(complex(0.0, 3.0 * x)); }, 0.0, 2.0, cfg);
  const complex exact = (std::exp(complex(0.0, 6.0)) - 1.0) / complex(0.0, 3.0);
  CHECK(std::abs(r.value - exact) < 1e-12);
}

TEST_CASE("additivity over a split interval") {
  const QuadratureConfig cfg{1e-10, 0.0, 60};
  auto f = [](double x) { return std::log1p(x) * std::cos(x); };
  const double whole = integrate_adaptive(f, 0.0, 5.0, cfg).value;
  const double parts = integrate_adaptive(f, 0.0, 1.7, cfg).value + integrate_adaptive(f, 1.7, 5.0, cfg).value;
  CHECK(whole == doctest::Approx(parts).epsilon(1e-10));
}

TEST_CASE("non-convergence raises with the worst subinterval named") {
  const QuadratureConfig cfg{1e-10, 0.0, 10};
  try {
    (void)integrate_adaptive([](double x) { return 1.0 / x; }, 0.0, 1.0, cfg);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK_FALSE(e.context().empty());
  }
}

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS((QuadratureConfig{0.0, 0.0, 60}.validate()), UsageError);
  CHECK_THROWS_AS((QuadratureConfig{0.1, 0.0, 60}.validate()), UsageError);
  CHECK_THROWS_AS((QuadratureConfig{1e-6, 0.0, 5}.validate()), UsageError);
  CHECK_THROWS_AS((MatsubaraConfig{0.0, 10}.validate()), UsageError);
  CHECK_NOTHROW(QuadratureConfig{}.validate());
}

TEST_CASE("contour of an analytic integrand equals the straight path") {
  // p^2 + e^{ip}: the 1 -> 0 -> i s_max path gives F(i s_max) - F(1).
  const QuadratureConfig cfg{1e-10, 0.0, 60};
  auto g = [](const PValue& pv) { return pv.p * pv.p + std::exp(complex(0.0, 1.0) * pv.p); };
  const auto r = integrate_p_contour(g, 1e14, 1e-4, cfg);
  const complex top(0.0, r.s_max);
  auto F = [](complex p) { return p * p * p / 3.0 + std::exp(complex(0.0, 1.0) * p) / complex(0.0, 1.0); };
  const complex exact = F(top) - F(1.0);
  CHECK(std::abs(r.total() - exact) <= 1e-9 * std::abs(exact));
  CHECK(std::abs(r.propagating - (F(0.0) - F(1.0))) < 1e-12);
}

TEST_CASE("contour legs carry their sector tags") {
  const QuadratureConfig cfg;
  auto g = [](const PValue& pv) {
    CHECK((pv.sector == Sector::propagating) == (pv.p.imag() == 0.0));
    return complex(1.0, 0.0);
  };
  const auto r = integrate_p_contour(g, 1e13, 1e-4, cfg);
  CHECK(r.propagating == complex(-1.0, 0.0));
  CHECK(std::abs(r.evanescent - complex(0.0, r.s_max)) < 1e-9 * r.s_max);
}

TEST_CASE("evanescent cutoff") {
  const double w = 1e13, L = 3e-5;
  const double s_max = evanescent_cutoff(w, L, 1e-6);
  const double x = w * L / constants::c;
  CHECK(std::exp(-2.0 * x * s_max / 2.0) <= 1e-6 * 1.0001);
  CHECK(s_max >= 3.0);
  CHECK(evanescent_cutoff(w, L, 1e-9) > s_max);
  const auto d = evanescent_decades(1e3);
  CHECK(d.front() == doctest::Approx(1e-6));
  CHECK(d.back() < 1e3);
}

TEST_CASE("frequency integral reproduces the Stefan-Boltzmann law") {
  // hbar w^3 / (4 pi^2 c^2) n(w, T) integrates to sigma T^4.
  const QuadratureConfig cfg{1e-8, 0.0, 60};
  for (double T : {77.0, 300.0, 1000.0}) {
    auto h = [T](double w) {
      const double x = constants::hbar * w / (constants::k_boltzmann * T);
      return constants::hbar * w * w * w / (4.0 * constants::pi * constants::pi * constants::c * constants::c) /
             std::expm1(x);
    };
    const auto r = integrate_frequency(h, T, cfg);
    CHECK(r.value == doctest::Approx(constants::stefan_boltzmann * T * T * T * T).epsilon(1e-7));
  }
  CHECK_THROWS_AS(integrate_frequency([](double) { return 1.0; }, 0.0, QuadratureConfig{}), DomainError);
  const auto edges = half_decade_edges(frequency_cutoff(300.0));
  CHECK(edges.front() == kOmegaMin);
  for (size_t i = 1; i < edges.size(); ++i) CHECK(edges[i] > edges[i - 1]);
}

TEST_CASE("Matsubara summation") {
  const MatsubaraConfig cfg{1e-12, 100000};
  CHECK(matsubara_frequency(3, 300.0) ==
        doctest::Approx(6.0 * constants::pi * constants::k_boltzmann * 300.0 / constants::hbar));
  // geometric terms e^{-n/2}
  auto r = matsubara_sum([](long n, double) { return std::exp(-0.5 * n); }, 300.0, cfg);
  const double q = std::exp(-0.5);
  CHECK(r.value == doctest::Approx(0.5 + q / (1.0 - q)).epsilon(1e-11));
  CHECK(r.terms > 10);
  // 1/n^4 has no geometric tail; only the cap stops it at tight tolerance
  CHECK_THROWS_AS(matsubara_sum([](long n, double) { return n == 0 ? 0.0 : 1.0 / std::pow(n, 4.0); },
                                300.0, MatsubaraConfig{1e-15, 50}),
                  ConvergenceError);
  CHECK_THROWS_AS(matsubara_sum([](long, double) { return 1.0; }, 0.0, cfg), DomainError);
}

}  // TEST_SUITE
