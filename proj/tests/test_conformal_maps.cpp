#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "loewner/conformal_maps.hpp"
#include "loewner/errors.hpp"
#include "test_support.hpp"

using namespace loewner;
using loewner::testing::Cplx;
using loewner::testing::random_interior;
using loewner::testing::relative_error;

namespace {

Cplx up(Cplx z, double c, double dt) { return slit_map_up(HalfPlanePoint(z), {c, dt}).value(); }
Cplx down(Cplx z, double c, double dt) {
  return slit_map_down(HalfPlanePoint(z), {c, dt}).value();
}

}  // namespace

TEST_CASE("half-plane points reject the lower half-plane and non-finite values") {
  CHECK_THROWS_AS(HalfPlanePoint(0.0, -1e-300), InvalidInput);
  CHECK_THROWS_AS(HalfPlanePoint(std::nan(""), 1.0), InvalidInput);
  CHECK_THROWS_AS(HalfPlanePoint(1.0, INFINITY), InvalidInput);
  CHECK(std::signbit(HalfPlanePoint(1.0, -0.0).im()) == false);
  CHECK(HalfPlanePoint(2.0, 3.0).mirrored() == HalfPlanePoint(-2.0, 3.0));
}

TEST_CASE("sqrt_upper lands in the closed upper half-plane") {
  CHECK(sqrt_upper({-4.0, 0.0}) == Cplx(0.0, 2.0));
  CHECK(sqrt_upper({4.0, 0.0}) == Cplx(2.0, 0.0));
  CHECK(sqrt_upper({0.0, 0.0}) == Cplx(0.0, 0.0));
  const Cplx s = sqrt_upper({3.0, -4.0});  // principal root is 2 - i
  CHECK(s.real() == doctest::Approx(-2.0));
  CHECK(s.imag() == doctest::Approx(1.0));
}

TEST_CASE("slit_map_up: documented values") {
  SUBCASE("driver point goes to the slit tip") {
    CHECK(up({0.0, 0.0}, 0.0, 1.0) == Cplx(0.0, 2.0));
    const Cplx tip = up({1.5, 0.0}, 1.5, 0.25);
    CHECK(tip.real() == 1.5);
    CHECK(tip.imag() == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("zero duration is the identity") {
    for (Cplx z : {Cplx(0.3, 0.0), Cplx(-2.0, 5.0), Cplx(7.0, 1e-9)}) {
      CHECK(up(z, 4.0, 0.0) == z);
      CHECK(down(z, 4.0, 0.0) == z);
    }
  }
  SUBCASE("agrees with direct integration of the upward equation") {
    // Oracle: RK4 on df/dt = -2/(f - xi), xi = 0, from t = 0 to 1.
    const Cplx real_start = testing::integrate_upward_ode({3.0, 0.0}, 0.0, 1.0, 20000);
    const Cplx imag_start = testing::integrate_upward_ode({0.0, 1.0}, 0.0, 1.0, 20000);
    CHECK(std::abs(real_start - std::sqrt(5.0)) < 1e-8);
    CHECK(std::abs(imag_start - Cplx(0.0, std::sqrt(5.0))) < 1e-8);

    CHECK(std::abs(up({3.0, 0.0}, 0.0, 1.0) - real_start) < 1e-8);
    CHECK(std::abs(up({0.0, 1.0}, 0.0, 1.0) - imag_start) < 1e-8);
    CHECK(up({3.0, 0.0}, 0.0, 1.0).real() == doctest::Approx(2.2360680).epsilon(1e-8));
  }
  SUBCASE("interior points off the axis agree with the ODE too") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
      const Cplx z = random_interior(rng, 5.0) + Cplx(0.0, 0.5);
      const Cplx ode = testing::integrate_upward_ode(z, 0.7, 0.8, 4000);
      CHECK(std::abs(up(z, 0.7, 0.8) - ode) < 1e-8);
    }
  }
}

TEST_CASE("slit_map_up: real-axis boundary extension") {
  // Outside the preimage interval the point stays real, on its own side.
  CHECK(up({3.0, 0.0}, 0.0, 1.0) == Cplx(std::sqrt(5.0), 0.0));
  CHECK(up({-3.0, 0.0}, 0.0, 1.0) == Cplx(-std::sqrt(5.0), 0.0));
  // Inside it the point lands on the slit.
  const Cplx on_slit = up({1.0, 0.0}, 0.0, 1.0);
  CHECK(on_slit.real() == 0.0);
  CHECK(on_slit.imag() == doctest::Approx(std::sqrt(3.0)));
  // The interval endpoints map to the base of the slit.
  CHECK(up({2.0, 0.0}, 0.0, 1.0) == Cplx(0.0, 0.0));
}

TEST_CASE("slit_map_down: documented values and errors") {
  CHECK(down({0.0, 2.0}, 0.0, 1.0) == Cplx(0.0, 0.0));
  CHECK(down({std::sqrt(5.0), 0.0}, 0.0, 1.0).real() == doctest::Approx(3.0));
  CHECK(down({-std::sqrt(5.0), 0.0}, 0.0, 1.0).real() == doctest::Approx(-3.0));
  CHECK_THROWS_AS(down({0.0, 1.0}, 0.0, 1.0), SwallowedPoint);
  CHECK_THROWS_AS(down({0.0, 0.0}, 0.0, 1.0), SwallowedPoint);
  CHECK_NOTHROW(down({0.0, 2.5}, 0.0, 1.0));
  CHECK_THROWS_AS((void)slit_map_down(HalfPlanePoint(0.0, 1.0), {std::nan(""), 1.0}), InvalidInput);
  CHECK_THROWS_AS((void)slit_map_up(HalfPlanePoint(0.0, 1.0), {0.0, -1.0}), InvalidInput);
}

TEST_CASE("inverse pair: down(up(z)) = z on random inputs") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> cdist(-10.0, 10.0);
  std::uniform_real_distribution<double> tdist(0.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const Cplx z = random_interior(rng, 100.0);
    const double c = cdist(rng);
    const double dt = tdist(rng);
    CHECK(std::abs(down(up(z, c, dt), c, dt) - z) < 1e-10 * std::max(1.0, std::abs(z)));
  }
}

TEST_CASE("branch correctness on 1e5 random interior points") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> cdist(-5.0, 5.0);
  std::uniform_real_distribution<double> tdist(1e-6, 5.0);
  int bad_up = 0;
  int bad_down = 0;
  for (int i = 0; i < 100000; ++i) {
    const Cplx z = random_interior(rng, 50.0);
    const double c = cdist(rng);
    const double dt = tdist(rng);
    if (!(up(z, c, dt).imag() > 0.0)) ++bad_up;
    if (!(down(z, c, dt).imag() >= 0.0)) ++bad_down;
  }
  CHECK(bad_up == 0);
  CHECK(bad_down == 0);
}

TEST_CASE("compose_up: semigroup, empty composition, telescoping") {
  SUBCASE("two steps with one driver equal one long step") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> tdist(0.0, 3.0);
    for (int i = 0; i < 200; ++i) {
      const Cplx z = random_interior(rng, 20.0);
      const double c = tdist(rng) - 1.5;
      const double t1 = tdist(rng);
      const double t2 = tdist(rng);
      const std::vector<SlitStep> two{{c, t1}, {c, t2}};
      const Cplx composed = compose_up(HalfPlanePoint(z), two).value();
      CHECK(relative_error(composed, up(z, c, t1 + t2)) < 1e-10);
    }
  }
  SUBCASE("empty composition is the identity") {
    const HalfPlanePoint z(1.25, 0.5);
    CHECK(compose_up(z, {}) == z);
    CHECK(compose_down(z, {}) == z);
  }
  SUBCASE("N equal steps with c = 0 reach 2i sqrt(T)") {
    const std::vector<SlitStep> steps(1000, SlitStep{0.0, 10.0 / 1000});
    const Cplx tip = compose_up(HalfPlanePoint(0.0, 0.0), steps).value();
    CHECK(std::abs(tip - Cplx(0.0, 2.0 * std::sqrt(10.0))) < 1e-10);
  }
}

TEST_CASE("scaling, translation and mirror covariance of a single step") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const Cplx z = random_interior(rng, 30.0);
    const double a = 4.0 * u(rng) - 2.0;
    const double t = 3.0 * u(rng);
    const double scale = 0.1 + 5.0 * u(rng);
    const double shift = 20.0 * u(rng) - 10.0;
    const Cplx base = up(z, a, t);
    CHECK(relative_error(up(scale * z, scale * a, scale * scale * t), scale * base) < 1e-10);
    CHECK(relative_error(up(z + shift, a + shift, t), base + shift) < 1e-10);
    CHECK(relative_error(up(-std::conj(z), -a, t), -std::conj(base)) < 1e-10);
  }
}

TEST_CASE("hcap_estimate") {
  SUBCASE("empty hull has zero capacity") { CHECK(hcap_estimate({}, 1.0) == 0.0); }

  SUBCASE("single slit of duration 1 at R = 1e4") {
    // Oracle: exact expansion R (R - sqrt(R^2 - 4)) = 4R / (R + sqrt(R^2 - 4)).
    const long double R = 1e4L;
    const auto exact = static_cast<double>(4.0L * R / (R + std::sqrt(R * R - 4.0L)));
    const std::vector<SlitStep> one{{0.0, 1.0}};
    const double est = hcap_estimate(one, 1e4);
    CHECK(std::abs(est - 2.0) < 1e-4);
    CHECK(est == doctest::Approx(exact).epsilon(1e-13));
  }

  SUBCASE("two-step composition is additive in capacity") {
    // g = g2 o g1 with g_i(z) = z + 2 t_i / z + O(z^-2), so z (g(z) - z) -> 2 (t1 + t2).
    const std::vector<SlitStep> two{{-1.0, 0.7}, {1.5, 2.1}};
    for (double R : {1e3, 1e4, 1e5}) {
      CHECK(std::abs(hcap_estimate(two, R) - 2.0 * 2.8) < 50.0 / R);
    }
  }

  SUBCASE("alternating schedule with total time 10") {
    std::vector<SlitStep> steps;
    for (int k = 0; k < 1000; ++k) steps.push_back({k % 2 == 0 ? 1.0 : -1.0, 0.01});
    CHECK(std::abs(hcap_estimate(steps, 1e4) - 20.0) < 0.02);
  }

  SUBCASE("error at least halves when the probe radius doubles") {
    const std::vector<SlitStep> one{{0.0, 1.0}};
    double previous = std::abs(hcap_estimate(one, 100.0) - 2.0);
    for (double R = 200.0; R <= 6400.0; R *= 2.0) {
      const double err = std::abs(hcap_estimate(one, R) - 2.0);
      CHECK(err <= 0.5 * previous);
      previous = err;
    }
  }

  SUBCASE("probe too close") {
    const std::vector<SlitStep> one{{0.0, 1.0}};
    CHECK(minimum_probe_radius(one) == doctest::Approx(100.0));
    CHECK_THROWS_AS((void)hcap_estimate(one, 99.0), ProbeTooClose);
    CHECK_THROWS_AS((void)hcap_estimate(one, -1.0), InvalidInput);
  }
}
