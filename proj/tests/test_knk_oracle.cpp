#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "loewner/errors.hpp"
#include "loewner/knk_oracle.hpp"
#include "test_support.hpp"

using namespace loewner;
using loewner::testing::Cplx;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent evaluation of the right arm in long double.
std::complex<long double> curve_ld(long double theta) {
  const long double r = std::sqrt(2.0L * theta / std::sin(2.0L * theta));
  return {r * std::cos(theta), r * std::sin(theta)};
}

// Brute-force distance to both arms: uniform theta grid of `samples` points
// per arm on (0, theta_max], theta_max chosen so the radius exceeds |z| + 2.
double brute_distance(Cplx z, int samples) {
  const long double need = std::abs(z) + 2.0L;
  long double lo = 0.0L;
  long double hi = kPi / 2;
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (std::abs(curve_ld(mid)) < need ? lo : hi) = mid;
  }
  const std::complex<long double> zr{z.real(), z.imag()};
  const std::complex<long double> zl{-z.real(), z.imag()};
  long double best = std::min(std::abs(zr - 1.0L), std::abs(zl - 1.0L));  // the feet
  for (int i = 1; i <= samples; ++i) {
    const auto w = curve_ld(hi * i / samples);
    best = std::min({best, std::abs(zr - w), std::abs(zl - w)});
  }
  return static_cast<double>(best);
}

HullTrace curve_sample_trace(int per_side) {
  HullTrace trace;
  trace.config = make_knk_config(10.0, 2 * per_side, PlanMode::controlled);
  for (int i = 1; i <= per_side; ++i) {
    const double theta = 1.5 * i / per_side;
    trace.points.push_back({knk_point({theta, Side::left}), 1, 2 * i - 1});
    trace.points.push_back({knk_point({theta, Side::right}), 2, 2 * i});
  }
  return trace;
}

}  // namespace

TEST_CASE("knk_point") {
  SUBCASE("theta = pi/4 on the right arm") {
    const double half_root_pi = std::sqrt(kPi) / 2.0;
    const HalfPlanePoint p = knk_point({kPi / 4, Side::right});
    CHECK(std::abs(p.value() - Cplx(half_root_pi, half_root_pi)) < 1e-12);
    CHECK(half_root_pi == doctest::Approx(0.8862269).epsilon(1e-7));
  }
  SUBCASE("small-angle limit reaches the feet") {
    CHECK(knk_radius(0.0) == 1.0);
    CHECK(knk_radius(1e-8) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(knk_point({1e-9, Side::right}).value() - Cplx(1.0, 0.0)) < 1e-8);
    CHECK(std::abs(knk_point({1e-9, Side::left}).value() - Cplx(-1.0, 0.0)) < 1e-8);
    // The series branch joins the direct formula smoothly.
    const double direct = std::sqrt(2.0 * 1.01e-6 / std::sin(2.0 * 1.01e-6));
    CHECK(knk_radius(0.99e-6) == doctest::Approx(direct).epsilon(1e-14));
  }
  SUBCASE("agrees with the long double evaluation") {
    for (int i = 1; i < 100; ++i) {
      const double theta = (kPi / 2) * i / 100.0;
      const auto want = curve_ld(theta);
      const Cplx got = knk_point({theta, Side::right}).value();
      CHECK(std::abs(got - Cplx(static_cast<double>(want.real()),
                                static_cast<double>(want.imag()))) <
            1e-13 * std::abs(got));
    }
  }
  SUBCASE("arms are mirror images") {
    for (double theta : {0.1, 0.7, 1.3, 1.55}) {
      CHECK(knk_point({theta, Side::left}) == knk_point({theta, Side::right}).mirrored());
    }
  }
  SUBCASE("radius is increasing") {
    double previous = knk_radius(0.0);
    for (int i = 1; i < 10000; ++i) {
      const double r = knk_radius((kPi / 2) * i / 10000.0);
      CHECK(r > previous);
      previous = r;
    }
  }
  SUBCASE("parameter range") {
    CHECK_THROWS_AS((void)knk_point({0.0, Side::right}), ThetaOutOfRange);
    CHECK_THROWS_AS((void)knk_point({kPi / 2, Side::right}), ThetaOutOfRange);
    CHECK_THROWS_AS((void)knk_point({-0.1, Side::left}), ThetaOutOfRange);
    CHECK_THROWS_AS((void)knk_radius(2.0), ThetaOutOfRange);
  }
}

TEST_CASE("distance_to_knk_curve") {
  SUBCASE("documented values") {
    CHECK(distance_to_knk_curve(HalfPlanePoint(0.0, 0.0)).distance == doctest::Approx(1.0));
    const CurveProjection two = distance_to_knk_curve(HalfPlanePoint(2.0, 0.0));
    CHECK(two.distance == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(two.side == Side::right);
    const CurveProjection on = distance_to_knk_curve(knk_point({0.7, Side::right}));
    CHECK(on.distance <= 1e-8);
    CHECK(on.theta == doctest::Approx(0.7).epsilon(1e-8));
    CHECK(on.side == Side::right);
    CHECK(distance_to_knk_curve(knk_point({1.2, Side::left})).side == Side::left);
  }
  SUBCASE("far up the imaginary axis the curve is close") {
    // Both arms approach the axis, so the distance falls as the height grows.
    const double d10 = distance_to_knk_curve(HalfPlanePoint(0.0, 10.0)).distance;
    const double d40 = distance_to_knk_curve(HalfPlanePoint(0.0, 40.0)).distance;
    CHECK(d40 < d10);
    CHECK(d40 < 0.05);
  }
  SUBCASE("mirror symmetry") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 300; ++i) {
      const Cplx z = testing::random_interior(rng, 6.0);
      const double a = distance_to_knk_curve(HalfPlanePoint(z)).distance;
      const double b = distance_to_knk_curve(HalfPlanePoint(-std::conj(z))).distance;
      CHECK(std::abs(a - b) <= 1e-9);
    }
  }
  SUBCASE("matches a dense brute-force grid") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 10; ++i) {
      const Cplx z = testing::random_interior(rng, 4.0);
      const double got = distance_to_knk_curve(HalfPlanePoint(z)).distance;
      const double want = brute_distance(z, 1000000);
      CHECK(std::abs(got - want) <= 1e-6);
      CHECK(got <= want + 1e-12);
    }
  }
}

TEST_CASE("is_knk_instance") {
  CHECK(is_knk_instance(make_knk_config(10.0, 10, PlanMode::controlled)));
  CHECK(is_knk_instance(make_knk_config(10.0, 10, PlanMode::random, 4)));
  SimulationConfig c = make_knk_config(10.0, 10, PlanMode::controlled);
  c.plan->weights = WeightVector({0.3, 0.7});
  CHECK_FALSE(is_knk_instance(c));
  c = make_knk_config(10.0, 10, PlanMode::controlled);
  c.drivers = {DriverSpec::constant(1.0), DriverSpec::constant(-1.0)};
  CHECK_FALSE(is_knk_instance(c));
  SimulationConfig lone;
  lone.N = 10;
  lone.drivers = {DriverSpec::constant(0.0)};
  CHECK_FALSE(is_knk_instance(lone));
  CHECK_THROWS_AS((void)error_report(simulate_hull(lone)), NotKnkInstance);
  CHECK_THROWS_AS((void)make_knk_config(10.0, 10, PlanMode::random), InvalidInput);
}

TEST_CASE("error_report") {
  SUBCASE("exact curve samples have no error") {
    const ErrorReport r = error_report(curve_sample_trace(40));
    CHECK(r.max_error_left <= 1e-8);
    CHECK(r.max_error_right <= 1e-8);
    CHECK(r.max_error_overall <= 1e-8);
    CHECK(side_consistency(curve_sample_trace(40)));
  }
  SUBCASE("overall is the larger side") {
    const HullTrace trace = simulate_hull(make_knk_config(10.0, 200, PlanMode::random, 12));
    const ErrorReport r = error_report(trace);
    CHECK(r.max_error_overall == std::max(r.max_error_left, r.max_error_right));
    CHECK(r.N == 200);
    CHECK(r.mode == PlanMode::random);
    CHECK(r.seed == std::uint64_t{12});
  }
  SUBCASE("a sub-trace never has a larger error") {
    const HullTrace full = simulate_hull(make_knk_config(10.0, 150, PlanMode::controlled));
    const ErrorReport all = error_report(full);
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
      HullTrace sub = full;
      std::shuffle(sub.points.begin(), sub.points.end(), rng);
      sub.points.resize(1 + rng() % full.points.size());
      const ErrorReport part = error_report(sub);
      CHECK(part.max_error_left <= all.max_error_left);
      CHECK(part.max_error_right <= all.max_error_right);
      CHECK(part.max_error_overall <= all.max_error_overall);
    }
  }
  SUBCASE("controlled error shrinks as N grows") {
    const double e10 = error_report(simulate_hull(make_knk_config(1.0, 10, PlanMode::controlled)))
                           .max_error_overall;
    const double e100 =
        error_report(simulate_hull(make_knk_config(1.0, 100, PlanMode::controlled)))
            .max_error_overall;
    const double e1000 =
        error_report(simulate_hull(make_knk_config(1.0, 1000, PlanMode::controlled)))
            .max_error_overall;
    CHECK(e1000 < e100);
    CHECK(e100 < e10);
    const double t10_100 =
        error_report(simulate_hull(make_knk_config(10.0, 100, PlanMode::controlled)))
            .max_error_overall;
    const double t10_1000 =
        error_report(simulate_hull(make_knk_config(10.0, 1000, PlanMode::controlled)))
            .max_error_overall;
    CHECK(t10_1000 < t10_100);
  }
  SUBCASE("sides of a run ending with the +1 map") {
    // Off the real axis the right-hand points carry more error at every
    // birth step. The left maximum is the once-mapped real sample next to -1.
    const int n = 400;
    const HullTrace trace = simulate_hull(make_knk_config(10.0, n, PlanMode::controlled));
    const ErrorReport r = error_report(trace);
    double left_interior = 0.0;
    double right_interior = 0.0;
    double boundary = 0.0;
    for (const TracePoint& p : trace.points) {
      const double d = distance_to_knk_curve(p.point).distance;
      if (p.birth_step == n - 1) boundary = d;
      if (p.point.im() == 0.0) continue;
      (p.source == 1 ? left_interior : right_interior) =
          std::max(p.source == 1 ? left_interior : right_interior, d);
    }
    CHECK(right_interior > left_interior);
    CHECK(r.max_error_right == right_interior);
    CHECK(r.max_error_left == boundary);
    CHECK(trace.points[static_cast<std::size_t>(n - 1)].source == 1);
    CHECK(trace.points[static_cast<std::size_t>(n - 1)].point.im() == 0.0);
  }
}

TEST_CASE("side_consistency and separation") {
  SUBCASE("controlled runs keep their sides") {
    for (int n : {20, 30, 50, 100, 300}) {
      CHECK(side_consistency(simulate_hull(make_knk_config(10.0, n, PlanMode::controlled))));
    }
    for (int n : {40, 100, 300}) {
      const HullTrace trace = simulate_hull(make_knk_config(10.0, n, PlanMode::controlled));
      CHECK(side_separation(trace) > 2.0 * error_report(trace).max_error_overall);
    }
    CHECK(side_consistency(simulate_hull(make_knk_config(1.0, 10, PlanMode::controlled))));
  }
  SUBCASE("one flipped point breaks consistency") {
    HullTrace trace = simulate_hull(make_knk_config(10.0, 50, PlanMode::controlled));
    trace.points[17].point = trace.points[17].point.mirrored();
    CHECK_FALSE(side_consistency(trace));
  }
  SUBCASE("points on the imaginary axis are inconsistent") {
    HullTrace trace = curve_sample_trace(5);
    trace.points[3].point = HalfPlanePoint(0.0, trace.points[3].point.im());
    CHECK_FALSE(side_consistency(trace));
  }
  SUBCASE("a unit step at T = 10, N = 10 collapses the run onto +1") {
    // dt = 1 places -1 exactly at the end of the +1 map's slit interval, so
    // every point is sent to the slit base and the hull degenerates.
    const HullTrace trace = simulate_hull(make_knk_config(10.0, 10, PlanMode::controlled));
    for (const TracePoint& p : trace.points) CHECK(p.point == HalfPlanePoint(1.0, 0.0));
    CHECK_FALSE(side_consistency(trace));
    CHECK(side_separation(trace) == 0.0);
  }
  SUBCASE("coarse T = 10 runs are thicker than their side gap") {
    // The once-mapped sample next to -1 sits about dt from the left foot,
    // so twice the error outgrows the gap between the sides for N <= 30.
    for (int n : {20, 30}) {
      const HullTrace trace = simulate_hull(make_knk_config(10.0, n, PlanMode::controlled));
      CHECK(side_separation(trace) < 2.0 * error_report(trace).max_error_overall);
    }
  }
}

TEST_CASE("error_sweep") {
  SUBCASE("controlled sweep is deterministic and sorted by N") {
    const std::vector<int> Ns{40, 10, 20};
    const auto first = error_sweep(Ns, PlanMode::controlled, 10.0);
    const auto second = error_sweep(Ns, PlanMode::controlled, 10.0);
    REQUIRE(first.size() == 3);
    CHECK(first == second);
    CHECK(first[0].N == 10);
    CHECK(first[2].N == 40);
    CHECK_FALSE(first[1].seed.has_value());
  }
  SUBCASE("random sweep covers every (N, seed) pair") {
    const std::vector<int> Ns{60, 30};
    const std::vector<std::uint64_t> seeds{9, 2, 5};
    const auto reports = error_sweep(Ns, PlanMode::random, 10.0, seeds);
    REQUIRE(reports.size() == 6);
    CHECK(reports[0].N == 30);
    CHECK(reports[0].seed == std::uint64_t{2});
    CHECK(reports[5].N == 60);
    CHECK(reports[5].seed == std::uint64_t{9});
    const auto direct =
        error_report(simulate_hull(make_knk_config(10.0, 60, PlanMode::random, 5)));
    CHECK(reports[4] == direct);
  }
  SUBCASE("argument validation") {
    const std::vector<int> none;
    const std::vector<int> ten{10};
    const std::vector<std::uint64_t> seeds{1};
    CHECK_THROWS_AS((void)error_sweep(none, PlanMode::controlled, 10.0), InvalidInput);
    CHECK_THROWS_AS((void)error_sweep(ten, PlanMode::random, 10.0), InvalidInput);
    CHECK_THROWS_AS((void)error_sweep(ten, PlanMode::controlled, 10.0, seeds), InvalidInput);
  }
  SUBCASE("reference list") {
    CHECK(std::size(kReferenceSweepNs) == 15);
    CHECK(kReferenceSweepNs[0] == 1000);
    CHECK(kReferenceSweepNs[14] == 10);
  }
}
