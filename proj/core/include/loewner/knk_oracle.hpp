#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "loewner/driving.hpp"
#include "loewner/half_plane_point.hpp"
#include "loewner/hull_sim.hpp"

namespace loewner {

// Exact two-sided hull for drivers -1, +1 with weights 1/2 each:
//   r(theta) (+-cos theta + i sin theta),  r(theta)^2 = 2 theta / sin(2 theta),
// theta in (0, pi/2). The two arms start at the feet +-1 and approach the
// imaginary axis as theta -> pi/2.

enum class Side { left, right };

struct KnkCurveParam {
  double theta = 0.0;
  Side side = Side::right;
};

/// sqrt(2 theta / sin 2 theta), with a series for theta < 1e-6. Accepts
/// theta in [0, pi/2).
[[nodiscard]] double knk_radius(double theta);

/// Throws ThetaOutOfRange unless 0 < theta < pi/2.
[[nodiscard]] HalfPlanePoint knk_point(const KnkCurveParam& p);

struct CurveProjection {
  double distance = 0.0;
  double theta = 0.0;
  Side side = Side::right;
};

/// Distance from z to the full (infinite) curve: dense 10^4-point scan in
/// theta for each arm, then golden-section refinement to 1e-10.
[[nodiscard]] CurveProjection distance_to_knk_curve(const HalfPlanePoint& z);

struct ErrorReport {
  double max_error_left = 0.0;
  double max_error_right = 0.0;
  double max_error_overall = 0.0;
  int N = 0;
  PlanMode mode = PlanMode::controlled;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const ErrorReport&, const ErrorReport&) = default;
};

/// True iff the config is the drivers (const -1, const +1) pair with an
/// equal-weight plan.
[[nodiscard]] bool is_knk_instance(const SimulationConfig& config);

/// Builds the (-1, +1) configuration for a controlled or random plan.
[[nodiscard]] SimulationConfig make_knk_config(double T, int N, PlanMode mode,
                                               std::optional<std::uint64_t> seed = {},
                                               std::optional<int> first_driver = {});

/// Max distance to the curve over source-1 (left) points, source-2 (right)
/// points, and overall. Throws NotKnkInstance for other configurations.
[[nodiscard]] ErrorReport error_report(const HullTrace& trace);

/// Every source-1 point has re < 0 and every source-2 point re > 0.
[[nodiscard]] bool side_consistency(const HullTrace& trace);

/// Smallest distance between a left (source 1) and a right (source 2) point.
[[nodiscard]] double side_separation(const HullTrace& trace);

/// simulate_hull + error_report for every N (times every seed in random
/// mode), run in parallel and returned sorted by (N, seed). Seeds must be
/// given in random mode and omitted in controlled mode.
[[nodiscard]] std::vector<ErrorReport> error_sweep(std::span<const int> Ns, PlanMode mode,
                                                   double T,
                                                   std::span<const std::uint64_t> seeds = {},
                                                   std::optional<int> first_driver = {});

/// Oscillation counts of the reference controlled sweep, largest first.
inline constexpr int kReferenceSweepNs[] = {1000, 500, 400, 300, 200, 100, 90, 80,
                                            70,   60,  50,  40,  30,  20,  10};

}  // namespace loewner
