#pragma once

#include <span>

#include "loewner/half_plane_point.hpp"

namespace loewner {

/// One constant-driver piece of a Loewner evolution: driver value `c` held
/// for `dt` units of capacity time.
struct SlitStep {
  double c = 0.0;
  double dt = 0.0;

  /// Throws InvalidInput unless c is finite and dt is finite and >= 0.
  void validate() const;

  friend constexpr bool operator==(const SlitStep&, const SlitStep&) = default;
};

/// Square root with argument in [0, pi), i.e. cut along the non-negative
/// real axis. Maps the plane minus [0, inf) onto the open upper half-plane.
[[nodiscard]] Complex sqrt_upper(Complex w) noexcept;

/// Upward slit map f(z) = c + sqrt((z - c)^2 - 4 dt). Grows the vertical slit
/// [c, c + 2i sqrt(dt)]. Real inputs follow the boundary extension: points
/// with |x - c| <= 2 sqrt(dt) land on the slit, the rest stay real.
[[nodiscard]] HalfPlanePoint slit_map_up(const HalfPlanePoint& z, const SlitStep& step);

/// Inverse of slit_map_up, g(z) = c + sqrt((z - c)^2 + 4 dt).
/// Throws SwallowedPoint for points strictly inside the slit (including its
/// base c, whose two prime ends have distinct images).
[[nodiscard]] HalfPlanePoint slit_map_down(const HalfPlanePoint& z, const SlitStep& step);

/// Applies slit_map_up for steps[0], steps[1], ... in list order.
[[nodiscard]] HalfPlanePoint compose_up(const HalfPlanePoint& z, std::span<const SlitStep> steps);

/// Applies slit_map_down for steps[0], steps[1], ... in list order. With the
/// steps listed in forward time this is the downward map g_T.
[[nodiscard]] HalfPlanePoint compose_down(const HalfPlanePoint& z, std::span<const SlitStep> steps);

/// Smallest probe radius hcap_estimate accepts:
/// 100 * max(sqrt(total dt), max |c|).
[[nodiscard]] double minimum_probe_radius(std::span<const SlitStep> steps);

/// Half-plane capacity of the hull generated by `steps` (forward time order),
/// estimated as Re[z (g(z) - z)] at z = i * probe_radius.
///
/// The displacement g(z) - z is accumulated step by step in the
/// cancellation-free form 4dt / (sqrt((u-c)^2 + 4dt) + (u-c)), so the
/// estimate stays accurate for large probe radii. Converges to 2 * sum(dt).
/// Throws ProbeTooClose below minimum_probe_radius(steps).
[[nodiscard]] double hcap_estimate(std::span<const SlitStep> steps, double probe_radius);

}  // namespace loewner
