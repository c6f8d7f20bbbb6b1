#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "loewner/conformal_maps.hpp"
#include "loewner/driving.hpp"
#include "loewner/half_plane_point.hpp"

namespace loewner {

/// Parameters of one zipper run. Without a plan the run uses drivers[0]
/// alone; with a plan the single driver oscillates between `drivers`.
struct SimulationConfig {
  double T = 10.0;
  int N = 1000;
  std::vector<DriverSpec> drivers;
  std::optional<OscillationPlan> plan;

  /// Throws InvalidInput if the config is inconsistent.
  void validate() const;

  /// Value of the (possibly oscillating) driver at sample k, time T k / N.
  [[nodiscard]] double driver_sample(int k) const;
  /// 1-based index of the driver copied at sample k.
  [[nodiscard]] int source_at(int k) const;
  /// The N constant-driver steps in forward time order: step k holds
  /// driver_sample(k) for dt = T / N.
  [[nodiscard]] std::vector<SlitStep> schedule() const;
  /// Largest |driver value| over the N + 1 samples.
  [[nodiscard]] double sup_abs_driver() const;
};

struct TracePoint {
  HalfPlanePoint point;
  int source = 1;      // 1-based driver index
  int birth_step = 0;  // zipper step at which the sample joined the hull
};

/// Simulated hull: N + 1 points ordered by birth step. The point born at
/// step b is the sample at time T (N - b) / N pushed through b upward maps.
struct HullTrace {
  std::vector<TracePoint> points;
  SimulationConfig config;
};

/// Upward zipper: start from the final-time sample, and for k = 1..N push
/// every hull point through the slit map with c = lambda(T (N-k) / N),
/// dt = T / N, then add that sample as a new real point.
[[nodiscard]] HullTrace simulate_hull(const SimulationConfig& config);

/// Classical RK4 on the downward multiple Loewner equation
///   dg/dt = sum_k 2 w_k / (g - lambda_k(t)),  g_0 = z0,
/// over [0, T] with `steps` equal steps.
///
/// Throws SwallowedPoint once min_k |g - lambda_k| drops below
/// 10 sqrt(eps) max(1, |g|) or g leaves the closed upper half-plane.
[[nodiscard]] HalfPlanePoint integrate_multi_le_down(const HalfPlanePoint& z0,
                                                     std::span<const DriverSpec> drivers,
                                                     const WeightVector& weights, double T,
                                                     int steps);

/// The weighted-ODE reference for a comparison.
struct MultiLoewnerOracle {
  std::vector<DriverSpec> drivers;
  WeightVector weights = WeightVector::equal(1);
  double T = 10.0;
  int steps = 1000;
};

/// Oracle matching `config`'s drivers and plan weights with 100 N RK4 steps.
[[nodiscard]] MultiLoewnerOracle weighted_oracle_for(const SimulationConfig& config);

using DownwardMapSource = std::variant<SimulationConfig, MultiLoewnerOracle>;

/// g_T(z) for either a zipper schedule (composition of exact downward slit
/// maps in forward time) or the RK4 oracle.
[[nodiscard]] HalfPlanePoint map_down(const DownwardMapSource& source, const HalfPlanePoint& z);

/// `count` points on the upper semicircle of radius 8 max(sqrt(T), sup_abs),
/// at angles pi (i + 1/2) / count.
[[nodiscard]] std::vector<HalfPlanePoint> default_probe_grid(double T, double sup_abs_driver,
                                                             int count = 20);

/// sup over probes of |g_A(z) - g_B(z)|. Probes are evaluated in parallel.
[[nodiscard]] double cara_distance_proxy(const SimulationConfig& a, const DownwardMapSource& b,
                                         std::span<const HalfPlanePoint> probes);

}  // namespace loewner
