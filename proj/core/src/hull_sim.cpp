#include "loewner/hull_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "loewner/errors.hpp"
#include "loewner/parallel.hpp"
#include "slit_kernels.hpp"

namespace loewner {

void SimulationConfig::validate() const {
  if (!std::isfinite(T) || T <= 0.0) throw InvalidInput("simulation time T must be positive");
  if (N < 1) throw InvalidInput("simulation needs N >= 1");
  if (drivers.empty()) throw InvalidInput("simulation needs at least one driver");
  for (const DriverSpec& d : drivers) {
    if (d.horizon() < T) throw InvalidInput("driver horizon is shorter than T");
  }
  if (plan) {
    plan->validate();
    if (plan->n_drivers != static_cast<int>(drivers.size())) {
      throw InvalidInput("plan driver count does not match the driver list");
    }
    if (plan->intervals != N) throw InvalidInput("plan interval count does not match N");
  } else if (drivers.size() != 1) {
    throw InvalidInput("several drivers need an oscillation plan");
  }
}

double SimulationConfig::driver_sample(int k) const {
  if (plan) return oscillating_driver_value(*plan, drivers, T, k);
  if (k < 0 || k > N) throw InvalidInput("sample index out of range");
  return drivers.front()(T * (static_cast<double>(k) / static_cast<double>(N)));
}

int SimulationConfig::source_at(int k) const { return plan ? plan->driver_at(k) : 1; }

std::vector<SlitStep> SimulationConfig::schedule() const {
  validate();
  const double dt = T / N;
  std::vector<SlitStep> steps;
  steps.reserve(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) steps.push_back({driver_sample(k), dt});
  return steps;
}

double SimulationConfig::sup_abs_driver() const {
  double sup = 0.0;
  for (int k = 0; k <= N; ++k) sup = std::max(sup, std::abs(driver_sample(k)));
  return sup;
}

HullTrace simulate_hull(const SimulationConfig& config) {
  config.validate();
  const int n = config.N;
  const double four_dt = 4.0 * (config.T / n);

  std::vector<double> samples(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) samples[static_cast<std::size_t>(k)] = config.driver_sample(k);

  // Structure-of-arrays keeps the O(N^2) inner loop tight.
  std::vector<double> re;
  std::vector<double> im;
  re.reserve(samples.size());
  im.reserve(samples.size());
  re.push_back(samples[static_cast<std::size_t>(n)]);
  im.push_back(0.0);

  for (int step = 1; step <= n; ++step) {
    const double c = samples[static_cast<std::size_t>(n - step)];
    const std::size_t count = re.size();
    for (std::size_t i = 0; i < count; ++i) {
      const Complex w = im[i] == 0.0 ? detail::up_real(re[i], c, four_dt)
                                     : detail::up_interior(re[i], im[i], c, four_dt);
      re[i] = w.real();
      im[i] = w.imag();
    }
    re.push_back(c);
    im.push_back(0.0);
  }

  HullTrace trace;
  trace.config = config;
  trace.points.reserve(re.size());
  for (std::size_t b = 0; b < re.size(); ++b) {
    const int birth = static_cast<int>(b);
    trace.points.push_back({HalfPlanePoint(re[b], im[b]), config.source_at(n - birth), birth});
  }
  return trace;
}

HalfPlanePoint integrate_multi_le_down(const HalfPlanePoint& z0,
                                       std::span<const DriverSpec> drivers,
                                       const WeightVector& weights, double T, int steps) {
  if (drivers.empty() || drivers.size() != weights.size()) {
    throw InvalidInput("driver and weight counts must match and be non-empty");
  }
  if (!std::isfinite(T) || T < 0.0) throw InvalidInput("integration time must be >= 0");
  if (steps < 1) throw InvalidInput("integration needs at least one step");
  if (T == 0.0) return z0;

  const double guard_scale = 10.0 * std::sqrt(std::numeric_limits<double>::epsilon());
  const std::size_t n = drivers.size();
  std::vector<std::optional<double>> constants(n);
  for (std::size_t k = 0; k < n; ++k) constants[k] = drivers[k].constant_value();

  auto field = [&](double t, Complex g) -> Complex {
    if (g.imag() < 0.0 || !std::isfinite(g.real()) || !std::isfinite(g.imag())) {
      throw SwallowedPoint("trajectory left the upper half-plane");
    }
    const double guard = guard_scale * std::max(1.0, std::abs(g));
    Complex sum{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      const double lam = constants[k] ? *constants[k] : drivers[k](std::min(t, T));
      const double dr = g.real() - lam;
      const double di = g.imag();
      const double r2 = dr * dr + di * di;
      if (std::sqrt(r2) < guard) {
        std::ostringstream msg;
        msg << "trajectory reached driver " << (k + 1) << " at t = " << t;
        throw SwallowedPoint(msg.str());
      }
      const double s = 2.0 * weights[k] / r2;
      sum += Complex{s * dr, -s * di};
    }
    return sum;
  };

  const double h = T / steps;
  Complex g = z0.value();
  for (int i = 0; i < steps; ++i) {
    const double t = T * (static_cast<double>(i) / steps);
    const Complex k1 = field(t, g);
    const Complex k2 = field(t + 0.5 * h, g + 0.5 * h * k1);
    const Complex k3 = field(t + 0.5 * h, g + 0.5 * h * k2);
    const Complex k4 = field(t + h, g + h * k3);
    g += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  if (g.imag() < 0.0) throw SwallowedPoint("trajectory ended below the real axis");
  return HalfPlanePoint(g);
}

MultiLoewnerOracle weighted_oracle_for(const SimulationConfig& config) {
  config.validate();
  return {config.drivers, config.plan ? config.plan->weights : WeightVector::equal(1), config.T,
          100 * config.N};
}

HalfPlanePoint map_down(const DownwardMapSource& source, const HalfPlanePoint& z) {
  if (const auto* oracle = std::get_if<MultiLoewnerOracle>(&source)) {
    return integrate_multi_le_down(z, oracle->drivers, oracle->weights, oracle->T, oracle->steps);
  }
  const auto& config = std::get<SimulationConfig>(source);
  const std::vector<SlitStep> steps = config.schedule();
  Complex w = z.value();
  for (const SlitStep& s : steps) {
    const double four_dt = 4.0 * s.dt;
    if (detail::on_open_slit(w, s.c, four_dt)) {
      throw SwallowedPoint("probe point falls into the simulated hull");
    }
    w = detail::down_unchecked(w, s.c, four_dt);
  }
  return HalfPlanePoint(w);
}

std::vector<HalfPlanePoint> default_probe_grid(double T, double sup_abs_driver, int count) {
  if (count < 1) throw InvalidInput("probe grid needs at least one point");
  const double radius = 8.0 * std::max(std::sqrt(T), sup_abs_driver);
  std::vector<HalfPlanePoint> probes;
  probes.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double angle = std::numbers::pi * (i + 0.5) / count;
    probes.emplace_back(radius * std::cos(angle), radius * std::sin(angle));
  }
  return probes;
}

double cara_distance_proxy(const SimulationConfig& a, const DownwardMapSource& b,
                           std::span<const HalfPlanePoint> probes) {
  const DownwardMapSource source_a = a;
  std::vector<double> gaps(probes.size(), 0.0);
  parallel_for(probes.size(), [&](std::size_t i) {
    const HalfPlanePoint ga = map_down(source_a, probes[i]);
    const HalfPlanePoint gb = map_down(b, probes[i]);
    gaps[i] = distance(ga, gb);
  });
  return gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end());
}

}  // namespace loewner
