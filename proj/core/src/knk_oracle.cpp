#include "loewner/knk_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

#include "loewner/errors.hpp"
#include "loewner/parallel.hpp"

namespace loewner {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr int kScanPoints = 10000;
constexpr int kLogScanPoints = 400;
constexpr double kThetaTolerance = 1e-10;

// Right arm point for theta in [0, pi/2); theta = 0 is the foot at +1.
Complex right_arm(double theta) {
  const double r = knk_radius(theta);
  return {r * std::cos(theta), r * std::sin(theta)};
}

// theta at which the radius reaches `radius` (> 1).
double theta_for_radius(double radius) {
  double lo = 0.0;
  double hi = kHalfPi;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (knk_radius(mid) < radius) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

struct ArmProjection {
  double distance;
  double theta;
};

// Scan grid of the right arm up to a cap radius: log-spaced near both ends,
// cosine-spaced in between, plus the foot theta = 0.
struct ScanTable {
  std::vector<double> thetas;
  std::vector<Complex> points;
};

ScanTable build_scan_table(double cap) {
  const double theta_cap = theta_for_radius(cap);
  ScanTable table;
  auto& thetas = table.thetas;
  thetas.reserve(kScanPoints + 1);
  thetas.push_back(0.0);
  const double lo_exp = std::log(1e-9);
  const double hi_exp = std::log(1e-2 * theta_cap);
  for (int i = 0; i < kLogScanPoints / 2; ++i) {
    const double e = lo_exp + (hi_exp - lo_exp) * i / (kLogScanPoints / 2);
    thetas.push_back(std::exp(e));
    thetas.push_back(theta_cap - std::exp(e));
  }
  for (int i = 0; i < kScanPoints - kLogScanPoints; ++i) {
    const double s = (i + 0.5) / (kScanPoints - kLogScanPoints);
    thetas.push_back(0.5 * theta_cap * (1.0 - std::cos(std::numbers::pi * s)));
  }
  std::sort(thetas.begin(), thetas.end());
  table.points.reserve(thetas.size());
  for (double t : thetas) table.points.push_back(right_arm(t));
  return table;
}

// Tables are keyed by the cap radius rounded up to a power of two.
const ScanTable& scan_table_for(double cap) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const ScanTable>> cache;
  const int exponent = std::max(1, static_cast<int>(std::ceil(std::log2(cap))));
  std::lock_guard lock(mutex);
  auto& slot = cache[exponent];
  if (!slot) slot = std::make_unique<const ScanTable>(build_scan_table(std::ldexp(1.0, exponent)));
  return *slot;
}

ArmProjection project_onto_right_arm(Complex z) {
  // The nearest arm point q obeys |q| <= |z| + |z - 1| (triangle inequality
  // through the foot), so the scan can stop at that radius.
  const double cap = std::abs(z) + std::max(1.0, std::abs(z - 1.0));
  const ScanTable& table = scan_table_for(cap);
  const auto& thetas = table.thetas;

  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < table.points.size(); ++i) {
    const double dx = z.real() - table.points[i].real();
    const double dy = z.imag() - table.points[i].imag();
    const double d2 = dx * dx + dy * dy;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  const double best_d = std::sqrt(best_d2);

  auto dist = [&z](double theta) { return std::abs(z - right_arm(theta)); };
  double a = thetas[best == 0 ? 0 : best - 1];
  double b = thetas[std::min(best + 1, thetas.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = dist(x1);
  double f2 = dist(x2);
  while (b - a > kThetaTolerance) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = dist(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = dist(x2);
    }
  }
  ArmProjection result{best_d, thetas[best]};
  for (double t : {x1, x2, a, b}) {
    const double d = dist(t);
    if (d < result.distance) result = {d, t};
  }
  return result;
}

}  // namespace

double knk_radius(double theta) {
  if (!(theta >= 0.0 && theta < kHalfPi)) {
    throw ThetaOutOfRange("curve parameter must lie in [0, pi/2)");
  }
  if (theta < 1e-6) {
    const double x = 2.0 * theta;
    return std::sqrt(1.0 + x * x / 6.0);
  }
  return std::sqrt(2.0 * theta / std::sin(2.0 * theta));
}

HalfPlanePoint knk_point(const KnkCurveParam& p) {
  if (!(p.theta > 0.0 && p.theta < kHalfPi)) {
    throw ThetaOutOfRange("curve parameter must lie strictly inside (0, pi/2)");
  }
  const Complex q = right_arm(p.theta);
  const HalfPlanePoint right(q.real(), q.imag());
  return p.side == Side::right ? right : right.mirrored();
}

CurveProjection distance_to_knk_curve(const HalfPlanePoint& z) {
  const ArmProjection right = project_onto_right_arm(z.value());
  const ArmProjection left = project_onto_right_arm(z.mirrored().value());
  if (left.distance < right.distance) return {left.distance, left.theta, Side::left};
  return {right.distance, right.theta, Side::right};
}

bool is_knk_instance(const SimulationConfig& config) {
  if (config.drivers.size() != 2 || !config.plan) return false;
  const auto c1 = config.drivers[0].constant_value();
  const auto c2 = config.drivers[1].constant_value();
  if (!c1 || !c2 || *c1 != -1.0 || *c2 != 1.0) return false;
  const auto& w = config.plan->weights;
  return w.size() == 2 && w[0] == 0.5 && w[1] == 0.5;
}

SimulationConfig make_knk_config(double T, int N, PlanMode mode, std::optional<std::uint64_t> seed,
                                 std::optional<int> first_driver) {
  SimulationConfig config;
  config.T = T;
  config.N = N;
  config.drivers = {DriverSpec::constant(-1.0), DriverSpec::constant(1.0)};
  if (mode == PlanMode::controlled) {
    config.plan = build_controlled_plan(2, N, first_driver);
  } else {
    if (!seed) throw InvalidInput("random configuration needs a seed");
    config.plan = build_random_plan(WeightVector({0.5, 0.5}), N, *seed);
  }
  return config;
}

namespace {

void require_knk(const HullTrace& trace) {
  if (!is_knk_instance(trace.config)) {
    throw NotKnkInstance("trace does not come from the (-1, +1) equal-weight configuration");
  }
}

}  // namespace

ErrorReport error_report(const HullTrace& trace) {
  require_knk(trace);
  ErrorReport report;
  report.N = trace.config.N;
  report.mode = trace.config.plan->mode;
  report.seed = trace.config.plan->seed;

  std::vector<double> errors(trace.points.size());
  parallel_for(errors.size(), [&](std::size_t i) {
    errors[i] = distance_to_knk_curve(trace.points[i].point).distance;
  });
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (trace.points[i].source == 1) {
      report.max_error_left = std::max(report.max_error_left, errors[i]);
    } else {
      report.max_error_right = std::max(report.max_error_right, errors[i]);
    }
  }
  report.max_error_overall = std::max(report.max_error_left, report.max_error_right);
  return report;
}

bool side_consistency(const HullTrace& trace) {
  require_knk(trace);
  return std::all_of(trace.points.begin(), trace.points.end(), [](const TracePoint& p) {
    return p.source == 1 ? p.point.re() < 0.0 : p.point.re() > 0.0;
  });
}

double side_separation(const HullTrace& trace) {
  std::vector<HalfPlanePoint> left;
  std::vector<HalfPlanePoint> right;
  for (const TracePoint& p : trace.points) (p.source == 1 ? left : right).push_back(p.point);
  double best = std::numeric_limits<double>::infinity();
  for (const HalfPlanePoint& a : left) {
    for (const HalfPlanePoint& b : right) best = std::min(best, distance(a, b));
  }
  return best;
}

std::vector<ErrorReport> error_sweep(std::span<const int> Ns, PlanMode mode, double T,
                                     std::span<const std::uint64_t> seeds,
                                     std::optional<int> first_driver) {
  if (Ns.empty()) throw InvalidInput("error sweep needs at least one N");
  if (mode == PlanMode::random && seeds.empty()) {
    throw InvalidInput("random error sweep needs seeds");
  }
  if (mode == PlanMode::controlled && !seeds.empty()) {
    throw InvalidInput("controlled error sweep takes no seeds");
  }

  struct Job {
    int N;
    std::optional<std::uint64_t> seed;
  };
  std::vector<Job> jobs;
  for (int n : Ns) {
    if (n < 1) throw InvalidInput("error sweep N must be >= 1");
    if (mode == PlanMode::controlled) {
      jobs.push_back({n, std::nullopt});
    } else {
      for (std::uint64_t s : seeds) jobs.push_back({n, s});
    }
  }
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    return std::tie(a.N, a.seed) < std::tie(b.N, b.seed);
  });

  std::vector<ErrorReport> reports(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const SimulationConfig config = make_knk_config(T, jobs[i].N, mode, jobs[i].seed, first_driver);
    reports[i] = error_report(simulate_hull(config));
  });
  return reports;
}

}  // namespace loewner
