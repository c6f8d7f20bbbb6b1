#include "loewner/driving.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "exact_sum.hpp"
#include "loewner/errors.hpp"

namespace loewner {

namespace {

void check_horizon(double horizon) {
  if (std::isnan(horizon) || horizon <= 0.0) {
    throw InvalidInput("driver horizon must be positive");
  }
}

double evaluate_named(const DriverSpec::Named& f, double t) {
  const auto& p = f.params;
  if (f.id == "linear") return p[0] + p[1] * t;
  if (f.id == "sqrt") return p[0] * std::sqrt(t);
  if (f.id == "sine") return p[0] * std::sin(p[1] * t + p[2]);
  throw InvalidInput("unknown named driver '" + f.id + "'");
}

std::size_t named_arity(const std::string& id) {
  if (id == "linear") return 2;
  if (id == "sqrt") return 1;
  if (id == "sine") return 3;
  throw InvalidInput("unknown named driver '" + id + "'");
}

double evaluate_table(const DriverSpec::Tabulated& tab, double t) {
  const auto& ts = tab.times;
  auto it = std::upper_bound(ts.begin(), ts.end(), t);
  if (it == ts.end()) return tab.values.back();
  if (it == ts.begin()) return tab.values.front();
  const auto hi = static_cast<std::size_t>(it - ts.begin());
  const auto lo = hi - 1;
  const double s = (t - ts[lo]) / (ts[hi] - ts[lo]);
  return tab.values[lo] + s * (tab.values[hi] - tab.values[lo]);
}

// Local mean of h over [a, a + width] by adaptive Simpson in u in [0, 1].
double simpson_local_mean(const std::function<double(double)>& h, double a, double width) {
  const auto f = [&](double u) { return h(a + width * u); };
  constexpr double kTol = 1e-12;
  constexpr int kMaxDepth = 40;

  struct Rec {
    const decltype(f)& fn;
    double run(double lo, double hi, double flo, double fmid, double fhi, double whole,
               double tol, int depth) const {
      const double mid = 0.5 * (lo + hi);
      const double lm = 0.5 * (lo + mid);
      const double rm = 0.5 * (mid + hi);
      const double flm = fn(lm);
      const double frm = fn(rm);
      const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
      const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
      const double delta = left + right - whole;
      if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
      return run(lo, mid, flo, flm, fmid, left, 0.5 * tol, depth - 1) +
             run(mid, hi, fmid, frm, fhi, right, 0.5 * tol, depth - 1);
    }
  };
  const double f0 = f(0.0);
  const double fm = f(0.5);
  const double f1 = f(1.0);
  const double whole = (f0 + 4.0 * fm + f1) / 6.0;
  return Rec{f}.run(0.0, 1.0, f0, fm, f1, whole, kTol, kMaxDepth);
}

}  // namespace

DriverSpec DriverSpec::constant(double value, double horizon) {
  if (!std::isfinite(value)) throw InvalidInput("constant driver value must be finite");
  check_horizon(horizon);
  return DriverSpec(Constant{value}, horizon);
}

DriverSpec DriverSpec::tabulated(std::vector<double> times, std::vector<double> values) {
  if (times.size() < 2 || times.size() != values.size()) {
    throw InvalidInput("tabulated driver needs >= 2 samples and matching value count");
  }
  if (times.front() != 0.0) throw InvalidInput("tabulated driver must start at t = 0");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !std::isfinite(values[i])) {
      throw InvalidInput("tabulated driver samples must be finite");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw InvalidInput("tabulated driver times must be strictly ascending");
    }
  }
  const double horizon = times.back();
  return DriverSpec(Tabulated{std::move(times), std::move(values)}, horizon);
}

DriverSpec DriverSpec::named(std::string id, std::vector<double> params, double horizon) {
  if (params.size() != named_arity(id)) {
    throw InvalidInput("named driver '" + id + "' expects " + std::to_string(named_arity(id)) +
                       " parameters");
  }
  for (double p : params) {
    if (!std::isfinite(p)) throw InvalidInput("named driver parameters must be finite");
  }
  check_horizon(horizon);
  return DriverSpec(Named{std::move(id), std::move(params)}, horizon);
}

double DriverSpec::operator()(double t) const {
  if (!(t >= 0.0 && t <= horizon_)) {
    std::ostringstream msg;
    msg << "driver evaluated at t = " << t << " outside [0, " << horizon_ << "]";
    throw InvalidInput(msg.str());
  }
  return std::visit(
      [t](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Constant>) {
          return k.value;
        } else if constexpr (std::is_same_v<K, Tabulated>) {
          return evaluate_table(k, t);
        } else {
          return evaluate_named(k, t);
        }
      },
      kind_);
}

std::optional<double> DriverSpec::constant_value() const noexcept {
  if (const auto* c = std::get_if<Constant>(&kind_)) return c->value;
  return std::nullopt;
}

std::string DriverSpec::describe() const {
  std::ostringstream out;
  out.precision(17);
  std::visit(
      [&out](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Constant>) {
          out << "const:" << k.value;
        } else if constexpr (std::is_same_v<K, Tabulated>) {
          out << "table:" << k.times.size() << " points";
        } else {
          out << "named:" << k.id;
          for (double p : k.params) out << ':' << p;
        }
      },
      kind_);
  return out.str();
}

bool operator==(const DriverSpec::Constant& a, const DriverSpec::Constant& b) {
  return a.value == b.value;
}
bool operator==(const DriverSpec::Tabulated& a, const DriverSpec::Tabulated& b) {
  return a.times == b.times && a.values == b.values;
}
bool operator==(const DriverSpec::Named& a, const DriverSpec::Named& b) {
  return a.id == b.id && a.params == b.params;
}
bool operator==(const DriverSpec& a, const DriverSpec& b) {
  return a.horizon_ == b.horizon_ && a.kind_ == b.kind_;
}

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
  if (w_.empty()) throw InvalidInput("weight vector must be non-empty");
  if (w_.size() == 1) {
    if (w_[0] != 1.0) throw InvalidInput("a single driver must carry weight 1");
    return;
  }
  double sum = 0.0;
  for (double x : w_) {
    if (!(x > 0.0 && x < 1.0)) throw InvalidInput("weights must lie strictly inside (0, 1)");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InvalidInput("weights must sum to 1");
}

WeightVector WeightVector::equal(int n_drivers) {
  if (n_drivers < 1) throw InvalidInput("need at least one driver");
  return WeightVector(std::vector<double>(static_cast<std::size_t>(n_drivers),
                                          1.0 / static_cast<double>(n_drivers)));
}

std::string to_string(PlanMode mode) {
  return mode == PlanMode::controlled ? "controlled" : "random";
}

PlanMode plan_mode_from_string(const std::string& text) {
  if (text == "controlled") return PlanMode::controlled;
  if (text == "random") return PlanMode::random;
  throw InvalidInput("unknown plan mode '" + text + "'");
}

void OscillationPlan::validate() const {
  if (n_drivers < 1) throw InvalidInput("plan needs at least one driver");
  if (intervals < 1) throw InvalidInput("plan needs at least one interval");
  if (assignment.size() != static_cast<std::size_t>(intervals) + 1) {
    throw InvalidInput("plan assignment must have intervals + 1 entries");
  }
  if (weights.size() != static_cast<std::size_t>(n_drivers)) {
    throw InvalidInput("plan weight count does not match driver count");
  }
  for (int j : assignment) {
    if (j < 1 || j > n_drivers) throw InvalidInput("plan assignment entry out of range");
  }
  if (mode == PlanMode::random && !seed) throw InvalidInput("random plan must record its seed");
}

int OscillationPlan::driver_at(int k) const {
  if (k < 0 || k > intervals) {
    throw InvalidInput("sample index " + std::to_string(k) + " outside 0.." +
                       std::to_string(intervals));
  }
  return assignment[static_cast<std::size_t>(k)];
}

OscillationPlan build_controlled_plan(int n_drivers, int intervals,
                                      std::optional<int> first_driver) {
  if (n_drivers < 1 || intervals < 1) {
    throw InvalidInput("controlled plan needs n_drivers >= 1 and intervals >= 1");
  }
  const int first = first_driver.value_or(n_drivers);
  if (first < 1 || first > n_drivers) throw InvalidInput("first driver out of range");

  OscillationPlan plan;
  plan.n_drivers = n_drivers;
  plan.intervals = intervals;
  plan.mode = PlanMode::controlled;
  plan.weights = WeightVector::equal(n_drivers);
  plan.assignment.resize(static_cast<std::size_t>(intervals) + 1);
  for (int k = 0; k <= intervals; ++k) {
    plan.assignment[static_cast<std::size_t>(k)] = (first - 1 + k) % n_drivers + 1;
  }
  return plan;
}

OscillationPlan build_random_plan(const WeightVector& weights, int intervals, std::uint64_t seed) {
  if (intervals < 1) throw InvalidInput("random plan needs intervals >= 1");
  const auto n = weights.size();
  std::vector<double> cumulative(n);
  double running = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    running += weights[i];
    cumulative[i] = running;
  }
  cumulative.back() = 1.0;

  OscillationPlan plan;
  plan.n_drivers = static_cast<int>(n);
  plan.intervals = intervals;
  plan.mode = PlanMode::random;
  plan.weights = weights;
  plan.seed = seed;
  plan.assignment.resize(static_cast<std::size_t>(intervals) + 1);

  std::mt19937_64 rng(seed);
  for (auto& j : plan.assignment) {
    // 53 random bits -> uniform double in [0, 1), identical on every platform.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
    j = static_cast<int>(it - cumulative.begin()) + 1;
  }
  return plan;
}

double oscillating_driver_value(const OscillationPlan& plan, std::span<const DriverSpec> drivers,
                                double T, int k) {
  if (drivers.size() != static_cast<std::size_t>(plan.n_drivers)) {
    throw InvalidInput("driver count does not match the plan");
  }
  const int j = plan.driver_at(k);
  const double t = T * (static_cast<double>(k) / static_cast<double>(plan.intervals));
  return drivers[static_cast<std::size_t>(j - 1)](t);
}

int weight_indicator(const OscillationPlan& plan, int driver_index, double t) {
  if (driver_index < 1 || driver_index > plan.n_drivers) {
    throw InvalidInput("driver index out of range");
  }
  if (!(t >= 0.0 && t < 1.0)) throw InvalidInput("normalised time must lie in [0, 1)");
  auto m = static_cast<int>(std::floor(t * plan.intervals));
  m = std::min(m, plan.intervals - 1);
  return plan.driver_at(m) == driver_index ? 1 : 0;
}

TestFunction TestFunction::constant(double v) {
  return {[v](double) { return v; }, {}};
}

TestFunction TestFunction::identity() {
  return {[](double t) { return t; }, [](double t) { return 0.5 * t * t; }};
}

TestFunction TestFunction::cos_pi() {
  return {[](double t) { return std::cos(std::numbers::pi * t); },
          [](double t) { return std::sin(std::numbers::pi * t) / std::numbers::pi; }};
}

double weak_convergence_gap(const OscillationPlan& plan, int driver_index, double target_w,
                            const TestFunction& h) {
  if (driver_index < 1 || driver_index > plan.n_drivers) {
    throw InvalidInput("driver index out of range");
  }
  if (!h.value) throw InvalidInput("test function has no callable");

  const int n = plan.intervals;
  const double width = 1.0 / static_cast<double>(n);
  detail::ExactSum sum;
  for (int m = 0; m < n; ++m) {
    const double a = static_cast<double>(m) / n;
    double integral = 0.0;
    if (h.antiderivative) {
      const double b = static_cast<double>(m + 1) / n;
      integral = h.antiderivative(b) - h.antiderivative(a);
    } else {
      integral = width * simpson_local_mean(h.value, a, width);
    }
    const double active = plan.driver_at(m) == driver_index ? 1.0 : 0.0;
    sum.add((active - target_w) * integral);
  }
  return std::abs(sum.value());
}

}  // namespace loewner
