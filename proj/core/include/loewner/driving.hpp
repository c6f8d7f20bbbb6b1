#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace loewner {

/// A continuous real driving function on [0, horizon].
///
/// Three shapes are supported: a constant, a piecewise-linear table, and a
/// small registry of closed forms addressed by name:
///   linear(a, b)            a + b t
///   sqrt(kappa)             kappa * sqrt(t)
///   sine(amp, freq, phase)  amp * sin(freq * t + phase)
/// Constants and named forms default to an unbounded horizon.
class DriverSpec {
 public:
  struct Constant {
    double value = 0.0;
  };
  struct Tabulated {
    std::vector<double> times;
    std::vector<double> values;
  };
  struct Named {
    std::string id;
    std::vector<double> params;
  };
  using Kind = std::variant<Constant, Tabulated, Named>;

  static constexpr double kUnbounded = std::numeric_limits<double>::infinity();

  static DriverSpec constant(double value, double horizon = kUnbounded);
  /// times strictly ascending, times.front() == 0; the horizon is times.back().
  static DriverSpec tabulated(std::vector<double> times, std::vector<double> values);
  static DriverSpec named(std::string id, std::vector<double> params,
                          double horizon = kUnbounded);

  /// Throws InvalidInput for t outside [0, horizon].
  [[nodiscard]] double operator()(double t) const;

  [[nodiscard]] double horizon() const noexcept { return horizon_; }
  [[nodiscard]] const Kind& kind() const noexcept { return kind_; }
  [[nodiscard]] std::optional<double> constant_value() const noexcept;

  /// Short text form used by the CLI: "const:-1", "named:sine:1:2:0", "table:<n points>".
  [[nodiscard]] std::string describe() const;

  friend bool operator==(const DriverSpec& a, const DriverSpec& b);

 private:
  DriverSpec(Kind kind, double horizon) : kind_(std::move(kind)), horizon_(horizon) {}

  Kind kind_;
  double horizon_ = kUnbounded;
};

bool operator==(const DriverSpec::Constant& a, const DriverSpec::Constant& b);
bool operator==(const DriverSpec::Tabulated& a, const DriverSpec::Tabulated& b);
bool operator==(const DriverSpec::Named& a, const DriverSpec::Named& b);

/// Probability weights, one per driver. For two or more drivers every entry
/// lies in (0, 1); a single driver carries weight exactly 1. Sum is 1 to 1e-12.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> w);
  static WeightVector equal(int n_drivers);

  [[nodiscard]] std::size_t size() const noexcept { return w_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return w_.at(i); }
  [[nodiscard]] std::span<const double> values() const noexcept { return w_; }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<double> w_;
};

enum class PlanMode { controlled, random };

[[nodiscard]] std::string to_string(PlanMode mode);
/// Throws InvalidInput for anything but "controlled" / "random".
[[nodiscard]] PlanMode plan_mode_from_string(const std::string& text);

/// Which driver the single oscillating driver copies at each sample point.
///
/// `assignment[k]` (k = 0..intervals) holds a 1-based driver index j_k for
/// the sample at time T k / intervals. Sample k < intervals governs the
/// sub-interval [k/intervals, (k+1)/intervals) of normalised time; the last
/// sample is only ever a hull point.
struct OscillationPlan {
  int n_drivers = 1;
  int intervals = 1;
  std::vector<int> assignment;
  PlanMode mode = PlanMode::controlled;
  WeightVector weights = WeightVector::equal(1);
  std::optional<std::uint64_t> seed;

  /// Throws InvalidInput if any invariant is broken.
  void validate() const;
  /// 1-based driver index at sample k; throws InvalidInput when k is out of range.
  [[nodiscard]] int driver_at(int k) const;

  friend bool operator==(const OscillationPlan&, const OscillationPlan&) = default;
};

/// Round-robin plan j_k = ((first_driver - 1 + k) mod n) + 1.
///
/// `first_driver` defaults to n_drivers, so for two drivers the sample at
/// t = 0 copies driver 2 and even samples copy driver 2, odd samples
/// driver 1. Since the zipper applies the t = 0 sample last, a (-1, +1)
/// controlled run then ends with the +1 map. Pass first_driver = 1 for the
/// mirror ordering.
[[nodiscard]] OscillationPlan build_controlled_plan(int n_drivers, int intervals,
                                                    std::optional<int> first_driver = {});

/// Independent categorical draws with probabilities `weights`, from a
/// mt19937_64 stream seeded with `seed`. Pure function of its arguments.
[[nodiscard]] OscillationPlan build_random_plan(const WeightVector& weights, int intervals,
                                                std::uint64_t seed);

/// lambda_{j_k}(T k / N): the oscillating driver at the k-th sample.
[[nodiscard]] double oscillating_driver_value(const OscillationPlan& plan,
                                              std::span<const DriverSpec> drivers, double T,
                                              int k);

/// 1 iff `driver_index` (1-based) is active on the sub-interval containing
/// normalised time t in [0, 1).
[[nodiscard]] int weight_indicator(const OscillationPlan& plan, int driver_index, double t);

/// A test function h on [0, 1], optionally with an exact antiderivative.
/// Without one, integrals use adaptive Simpson (absolute tolerance 1e-12).
struct TestFunction {
  std::function<double(double)> value;
  std::function<double(double)> antiderivative;

  static TestFunction constant(double v);
  static TestFunction identity();  // h(t) = t
  static TestFunction cos_pi();    // h(t) = cos(pi t)
};

/// |integral of h * w_i^n  -  target_w * integral of h| over [0, 1], where
/// w_i^n is the plan's indicator for `driver_index`. Per-sub-interval
/// integrals are combined with an exactly rounded sum.
[[nodiscard]] double weak_convergence_gap(const OscillationPlan& plan, int driver_index,
                                          double target_w, const TestFunction& h);

}  // namespace loewner
