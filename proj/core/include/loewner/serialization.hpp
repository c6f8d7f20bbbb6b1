#pragma once

#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "loewner/driving.hpp"
#include "loewner/hull_sim.hpp"
#include "loewner/knk_oracle.hpp"

namespace loewner {

/// Shortest text that round-trips: printf "%.17g".
[[nodiscard]] std::string format_double(double x);

// JSON forms. An unbounded driver horizon is written as null.
//   driver: {"kind": "constant", "value": v, "horizon": h}
//           {"kind": "tabulated", "times": [...], "values": [...], "horizon": h}
//           {"kind": "named", "id": s, "params": [...], "horizon": h}
//   plan:   {"n_drivers", "N", "mode", "weights", "seed", "assignment"}
//   config: {"T", "N", "drivers": [...], "plan": plan | null}
[[nodiscard]] nlohmann::json driver_to_json(const DriverSpec& driver);
[[nodiscard]] DriverSpec driver_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json plan_to_json(const OscillationPlan& plan);
[[nodiscard]] OscillationPlan plan_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json config_to_json(const SimulationConfig& config);
[[nodiscard]] SimulationConfig config_from_json(const nlohmann::json& j);

/// Header "re,im,source,birth_step", one row per point in trace order.
[[nodiscard]] std::string trace_to_csv(const HullTrace& trace);
/// {"config", "seed", "points": [{"re", "im", "source", "birth_step"}, ...]}
[[nodiscard]] nlohmann::json trace_to_json(const HullTrace& trace);
[[nodiscard]] HullTrace trace_from_json(const nlohmann::json& j);

/// Header "N,mode,seed,err_left,err_right,err_overall"; seed is empty for
/// controlled runs.
[[nodiscard]] std::string reports_to_csv(std::span<const ErrorReport> reports);
[[nodiscard]] nlohmann::json reports_to_json(std::span<const ErrorReport> reports);

}  // namespace loewner
