#include "loewner/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "loewner/errors.hpp"

namespace loewner {

using nlohmann::json;

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

json horizon_to_json(double h) { return std::isinf(h) ? json(nullptr) : json(h); }

double horizon_from_json(const json& j) {
  if (!j.contains("horizon") || j.at("horizon").is_null()) return DriverSpec::kUnbounded;
  return j.at("horizon").get<double>();
}

}  // namespace

json driver_to_json(const DriverSpec& driver) {
  json j = std::visit(
      [](const auto& k) -> json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, DriverSpec::Constant>) {
          return {{"kind", "constant"}, {"value", k.value}};
        } else if constexpr (std::is_same_v<K, DriverSpec::Tabulated>) {
          return {{"kind", "tabulated"}, {"times", k.times}, {"values", k.values}};
        } else {
          return {{"kind", "named"}, {"id", k.id}, {"params", k.params}};
        }
      },
      driver.kind());
  j["horizon"] = horizon_to_json(driver.horizon());
  return j;
}

DriverSpec driver_from_json(const json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "constant") {
      return DriverSpec::constant(j.at("value").get<double>(), horizon_from_json(j));
    }
    if (kind == "tabulated") {
      return DriverSpec::tabulated(j.at("times").get<std::vector<double>>(),
                                   j.at("values").get<std::vector<double>>());
    }
    if (kind == "named") {
      return DriverSpec::named(j.at("id").get<std::string>(),
                               j.at("params").get<std::vector<double>>(), horizon_from_json(j));
    }
    throw InvalidInput("unknown driver kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed driver JSON: ") + e.what());
  }
}

json plan_to_json(const OscillationPlan& plan) {
  return {{"n_drivers", plan.n_drivers},
          {"N", plan.intervals},
          {"mode", to_string(plan.mode)},
          {"weights", std::vector<double>(plan.weights.values().begin(),
                                          plan.weights.values().end())},
          {"seed", plan.seed ? json(*plan.seed) : json(nullptr)},
          {"assignment", plan.assignment}};
}

OscillationPlan plan_from_json(const json& j) {
  try {
    OscillationPlan plan;
    plan.n_drivers = j.at("n_drivers").get<int>();
    plan.intervals = j.at("N").get<int>();
    plan.mode = plan_mode_from_string(j.at("mode").get<std::string>());
    plan.weights = WeightVector(j.at("weights").get<std::vector<double>>());
    if (!j.at("seed").is_null()) plan.seed = j.at("seed").get<std::uint64_t>();
    plan.assignment = j.at("assignment").get<std::vector<int>>();
    plan.validate();
    return plan;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed plan JSON: ") + e.what());
  }
}

json config_to_json(const SimulationConfig& config) {
  json drivers = json::array();
  for (const DriverSpec& d : config.drivers) drivers.push_back(driver_to_json(d));
  return {{"T", config.T},
          {"N", config.N},
          {"drivers", std::move(drivers)},
          {"plan", config.plan ? plan_to_json(*config.plan) : json(nullptr)}};
}

SimulationConfig config_from_json(const json& j) {
  try {
    SimulationConfig config;
    config.T = j.at("T").get<double>();
    config.N = j.at("N").get<int>();
    config.drivers.clear();
    for (const json& d : j.at("drivers")) config.drivers.push_back(driver_from_json(d));
    if (!j.at("plan").is_null()) config.plan = plan_from_json(j.at("plan"));
    config.validate();
    return config;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed config JSON: ") + e.what());
  }
}

std::string trace_to_csv(const HullTrace& trace) {
  std::string out = "re,im,source,birth_step\n";
  out.reserve(out.size() + trace.points.size() * 56);
  for (const TracePoint& p : trace.points) {
    out += format_double(p.point.re());
    out += ',';
    out += format_double(p.point.im());
    out += ',';
    out += std::to_string(p.source);
    out += ',';
    out += std::to_string(p.birth_step);
    out += '\n';
  }
  return out;
}

json trace_to_json(const HullTrace& trace) {
  json points = json::array();
  for (const TracePoint& p : trace.points) {
    points.push_back({{"re", p.point.re()},
                      {"im", p.point.im()},
                      {"source", p.source},
                      {"birth_step", p.birth_step}});
  }
  const auto& plan = trace.config.plan;
  return {{"config", config_to_json(trace.config)},
          {"seed", plan && plan->seed ? json(*plan->seed) : json(nullptr)},
          {"points", std::move(points)}};
}

HullTrace trace_from_json(const json& j) {
  try {
    HullTrace trace;
    trace.config = config_from_json(j.at("config"));
    for (const json& p : j.at("points")) {
      trace.points.push_back({HalfPlanePoint(p.at("re").get<double>(), p.at("im").get<double>()),
                              p.at("source").get<int>(), p.at("birth_step").get<int>()});
    }
    return trace;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed trace JSON: ") + e.what());
  }
}

std::string reports_to_csv(std::span<const ErrorReport> reports) {
  std::ostringstream out;
  out << "N,mode,seed,err_left,err_right,err_overall\n";
  for (const ErrorReport& r : reports) {
    out << r.N << ',' << to_string(r.mode) << ',';
    if (r.seed) out << *r.seed;
    out << ',' << format_double(r.max_error_left) << ',' << format_double(r.max_error_right) << ','
        << format_double(r.max_error_overall) << '\n';
  }
  return out.str();
}

json reports_to_json(std::span<const ErrorReport> reports) {
  json rows = json::array();
  for (const ErrorReport& r : reports) {
    rows.push_back({{"N", r.N},
                    {"mode", to_string(r.mode)},
                    {"seed", r.seed ? json(*r.seed) : json(nullptr)},
                    {"err_left", r.max_error_left},
                    {"err_right", r.max_error_right},
                    {"err_overall", r.max_error_overall}});
  }
  return rows;
}

}  // namespace loewner
