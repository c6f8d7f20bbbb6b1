#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iterator>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "loewner/loewner.hpp"
#include "parse.hpp"

namespace loewner::cli {

namespace {

using nlohmann::json;

#ifndef LOEWNER_VERSION
#define LOEWNER_VERSION "dev"
#endif

struct Artifact {
  std::string path;
  std::string content;
};

struct Outcome {
  int code = kOk;
  std::string text;             // printed on stdout
  std::vector<Artifact> files;  // written only when the command had --out
  json manifest;                // null unless files were produced
};

// Thrown for bad flag values found after CLI11 has parsed the line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double x, int digits = 10) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json make_manifest(const std::string& command, const std::vector<std::string>& argv,
                   json config, const std::vector<std::uint64_t>& seeds,
                   const std::vector<Artifact>& files) {
  json outputs = json::array();
  for (const Artifact& f : files) outputs.push_back(f.path);
  return {{"schema_version", kManifestSchemaVersion},
          {"command", command},
          {"argv", argv},
          {"config", std::move(config)},
          {"seeds", seeds},
          {"outputs", std::move(outputs)},
          {"tool_version", LOEWNER_VERSION},
          {"timestamp", utc_timestamp()}};
}

PlanMode mode_flag(const std::string& text) {
  try {
    return plan_mode_from_string(text);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
}

// ---- simulate ---------------------------------------------------------------

struct SimulateFlags {
  std::string drivers = "const:-1,const:1";
  std::string mode = "controlled";
  std::string weights;
  int N = 1000;
  double T = 10.0;
  std::uint64_t seed = 1;
  int first_driver = 0;  // 0: library default
  std::string out;
};

SimulationConfig simulate_config(const SimulateFlags& f) {
  SimulationConfig config;
  config.T = f.T;
  config.N = f.N;
  try {
    config.drivers = parse_driver_list(f.drivers);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  const int n = static_cast<int>(config.drivers.size());
  const PlanMode mode = mode_flag(f.mode);

  std::vector<double> w;
  try {
    w = f.weights.empty() ? std::vector<double>(static_cast<std::size_t>(n), 1.0 / n)
                          : parse_double_list(f.weights);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  if (static_cast<int>(w.size()) != n) throw UsageError("--weights needs one entry per driver");

  try {
    if (n > 1) {
      const WeightVector weights(w);
      if (mode == PlanMode::controlled) {
        for (double x : w) {
          if (std::abs(x - 1.0 / n) > 1e-12) {
            throw UsageError("controlled plans use equal weights; use --mode random");
          }
        }
        const std::optional<int> first =
            f.first_driver > 0 ? std::optional<int>(f.first_driver) : std::nullopt;
        config.plan = build_controlled_plan(n, f.N, first);
      } else {
        config.plan = build_random_plan(weights, f.N, f.seed);
      }
    }
    config.validate();
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  return config;
}

Outcome run_simulate(const SimulateFlags& f, const std::vector<std::string>& argv) {
  const SimulationConfig config = simulate_config(f);
  const HullTrace trace = simulate_hull(config);
  Outcome o;
  const std::string csv = trace_to_csv(trace);
  if (f.out.empty()) {
    o.text = csv;
    return o;
  }
  o.files.push_back({f.out + ".csv", csv});
  o.files.push_back({f.out + ".json", trace_to_json(trace).dump(2) + "\n"});
  std::vector<std::uint64_t> seeds;
  if (config.plan && config.plan->seed) seeds.push_back(*config.plan->seed);
  o.manifest = make_manifest("simulate", argv, config_to_json(config), seeds, o.files);
  o.text = "wrote " + std::to_string(trace.points.size()) + " points to " + f.out + ".csv\n";
  return o;
}

// ---- sweep ------------------------------------------------------------------

struct SweepFlags {
  std::string Ns;
  std::string mode = "controlled";
  std::string seeds;
  int n_seeds = 0;
  std::uint64_t seed_base = 1;
  double T = 10.0;
  int first_driver = 0;
  std::string out;
};

Outcome run_sweep(const SweepFlags& f, const std::vector<std::string>& argv) {
  std::vector<int> Ns;
  std::vector<std::uint64_t> seeds;
  try {
    Ns = parse_int_list(f.Ns);
    seeds = parse_seed_list(f.seeds);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  if (Ns.empty()) throw UsageError("--Ns needs at least one value");
  const PlanMode mode = mode_flag(f.mode);
  if (f.n_seeds < 0) throw UsageError("--n-seeds must be non-negative");
  if (!seeds.empty() && f.n_seeds > 0) throw UsageError("give --seeds or --n-seeds, not both");
  for (int i = 0; i < f.n_seeds; ++i) seeds.push_back(f.seed_base + static_cast<std::uint64_t>(i));
  if (mode == PlanMode::random && seeds.empty()) {
    throw UsageError("random sweeps need --seeds or --n-seeds");
  }
  if (mode == PlanMode::controlled && !seeds.empty()) {
    throw UsageError("controlled sweeps take no seeds");
  }
  if (!(f.T > 0.0) || !std::isfinite(f.T)) throw UsageError("-T must be positive");
  if (f.first_driver != 0 && (f.first_driver < 1 || f.first_driver > 2)) {
    throw UsageError("--first-driver must be 1 or 2");
  }

  const std::optional<int> first =
      f.first_driver > 0 ? std::optional<int>(f.first_driver) : std::nullopt;
  const auto reports = error_sweep(Ns, mode, f.T, seeds, first);

  Outcome o;
  const std::string csv = reports_to_csv(reports);
  if (f.out.empty()) {
    o.text = csv;
    return o;
  }
  json table = {{"T", f.T}, {"mode", to_string(mode)}, {"reports", reports_to_json(reports)}};
  o.files.push_back({f.out + ".csv", csv});
  o.files.push_back({f.out + ".json", table.dump(2) + "\n"});
  json config = {{"T", f.T},
                 {"Ns", Ns},
                 {"mode", to_string(mode)},
                 {"first_driver", first ? json(*first) : json(nullptr)}};
  o.manifest = make_manifest("sweep", argv, std::move(config), seeds, o.files);
  o.text = "wrote " + std::to_string(reports.size()) + " reports to " + f.out + ".csv\n";
  return o;
}

// ---- check ------------------------------------------------------------------

struct CheckFlags {
  bool hcap = false;
  bool weights = false;
  bool cara = false;
  bool symmetry = false;
  int N = 1000;
  double T = 10.0;
  std::string seeds = "1";
};

class Report {
 public:
  void line(bool ok, const std::string& name, const std::string& detail) {
    text_ += ok ? "[PASS] " : "[FAIL] ";
    text_ += name + ": " + detail + "\n";
    all_ok_ = all_ok_ && ok;
  }
  [[nodiscard]] bool ok() const { return all_ok_; }
  [[nodiscard]] const std::string& text() const { return text_; }

 private:
  std::string text_;
  bool all_ok_ = true;
};

void check_hcap(const CheckFlags& f, std::uint64_t seed, Report& r) {
  const double tol = 0.002 * f.T;
  for (const PlanMode mode : {PlanMode::controlled, PlanMode::random}) {
    const auto config = make_knk_config(
        f.T, f.N, mode, mode == PlanMode::random ? std::optional(seed) : std::nullopt);
    const auto steps = config.schedule();
    const double R = std::max(1e4, minimum_probe_radius(steps));
    const double est = hcap_estimate(steps, R);
    const double err = std::abs(est - 2.0 * f.T);
    r.line(err <= tol, "hcap " + to_string(mode),
           "estimate " + fmt(est, 12) + " at R = " + fmt(R) + ", |estimate - " + fmt(2.0 * f.T) +
               "| = " + fmt(err, 3) + " (tol " + fmt(tol) + ")");
  }
}

void check_weights(const CheckFlags& f, Report& r) {
  const OscillationPlan plan = build_controlled_plan(2, f.N);
  // Driver 1 holds the odd sub-intervals; int over [k/N, (k+1)/N) of t is (2k+1)/(2N^2).
  long long s = 0;
  for (long long k = 1; k < f.N; k += 2) s += 2 * k + 1;
  const double n2 = static_cast<double>(f.N) * f.N;
  const double expected_t = static_cast<double>(std::llabs(2 * s - 1LL * f.N * f.N)) / (4.0 * n2);
  const double gap_t = weak_convergence_gap(plan, 1, 0.5, TestFunction::identity());
  r.line(std::abs(gap_t - expected_t) <= 1e-12, "weights controlled h(t)=t",
         "gap " + fmt(gap_t) + " (expected " + fmt(expected_t) + ")");

  const double expected_1 = f.N % 2 == 0 ? 0.0 : 0.5 / f.N;
  const double gap_1 = weak_convergence_gap(plan, 1, 0.5, TestFunction::constant(1.0));
  r.line(f.N % 2 == 0 ? gap_1 == 0.0 : std::abs(gap_1 - expected_1) <= 1e-12,
         "weights controlled h=1", "gap " + fmt(gap_1) + " (expected " + fmt(expected_1) + ")");

  auto mean_gap = [](int n) {
    double total = 0.0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const auto p = build_random_plan(WeightVector({0.5, 0.5}), n, seed);
      total += weak_convergence_gap(p, 1, 0.5, TestFunction::identity());
    }
    return total / 50.0;
  };
  const double coarse = mean_gap(f.N);
  const double fine = mean_gap(100 * f.N);
  r.line(fine < coarse, "weights random h(t)=t",
         "mean gap over 50 seeds " + fmt(coarse, 6) + " at N = " + std::to_string(f.N) + ", " +
             fmt(fine, 6) + " at N = " + std::to_string(100 * f.N));
}

void check_cara(const CheckFlags& f, std::uint64_t seed, Report& r) {
  for (const PlanMode mode : {PlanMode::controlled, PlanMode::random}) {
    const auto s = mode == PlanMode::random ? std::optional(seed) : std::nullopt;
    const auto coarse = make_knk_config(f.T, f.N, mode, s);
    const auto fine = make_knk_config(f.T, 10 * f.N, mode, s);
    const auto probes = default_probe_grid(f.T, 1.0);
    const MultiLoewnerOracle oracle = weighted_oracle_for(fine);
    const double dc = cara_distance_proxy(coarse, oracle, probes);
    const double df = cara_distance_proxy(fine, oracle, probes);
    r.line(df < dc, "cara " + to_string(mode),
           "proxy " + fmt(dc, 6) + " at N = " + std::to_string(f.N) + ", " + fmt(df, 6) +
               " at N = " + std::to_string(10 * f.N));
  }
}

void check_symmetry(const CheckFlags& f, Report& r) {
  const HullTrace a = simulate_hull(make_knk_config(f.T, f.N, PlanMode::controlled));
  const HullTrace b = simulate_hull(make_knk_config(f.T, f.N, PlanMode::controlled, {}, 1));
  double worst = 0.0;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    worst = std::max(worst, distance(a.points[i].point.mirrored(), b.points[i].point));
  }
  r.line(worst <= 1e-9, "symmetry mirror", "max |mirror(a) - b| = " + fmt(worst, 3));
  const bool sides = side_consistency(a);
  r.line(sides, "symmetry sides",
         std::string("side consistency ") + (sides ? "holds" : "fails") + " at N = " +
             std::to_string(f.N) + ", T = " + fmt(f.T));
}

Outcome run_check(const CheckFlags& f) {
  if (!(f.hcap || f.weights || f.cara || f.symmetry)) {
    throw UsageError("select at least one of --hcap, --weights, --cara, --symmetry");
  }
  if (f.N < 1) throw UsageError("-N must be >= 1");
  if (!(f.T > 0.0) || !std::isfinite(f.T)) throw UsageError("-T must be positive");
  std::vector<std::uint64_t> seeds;
  try {
    seeds = parse_seed_list(f.seeds);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  if (seeds.empty()) throw UsageError("--seeds needs at least one value");

  Report r;
  if (f.hcap) check_hcap(f, seeds.front(), r);
  if (f.weights) check_weights(f, r);
  if (f.cara) check_cara(f, seeds.front(), r);
  if (f.symmetry) check_symmetry(f, r);
  Outcome o;
  o.text = r.text();
  o.code = r.ok() ? kOk : kCheckFailed;
  return o;
}

// ---- dispatch ---------------------------------------------------------------

Outcome dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                 bool allow_replay);

Outcome run_replay(const std::string& manifest_path, std::ostream& out, std::ostream& err) {
  std::ifstream in(manifest_path);
  if (!in) throw UsageError("cannot open manifest '" + manifest_path + "'");
  json m;
  try {
    m = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (m.value("schema_version", 0) != kManifestSchemaVersion || !m.contains("argv")) {
    throw UsageError("unsupported manifest schema");
  }
  const auto argv = m.at("argv").get<std::vector<std::string>>();
  Outcome inner = dispatch(argv, out, err, false);
  Outcome o;
  if (inner.code != kOk) {
    o.code = inner.code;
    o.text = "replayed command exited with " + std::to_string(inner.code) + "\n";
    return o;
  }
  bool all_match = true;
  for (const Artifact& a : inner.files) {
    std::ifstream f(a.path, std::ios::binary);
    const bool match =
        f.is_open() &&
        std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()) ==
            a.content;
    o.text += (match ? "[match] " : "[differs] ") + a.path + "\n";
    all_match = all_match && match;
  }
  o.code = all_match ? kOk : kCheckFailed;
  return o;
}

Outcome dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                 bool allow_replay) {
  CLI::App app{"Loewner zipper simulations of multi-component hulls", "loewner"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LOEWNER_VERSION);

  SimulateFlags sim;
  auto* simulate = app.add_subcommand("simulate", "Run one zipper simulation and emit its trace");
  simulate->add_option("--drivers", sim.drivers,
                       "Comma list of const:<v>, named:<id>:<p>..., table:<file>")
      ->capture_default_str();
  simulate->add_option("--mode", sim.mode, "controlled | random")->capture_default_str();
  simulate->add_option("--weights", sim.weights, "Comma list of driver weights (default equal)");
  simulate->add_option("-N", sim.N, "Number of sub-intervals")->capture_default_str();
  simulate->add_option("-T", sim.T, "Final time")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Seed for random plans")->capture_default_str();
  simulate->add_option("--first-driver", sim.first_driver,
                       "Driver copied at t = 0 in controlled mode (default: the last one)");
  simulate->add_option("--out", sim.out, "Write PREFIX.csv, PREFIX.json, PREFIX.manifest.json");

  SweepFlags sw;
  auto* sweep = app.add_subcommand("sweep", "Error reports of (-1, +1) runs against the exact hull");
  sweep->add_option("--Ns", sw.Ns, "Comma list of N values")->required();
  sweep->add_option("--mode", sw.mode, "controlled | random")->capture_default_str();
  sweep->add_option("--seeds", sw.seeds, "Comma list of seeds (random mode)");
  sweep->add_option("--n-seeds", sw.n_seeds, "Use seeds seed-base .. seed-base + n - 1");
  sweep->add_option("--seed-base", sw.seed_base, "First seed for --n-seeds")
      ->capture_default_str();
  sweep->add_option("-T", sw.T, "Final time")->capture_default_str();
  sweep->add_option("--first-driver", sw.first_driver, "Controlled alternation start (1 or 2)");
  sweep->add_option("--out", sw.out, "Write PREFIX.csv, PREFIX.json, PREFIX.manifest.json");

  CheckFlags ck;
  auto* check = app.add_subcommand("check", "Run verification suites and report pass/fail");
  check->add_flag("--hcap", ck.hcap, "Capacity of simulated schedules equals 2T");
  check->add_flag("--weights", ck.weights, "Weak convergence of the weight indicators");
  check->add_flag("--cara", ck.cara, "Mapping-down functions approach the weighted ODE");
  check->add_flag("--symmetry", ck.symmetry, "Mirror covariance and side consistency");
  check->add_option("-N", ck.N, "Number of sub-intervals")->capture_default_str();
  check->add_option("-T", ck.T, "Final time")->capture_default_str();
  check->add_option("--seeds", ck.seeds, "Seeds for random-plan checks (first one is used)")
      ->capture_default_str();

  std::string manifest_path;
  auto* replay = app.add_subcommand("replay", "Re-run a manifest and compare with its outputs");
  replay->add_option("manifest", manifest_path, "Path to a .manifest.json file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    Outcome o;
    const int code = app.exit(e, out, err);
    o.code = code == 0 ? kOk : kUsage;
    return o;
  }

  if (simulate->parsed()) return run_simulate(sim, args);
  if (sweep->parsed()) return run_sweep(sw, args);
  if (check->parsed()) return run_check(ck);
  if (!allow_replay) throw UsageError("a manifest cannot replay another replay");
  return run_replay(manifest_path, out, err);
}

void write_file(const Artifact& a) {
  std::ofstream f(a.path, std::ios::binary | std::ios::trunc);
  f << a.content;
  if (!f) throw Error("cannot write '" + a.path + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    Outcome o = dispatch(args, out, err, true);
    if (!o.files.empty()) {
      for (const Artifact& a : o.files) write_file(a);
      const std::string prefix = o.files.front().path.substr(0, o.files.front().path.rfind('.'));
      write_file({prefix + ".manifest.json", o.manifest.dump(2) + "\n"});
    }
    out << o.text;
    return o.code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
}

}  // namespace loewner::cli
