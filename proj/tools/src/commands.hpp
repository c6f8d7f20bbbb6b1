#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace loewner::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kRuntime = 3 };

inline constexpr int kManifestSchemaVersion = 1;

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name, e.g. {"simulate", "-N", "100"}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace loewner::cli
