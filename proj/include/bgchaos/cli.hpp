#pragma once

#include <cstdint>

#include "json.hpp"

namespace bgchaos::cli {

using Config = nlohmann::json;
using Report = nlohmann::ordered_json;

// Each command validates its config, runs the library, and returns the
// report body. The resolved config (with seed) is embedded by the caller.
Report cmd_cumulants(const Config& cfg);
Report cmd_bound(const Config& cfg);
Report cmd_stein(const Config& cfg);
Report cmd_converge(const Config& cfg);

// BGCHAOS_SEED if set, else a fixed default.
std::uint64_t default_seed();

// Full command-line entry point; returns the process exit status.
int run(int argc, char** argv);

}  // namespace bgchaos::cli
