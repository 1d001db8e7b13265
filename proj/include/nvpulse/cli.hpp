#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace nvpulse {

struct RunOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;  // overrides the config "seed" entry
    int threads = 1;
};

// Output file name -> contents. Commands compute everything before anything is written.
using OutputFiles = std::map<std::string, std::string>;

// Config with relative paths resolved, the register inlined and the seed applied.
nlohmann::json resolve_config(const RunOptions& opts);

OutputFiles cmd_synthesize(const RunOptions& opts);
OutputFiles cmd_refine(const RunOptions& opts);
OutputFiles cmd_simulate(const RunOptions& opts);
OutputFiles cmd_survey_misalignment(const RunOptions& opts);

void write_outputs(const std::string& out_dir, const OutputFiles& files);

// Runs a subcommand, writes its outputs and returns the process exit code (0 ok, 1 config error, 2 solver failure).
int run_subcommand(const std::string& name, const RunOptions& opts, std::string& message);

}  // namespace nvpulse
