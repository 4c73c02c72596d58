#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "l0lms/config.hpp"
#include "l0lms/sim.hpp"

namespace l0lms {

/// One command-line invocation: exactly one of preset / config_path.
struct RunRequest {
    std::optional<PresetId> preset;
    std::optional<std::filesystem::path> config_path;
    std::filesystem::path output_dir = ".";
    std::optional<std::size_t> runs_override;
    std::uint64_t seed = 0;
    bool linear = false;
};

// Execute the request: run every configuration, write
// <name>_curves.csv, summary.csv and <name>_meta.txt into output_dir.
// Returns 0 on success, nonzero after printing a diagnostic to stderr.
int run(const RunRequest& req);

}  // namespace l0lms
