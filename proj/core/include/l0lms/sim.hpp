#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "l0lms/filters.hpp"
#include "l0lms/signals.hpp"
#include "l0lms/systems.hpp"

namespace l0lms {

/// One simulation run: algorithm, ground truth, excitation and horizon.
/// The filter length always equals the system length.
struct TrialConfig {
    AlgorithmConfig algo;
    ImpulseResponse system;
    std::optional<ChangeEvent> change;
    SignalSpec signal;
    double noise_var = 0.0;
    std::size_t iterations = 0;
    std::uint64_t seed = 0;

    void validate() const;

    bool operator==(const TrialConfig&) const = default;
};

/// Per-iteration mean square deviation, linear scale. msd[n] is the
/// deviation of the coefficients entering iteration n, so msd[0] is the
/// energy of the unknown system (all-zero initialization).
struct LearningCurve {
    std::vector<double> msd;
    std::size_t runs = 1;
    std::string label;
};

/// Steady-state summary of one curve segment.
struct SteadyStateStats {
    double level_db = 0.0;
    std::optional<std::size_t> reach_iteration;  // empty when not reached
    std::size_t window = 0;
    double tol_db = 0.0;
};

inline constexpr std::size_t kSteadyWindow = 2000;
inline constexpr double kSteadyTolDb = 1.0;

// ||w_est - w_true||_2^2. Throws std::invalid_argument on length mismatch.
double msd(std::span<const double> w_est, std::span<const double> w_true);

// 10*log10(x); exact zeros map to -inf.
double to_db(double linear);
std::vector<double> to_db(std::span<const double> linear);

// One seeded trial. Excitation and observation noise use sub-streams 0 and 1
// of cfg.seed. When a change event is present the desired signal and the MSD
// reference switch to the changed system from at_iteration on.
LearningCurve run_trial(const TrialConfig& cfg);

// Ensemble average of `runs` trials with per-trial seeds mix_seed(base_seed,
// trial index). Trials run in parallel; aggregation is in trial-index order,
// so the result is identical to serial execution.
LearningCurve monte_carlo(const TrialConfig& cfg, std::size_t runs, std::uint64_t base_seed);

// level_db = mean dB-MSD over the final `window` entries; reach_iteration =
// first n whose trailing-window mean is within tol_db of that level.
SteadyStateStats steady_state(std::span<const double> msd_linear, std::size_t window,
                              double tol_db);
SteadyStateStats steady_state(const LearningCurve& curve, std::size_t window = kSteadyWindow,
                              double tol_db = kSteadyTolDb);

// Per-segment stats: one segment without a change event, two (pre/post,
// split at change_at) with one. reach_iteration is segment-relative.
std::vector<SteadyStateStats> steady_state_segments(const LearningCurve& curve,
                                                    std::optional<std::uint64_t> change_at,
                                                    std::size_t window = kSteadyWindow,
                                                    double tol_db = kSteadyTolDb);

enum class PresetId { exp1, exp2, exp3 };

const char* preset_name(PresetId id);
PresetId preset_from_name(const std::string& name);

struct PresetOverrides {
    std::optional<std::size_t> runs;
    std::optional<std::size_t> iterations;
    std::optional<std::uint64_t> change_at;
};

struct LabeledConfig {
    std::string label;
    TrialConfig config;
    std::size_t runs = 1;

    bool operator==(const LabeledConfig&) const = default;
};

// The three packaged experiments, fully populated.
std::vector<LabeledConfig> preset(PresetId id, const PresetOverrides& overrides = {});

}  // namespace l0lms
