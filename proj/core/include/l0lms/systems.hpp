#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace l0lms {

enum class SystemKind { general, cluster };

const char* system_kind_name(SystemKind k);

/// Generator descriptor kept with each impulse response so runs can be
/// reproduced and re-emitted. Fields not used by a kind stay at their
/// defaults.
struct SystemMeta {
    SystemKind kind = SystemKind::general;
    std::uint64_t seed = 0;
    std::size_t n_large = 0;   // general
    double small_var = 0.0;    // general
    std::size_t delay = 0;     // cluster
    std::size_t span = 0;      // cluster
    double gain_db = 0.0;      // cluster

    bool operator==(const SystemMeta&) const = default;
};

/// Ground-truth unknown system: coefficients plus the indices flagged large.
struct ImpulseResponse {
    std::vector<double> h;
    std::vector<std::size_t> large_idx;  // sorted
    SystemMeta meta;

    std::size_t length() const { return h.size(); }
    double energy() const;  // squared l2 norm

    bool operator==(const ImpulseResponse&) const = default;
};

/// A time-varying event: at `at_iteration` the active cluster moves to
/// `new_delay` and the whole response is scaled by `gain_db`.
struct ChangeEvent {
    std::uint64_t at_iteration = 1;
    std::size_t new_delay = 0;
    double gain_db = 0.0;

    bool operator==(const ChangeEvent&) const = default;
};

// A general sparse system: n_large positions drawn uniformly without
// replacement carry standard-normal values; the rest are Gaussian with
// variance small_var (exact zeros for small_var == 0). Deterministic in seed.
ImpulseResponse gen_general_sparse(std::size_t l, std::size_t n_large, double small_var,
                                   std::uint64_t seed);

// A single-cluster sparse system: zero outside [delay, delay+span); inside,
// a decaying-envelope Gaussian burst h[delay+k] = g * exp(-k/tau) * u_k with
// tau = span/4 and g = 10^(gain_db/20). Deterministic in seed.
ImpulseResponse gen_cluster_sparse(std::size_t l, std::size_t delay, std::size_t span,
                                   double gain_db, std::uint64_t seed);

// Relocate the active span to ev.new_delay and scale by 10^(ev.gain_db/20).
// Returns a new response; the input is unchanged.
ImpulseResponse apply_change(const ImpulseResponse& ir, const ChangeEvent& ev);

// Two-column "index,value" CSV for inspection.
void write_csv(const ImpulseResponse& ir, std::ostream& os);

// Canonical seeds for systems materialized from configuration parameters.
// Presets and parsed config files share these so that identical parameters
// always describe the identical drawn system.
std::uint64_t general_system_seed(std::size_t l, std::size_t n_large, double small_var);
std::uint64_t cluster_system_seed(std::size_t l, std::size_t delay, std::size_t span);

}  // namespace l0lms
