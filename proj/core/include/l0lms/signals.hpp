#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "l0lms/systems.hpp"

namespace l0lms {

enum class SignalKind { white, ar1 };

const char* signal_kind_name(SignalKind k);

/// Excitation description: white Gaussian noise, optionally AR(1)-colored,
/// optionally rescaled to unit sample variance after generation.
struct SignalSpec {
    SignalKind kind = SignalKind::white;
    double variance = 1.0;  // driving-noise variance
    double ar_coeff = 0.0;  // used iff kind == ar1
    bool normalize = false;

    void validate() const;

    bool operator==(const SignalSpec&) const = default;
};

// i.i.d. Gaussian samples, mean 0, the given variance. Deterministic in seed.
std::vector<double> gen_white(std::size_t n, double variance, std::uint64_t seed);

// x(0) = u(0); x(n) = a*x(n-1) + u(n). Requires |a| < 1.
std::vector<double> color_ar1(std::span<const double> u, double a);

// Scale x by 1/sqrt(sample variance) so the result has unit sample variance
// (population convention, mean removed for the estimate only). Throws on
// zero-power input.
std::vector<double> normalize_power(std::span<const double> x);

// Realize a SignalSpec: generate, color, normalize as requested.
std::vector<double> make_excitation(const SignalSpec& spec, std::size_t n, std::uint64_t seed);

// d(n) = sum_k h[k]*x(n-k) + v(n) with zero-padded history and white Gaussian
// observation noise of the given variance (none for noise_var == 0).
std::vector<double> synth_desired(std::span<const double> x, const ImpulseResponse& h,
                                  double noise_var, std::uint64_t seed);

}  // namespace l0lms
