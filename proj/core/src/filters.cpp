#include "l0lms/filters.hpp"

#include <algorithm>
#include <cmath>

namespace l0lms {

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::lms: return "lms";
        case Variant::nlms: return "nlms";
        case Variant::l0lms: return "l0lms";
        case Variant::l0nlms: return "l0nlms";
    }
    return "?";
}

Variant variant_from_name(const std::string& name) {
    if (name == "lms") return Variant::lms;
    if (name == "nlms") return Variant::nlms;
    if (name == "l0lms") return Variant::l0lms;
    if (name == "l0nlms") return Variant::l0nlms;
    throw std::invalid_argument("unknown variant '" + name + "'");
}

void AlgorithmConfig::validate() const {
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw std::invalid_argument("mu must be > 0");
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("kappa must be >= 0");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("beta must be > 0");
    if (q < 1)
        throw std::invalid_argument("q must be >= 1");
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw std::invalid_argument("delta must be > 0");
}

DivergenceError::DivergenceError(std::uint64_t iteration)
    : std::runtime_error("filter diverged at iteration " + std::to_string(iteration)),
      iteration_(iteration) {}

double compute_error(const FilterState& state, const InputTap& tap) {
    if (tap.x.size() != state.w.size())
        throw std::invalid_argument("regressor length does not match filter length");
    double y = 0.0;
    for (std::size_t i = 0; i < state.w.size(); ++i) y += state.w[i] * tap.x[i];
    return tap.d - y;
}

double sgn(double x) {
    if (x > 0.0) return 1.0;
    if (x < 0.0) return -1.0;
    return 0.0;
}

double attractor_exact(double x, double beta) {
    return -beta * sgn(x) * std::exp(-beta * std::abs(x));
}

double attractor_taylor(double x, double beta) {
    return -beta * std::max(0.0, 1.0 - beta * std::abs(x)) * sgn(x);
}

std::vector<std::size_t> update_indices(std::uint64_t n, std::size_t q, std::size_t l) {
    if (q == 0) throw std::invalid_argument("q must be >= 1");
    if (q > l) throw std::invalid_argument("q must not exceed the filter length");
    std::vector<std::size_t> out;
    out.reserve((l + q - 1) / q);
    for (std::size_t j = static_cast<std::size_t>(n % q); j < l; j += q) out.push_back(j);
    return out;
}

double step(FilterState& state, const InputTap& tap, const AlgorithmConfig& cfg) {
    const std::size_t len = state.w.size();
    if (tap.x.size() != len)
        throw std::invalid_argument("regressor length does not match filter length");

    double y = 0.0;
    double xx = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        y += state.w[i] * tap.x[i];
        xx += tap.x[i] * tap.x[i];
    }
    const double e = tap.d - y;

    const bool attracting = cfg.variant == Variant::l0lms || cfg.variant == Variant::l0nlms;
    const bool normalized = cfg.variant == Variant::nlms || cfg.variant == Variant::l0nlms;

    if (attracting) {
        // Table-style order: cache refresh from pre-update coefficients,
        // one residue class per iteration.
        if (cfg.q > len) throw std::invalid_argument("q must not exceed the filter length");
        for (std::size_t j = static_cast<std::size_t>(state.n % cfg.q); j < len; j += cfg.q)
            state.f_cache[j] = attractor_taylor(state.w[j], cfg.beta);
    }

    // Shared update kernel for all variants: with k == 0 the attraction term
    // vanishes and the trajectory coincides with plain (N)LMS.
    const double g = normalized ? cfg.mu * e / (cfg.delta + xx) : cfg.mu * e;
    const double k = attracting ? cfg.kappa : 0.0;
    for (std::size_t i = 0; i < len; ++i)
        state.w[i] += g * tap.x[i] + k * state.f_cache[i];

    for (std::size_t i = 0; i < len; ++i)
        if (!std::isfinite(state.w[i])) throw DivergenceError(state.n);

    ++state.n;
    return e;
}

}  // namespace l0lms
