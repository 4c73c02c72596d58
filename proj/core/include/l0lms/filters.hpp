#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace l0lms {

enum class Variant { lms, nlms, l0lms, l0nlms };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

/// Parameters of one adaptive-filter update rule. kappa and beta are ignored
/// by lms/nlms; delta is ignored by lms/l0lms.
struct AlgorithmConfig {
    Variant variant = Variant::lms;
    double mu = 0.0;        // step size
    double kappa = 0.0;     // zero-attraction intensity (kappa = mu * gamma)
    double beta = 5.0;      // attractor shape, range of attraction is (-1/beta, 1/beta)
    std::size_t q = 1;      // sequential partial-update divisor
    double delta = 1e-5;    // normalization regularizer

    // Weight of the sparsity penalty in the underlying cost; derived, never stored.
    double gamma() const { return kappa / mu; }

    // Throws std::invalid_argument on any violated parameter constraint.
    void validate() const;

    bool operator==(const AlgorithmConfig&) const = default;
};

/// Adaptive filter state: coefficient vector, cached attractor values and the
/// iteration counter. Starts all-zero.
struct FilterState {
    std::vector<double> w;
    std::vector<double> f_cache;
    std::uint64_t n = 0;

    explicit FilterState(std::size_t length) : w(length, 0.0), f_cache(length, 0.0) {}

    std::size_t length() const { return w.size(); }
};

/// One input sample: the regressor (most-recent-first) and the desired sample.
struct InputTap {
    std::span<const double> x;
    double d = 0.0;
};

/// Thrown when an update produces a non-finite coefficient.
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(std::uint64_t iteration);
    std::uint64_t iteration() const { return iteration_; }

private:
    std::uint64_t iteration_;
};

// e = d - x^T w. Pure; throws std::invalid_argument on length mismatch.
double compute_error(const FilterState& state, const InputTap& tap);

// Component-wise sign: x/|x| for x != 0, else 0.
double sgn(double x);

// Exact attractor term -beta * sgn(x) * exp(-beta*|x|). Used as a
// cross-check oracle for attractor_taylor.
double attractor_exact(double x, double beta);

// First-order surrogate f_beta(x) = -beta * max(0, 1 - beta*|x|) * sgn(x):
// linear inside (-1/beta, 1/beta), zero at 0 and outside.
double attractor_taylor(double x, double beta);

// The residue class {j in [0, l) : j mod q == n mod q} refreshed at
// iteration n. Throws std::invalid_argument if q > l or q == 0.
std::vector<std::size_t> update_indices(std::uint64_t n, std::size_t q, std::size_t l);

// Advance the filter by one sample and return the a-priori error e.
// For the zero-attracting variants the cache entries in this iteration's
// residue class are refreshed from the pre-update coefficients before the
// coefficient update; the rest stay stale. Throws DivergenceError (carrying
// the iteration index) if any coefficient becomes non-finite.
double step(FilterState& state, const InputTap& tap, const AlgorithmConfig& cfg);

}  // namespace l0lms
