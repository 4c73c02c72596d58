#include "l0lms/signals.hpp"

#include <cmath>
#include <stdexcept>

#include "l0lms/rng.hpp"

namespace l0lms {

const char* signal_kind_name(SignalKind k) {
    return k == SignalKind::white ? "white" : "ar1";
}

void SignalSpec::validate() const {
    if (!(variance > 0.0) || !std::isfinite(variance))
        throw std::invalid_argument("signal.variance must be > 0");
    if (kind == SignalKind::ar1 && !(std::abs(ar_coeff) < 1.0))
        throw std::invalid_argument("signal.ar_coeff must satisfy |a| < 1");
}

std::vector<double> gen_white(std::size_t n, double variance, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("n must be >= 1");
    if (!(variance > 0.0)) throw std::invalid_argument("variance must be > 0");
    auto rng = make_rng(seed);
    std::normal_distribution<double> dist(0.0, std::sqrt(variance));
    std::vector<double> out(n);
    for (double& v : out) v = dist(rng);
    return out;
}

std::vector<double> color_ar1(std::span<const double> u, double a) {
    if (!(std::abs(a) < 1.0)) throw std::invalid_argument("AR coefficient must satisfy |a| < 1");
    std::vector<double> x(u.size());
    if (u.empty()) return x;
    x[0] = u[0];
    for (std::size_t n = 1; n < u.size(); ++n) x[n] = a * x[n - 1] + u[n];
    return x;
}

std::vector<double> normalize_power(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("cannot normalize an empty sequence");
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(x.size());
    if (!(var > 0.0)) throw std::invalid_argument("cannot normalize a zero-power sequence");
    const double scale = 1.0 / std::sqrt(var);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = scale * x[i];
    return out;
}

std::vector<double> make_excitation(const SignalSpec& spec, std::size_t n, std::uint64_t seed) {
    spec.validate();
    std::vector<double> x = gen_white(n, spec.variance, seed);
    if (spec.kind == SignalKind::ar1) x = color_ar1(x, spec.ar_coeff);
    if (spec.normalize) x = normalize_power(x);
    return x;
}

std::vector<double> synth_desired(std::span<const double> x, const ImpulseResponse& h,
                                  double noise_var, std::uint64_t seed) {
    if (noise_var < 0.0) throw std::invalid_argument("noise_var must be >= 0");
    const std::size_t n = x.size();
    const std::size_t l = h.length();
    std::vector<double> d(n, 0.0);
    if (l > 0) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            const std::size_t kmax = std::min(l - 1, i);
            for (std::size_t k = 0; k <= kmax; ++k) acc += h.h[k] * x[i - k];
            d[i] = acc;
        }
    }
    if (noise_var > 0.0) {
        auto rng = make_rng(seed);
        std::normal_distribution<double> dist(0.0, std::sqrt(noise_var));
        for (double& v : d) v += dist(rng);
    }
    return d;
}

}  // namespace l0lms
