#include "l0lms/systems.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "l0lms/rng.hpp"

namespace l0lms {
namespace {

// Salts for the canonical parameter-derived system seeds.
constexpr std::uint64_t kGeneralSalt = 0x67656e6572616c31ULL;
constexpr std::uint64_t kClusterSalt = 0x636c757374657233ULL;

double db_to_amplitude(double gain_db) { return std::pow(10.0, gain_db / 20.0); }

}  // namespace

const char* system_kind_name(SystemKind k) {
    return k == SystemKind::general ? "general" : "cluster";
}

double ImpulseResponse::energy() const {
    double s = 0.0;
    for (double v : h) s += v * v;
    return s;
}

ImpulseResponse gen_general_sparse(std::size_t l, std::size_t n_large, double small_var,
                                   std::uint64_t seed) {
    if (l == 0) throw std::invalid_argument("l must be >= 1");
    if (n_large == 0) throw std::invalid_argument("n_large must be >= 1");
    if (n_large > l) throw std::invalid_argument("n_large must not exceed l");
    if (small_var < 0.0) throw std::invalid_argument("small_var must be >= 0");

    auto rng = make_rng(seed);

    // Positions: partial Fisher-Yates over [0, l).
    std::vector<std::size_t> idx(l);
    for (std::size_t i = 0; i < l; ++i) idx[i] = i;
    for (std::size_t i = 0; i < n_large; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, l - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    std::vector<std::size_t> large(idx.begin(), idx.begin() + n_large);
    std::sort(large.begin(), large.end());

    ImpulseResponse ir;
    ir.h.assign(l, 0.0);
    ir.large_idx = large;
    ir.meta = {SystemKind::general, seed, n_large, small_var, 0, 0, 0.0};

    std::normal_distribution<double> unit(0.0, 1.0);
    for (std::size_t p : large) ir.h[p] = unit(rng);

    if (small_var > 0.0) {
        std::normal_distribution<double> small(0.0, std::sqrt(small_var));
        std::size_t next_large = 0;
        for (std::size_t p = 0; p < l; ++p) {
            if (next_large < large.size() && large[next_large] == p) {
                ++next_large;
                continue;
            }
            ir.h[p] = small(rng);
        }
    }
    return ir;
}

ImpulseResponse gen_cluster_sparse(std::size_t l, std::size_t delay, std::size_t span,
                                   double gain_db, std::uint64_t seed) {
    if (l == 0) throw std::invalid_argument("l must be >= 1");
    if (span == 0) throw std::invalid_argument("span must be >= 1");
    if (delay + span > l) throw std::invalid_argument("delay + span must not exceed l");

    const double tau = static_cast<double>(span) / 4.0;
    const double g = db_to_amplitude(gain_db);

    ImpulseResponse ir;
    ir.h.assign(l, 0.0);
    ir.large_idx.resize(span);
    ir.meta = {SystemKind::cluster, seed, 0, 0.0, delay, span, gain_db};

    auto rng = make_rng(seed);
    std::normal_distribution<double> unit(0.0, 1.0);
    for (std::size_t k = 0; k < span; ++k) {
        ir.large_idx[k] = delay + k;
        ir.h[delay + k] = g * std::exp(-static_cast<double>(k) / tau) * unit(rng);
    }
    return ir;
}

ImpulseResponse apply_change(const ImpulseResponse& ir, const ChangeEvent& ev) {
    const std::size_t l = ir.length();

    // Active span: the generator's cluster window when known, otherwise the
    // tightest window covering all nonzero coefficients.
    std::size_t begin = 0, span = 0;
    if (ir.meta.kind == SystemKind::cluster && ir.meta.span > 0) {
        begin = ir.meta.delay;
        span = ir.meta.span;
    } else {
        std::size_t first = l, last = 0;
        for (std::size_t i = 0; i < l; ++i) {
            if (ir.h[i] != 0.0) {
                first = std::min(first, i);
                last = i;
            }
        }
        if (first == l) {
            begin = 0;
            span = 0;
        } else {
            begin = first;
            span = last - first + 1;
        }
    }
    if (ev.new_delay + span > l)
        throw std::invalid_argument("relocated cluster would exceed the system length");

    const double scale = db_to_amplitude(ev.gain_db);

    ImpulseResponse out;
    out.h.assign(l, 0.0);
    for (std::size_t k = 0; k < span; ++k) out.h[ev.new_delay + k] = scale * ir.h[begin + k];

    const std::ptrdiff_t shift =
        static_cast<std::ptrdiff_t>(ev.new_delay) - static_cast<std::ptrdiff_t>(begin);
    out.large_idx.reserve(ir.large_idx.size());
    for (std::size_t p : ir.large_idx)
        out.large_idx.push_back(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(p) + shift));

    out.meta = ir.meta;
    out.meta.delay = ev.new_delay;
    out.meta.gain_db += ev.gain_db;
    return out;
}

void write_csv(const ImpulseResponse& ir, std::ostream& os) {
    os << "index,value\n";
    char buf[64];
    for (std::size_t i = 0; i < ir.h.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i, ir.h[i]);
        os << buf;
    }
}

std::uint64_t general_system_seed(std::size_t l, std::size_t n_large, double small_var) {
    std::uint64_t s = mix_seed(kGeneralSalt, l);
    s = mix_seed(s, n_large);
    s = mix_seed(s, std::bit_cast<std::uint64_t>(small_var));
    return s;
}

std::uint64_t cluster_system_seed(std::size_t l, std::size_t delay, std::size_t span) {
    std::uint64_t s = mix_seed(kClusterSalt, l);
    s = mix_seed(s, delay);
    s = mix_seed(s, span);
    return s;
}

}  // namespace l0lms
