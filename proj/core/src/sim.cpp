#include "l0lms/sim.hpp"

#include <atomic>
#include <cstdio>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

#include "l0lms/rng.hpp"

namespace l0lms {

void TrialConfig::validate() const {
    algo.validate();
    signal.validate();
    if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    if (system.length() == 0) throw std::invalid_argument("system must not be empty");
    if (algo.q > system.length())
        throw std::invalid_argument("q must not exceed the filter length");
    if (noise_var < 0.0) throw std::invalid_argument("noise_var must be >= 0");
    if (change) {
        if (change->at_iteration < 1)
            throw std::invalid_argument("change.at must be >= 1");
        // Relocation feasibility is checked by apply_change.
    }
}

double msd(std::span<const double> w_est, std::span<const double> w_true) {
    if (w_est.size() != w_true.size())
        throw std::invalid_argument("msd operands must have equal length");
    double s = 0.0;
    for (std::size_t i = 0; i < w_est.size(); ++i) {
        const double d = w_est[i] - w_true[i];
        s += d * d;
    }
    return s;
}

double to_db(double linear) {
    if (linear == 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(linear);
}

std::vector<double> to_db(std::span<const double> linear) {
    std::vector<double> out(linear.size());
    for (std::size_t i = 0; i < linear.size(); ++i) out[i] = to_db(linear[i]);
    return out;
}

LearningCurve run_trial(const TrialConfig& cfg) {
    cfg.validate();
    const std::size_t len = cfg.system.length();
    const std::size_t n_iter = cfg.iterations;

    const std::vector<double> x = make_excitation(cfg.signal, n_iter, mix_seed(cfg.seed, 0));
    std::vector<double> noise;
    if (cfg.noise_var > 0.0) noise = gen_white(n_iter, cfg.noise_var, mix_seed(cfg.seed, 1));

    const ImpulseResponse* h_cur = &cfg.system;
    ImpulseResponse h_changed;
    if (cfg.change) h_changed = apply_change(cfg.system, *cfg.change);

    FilterState state(len);
    std::vector<double> reg(len, 0.0);
    LearningCurve curve;
    curve.msd.resize(n_iter);
    curve.runs = 1;

    for (std::size_t n = 0; n < n_iter; ++n) {
        if (cfg.change && n >= cfg.change->at_iteration) h_cur = &h_changed;

        for (std::size_t i = len - 1; i > 0; --i) reg[i] = reg[i - 1];
        reg[0] = x[n];

        double d = 0.0;
        for (std::size_t k = 0; k < len; ++k) d += h_cur->h[k] * reg[k];
        if (!noise.empty()) d += noise[n];

        curve.msd[n] = msd(state.w, h_cur->h);
        step(state, InputTap{reg, d}, cfg.algo);
    }
    return curve;
}

LearningCurve monte_carlo(const TrialConfig& cfg, std::size_t runs, std::uint64_t base_seed) {
    if (runs < 1) throw std::invalid_argument("runs must be >= 1");
    cfg.validate();

    std::vector<std::vector<double>> curves(runs);
    std::vector<std::exception_ptr> errors(runs);
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= runs) return;
            TrialConfig trial = cfg;
            trial.seed = mix_seed(base_seed, t);
            try {
                curves[t] = run_trial(trial).msd;
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };

    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t n_workers = std::min(runs, hw);
    if (n_workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    for (std::size_t t = 0; t < runs; ++t)
        if (errors[t]) std::rethrow_exception(errors[t]);

    LearningCurve out;
    out.runs = runs;
    out.msd.assign(cfg.iterations, 0.0);
    for (std::size_t t = 0; t < runs; ++t)
        for (std::size_t i = 0; i < cfg.iterations; ++i) out.msd[i] += curves[t][i];
    const double inv = 1.0 / static_cast<double>(runs);
    for (double& v : out.msd) v *= inv;
    return out;
}

SteadyStateStats steady_state(std::span<const double> msd_linear, std::size_t window,
                              double tol_db) {
    if (window < 1) throw std::invalid_argument("window must be >= 1");
    if (window >= msd_linear.size())
        throw std::invalid_argument("window must be smaller than the curve length");
    if (!(tol_db > 0.0)) throw std::invalid_argument("tol_db must be > 0");

    const std::vector<double> db = to_db(msd_linear);
    const std::size_t n = db.size();

    auto window_mean = [&](std::size_t last) {  // mean over [last-window+1, last]
        double s = 0.0;
        bool has_inf = false;
        for (std::size_t i = last + 1 - window; i <= last; ++i) {
            if (std::isinf(db[i]))
                has_inf = true;
            else
                s += db[i];
        }
        if (has_inf) return -std::numeric_limits<double>::infinity();
        return s / static_cast<double>(window);
    };

    SteadyStateStats stats;
    stats.window = window;
    stats.tol_db = tol_db;
    stats.level_db = window_mean(n - 1);

    // Running trailing-window mean with -inf entries counted, not summed.
    // A curve only counts as converged if the criterion holds at least one
    // full window before the end; a curve still descending into the final
    // window reports "not reached".
    double sum = 0.0;
    std::size_t inf_count = 0;
    const std::size_t last_candidate = n - 1 - window;
    for (std::size_t i = 0; i <= last_candidate; ++i) {
        if (std::isinf(db[i]))
            ++inf_count;
        else
            sum += db[i];
        if (i >= window) {
            const double drop = db[i - window];
            if (std::isinf(drop))
                --inf_count;
            else
                sum -= drop;
        }
        if (i + 1 >= window) {
            const double mean = inf_count > 0 ? -std::numeric_limits<double>::infinity()
                                              : sum / static_cast<double>(window);
            if (mean <= stats.level_db + tol_db) {
                stats.reach_iteration = i;
                break;
            }
        }
    }
    return stats;
}

SteadyStateStats steady_state(const LearningCurve& curve, std::size_t window, double tol_db) {
    return steady_state(std::span<const double>(curve.msd), window, tol_db);
}

std::vector<SteadyStateStats> steady_state_segments(const LearningCurve& curve,
                                                    std::optional<std::uint64_t> change_at,
                                                    std::size_t window, double tol_db) {
    std::span<const double> all(curve.msd);
    std::vector<SteadyStateStats> out;
    if (!change_at || *change_at >= curve.msd.size()) {
        out.push_back(steady_state(all, window, tol_db));
        return out;
    }
    const std::size_t at = static_cast<std::size_t>(*change_at);
    out.push_back(steady_state(all.subspan(0, at), window, tol_db));
    out.push_back(steady_state(all.subspan(at), window, tol_db));
    return out;
}

const char* preset_name(PresetId id) {
    switch (id) {
        case PresetId::exp1: return "exp1";
        case PresetId::exp2: return "exp2";
        case PresetId::exp3: return "exp3";
    }
    return "?";
}

PresetId preset_from_name(const std::string& name) {
    if (name == "exp1") return PresetId::exp1;
    if (name == "exp2") return PresetId::exp2;
    if (name == "exp3") return PresetId::exp3;
    throw std::invalid_argument("unknown preset '" + name + "'");
}

namespace {

std::vector<LabeledConfig> preset_exp1(const PresetOverrides& o) {
    constexpr std::size_t l = 500, delay = 100, span = 96;
    TrialConfig base;
    base.system = gen_cluster_sparse(l, delay, span, 0.0, cluster_system_seed(l, delay, span));
    base.change = ChangeEvent{o.change_at.value_or(30000), 300, -6.0};
    base.signal = SignalSpec{SignalKind::ar1, 1.0, 0.8, true};
    base.noise_var = 1e-3;
    base.iterations = o.iterations.value_or(60000);
    const std::size_t runs = o.runs.value_or(100);

    LabeledConfig nlms{"nlms", base, runs};
    nlms.config.algo = {Variant::nlms, 1.0, 0.0, 5.0, 1, 1e-5};
    LabeledConfig l0nlms{"l0nlms", base, runs};
    l0nlms.config.algo = {Variant::l0nlms, 1.0, 8e-6, 5.0, 4, 1e-5};
    return {nlms, l0nlms};
}

std::vector<LabeledConfig> preset_exp2(const PresetOverrides& o) {
    constexpr std::size_t l = 128, n_large = 8;
    TrialConfig base;
    base.system = gen_general_sparse(l, n_large, 0.0, general_system_seed(l, n_large, 0.0));
    base.signal = SignalSpec{SignalKind::white, 1.0, 0.0, false};
    base.noise_var = 1e-4;
    base.iterations = o.iterations.value_or(5000);
    const std::size_t runs = o.runs.value_or(100);

    std::vector<LabeledConfig> out;
    out.push_back({"lms", base, runs});
    out.back().config.algo = {Variant::lms, 1e-2, 0.0, 5.0, 1, 1e-5};
    for (double kappa : {2e-5, 8e-5}) {
        char label[32];
        std::snprintf(label, sizeof(label), "l0lms_k%g", kappa);
        out.push_back({label, base, runs});
        out.back().config.algo = {Variant::l0lms, 1e-2, kappa, 5.0, 4, 1e-5};
    }
    return out;
}

std::vector<LabeledConfig> preset_exp3(const PresetOverrides& o) {
    constexpr std::size_t l = 128;
    constexpr double small_var = 1e-4;
    const std::size_t lcns[] = {8, 16, 32, 64, 128};
    const double kappas[] = {8e-5, 5.5e-5, 4.5e-5, 3.5e-5, 1e-6};

    TrialConfig base;
    base.signal = SignalSpec{SignalKind::white, 1.0, 0.0, false};
    base.noise_var = 1e-3;
    base.iterations = o.iterations.value_or(10000);
    const std::size_t runs = o.runs.value_or(100);

    std::vector<LabeledConfig> out;
    for (std::size_t i = 0; i < 5; ++i) {
        char label[32];
        std::snprintf(label, sizeof(label), "l0lms_lcn%zu", lcns[i]);
        LabeledConfig entry{label, base, runs};
        entry.config.system =
            gen_general_sparse(l, lcns[i], small_var, general_system_seed(l, lcns[i], small_var));
        entry.config.algo = {Variant::l0lms, 6e-3, kappas[i], 5.0, 4, 1e-5};
        out.push_back(std::move(entry));
    }
    // LMS reference, run on the dense (LCN = 128) system.
    LabeledConfig lms{"lms", base, runs};
    lms.config.system = gen_general_sparse(l, 128, small_var, general_system_seed(l, 128, small_var));
    lms.config.algo = {Variant::lms, 6e-3, 0.0, 5.0, 1, 1e-5};
    out.push_back(std::move(lms));
    return out;
}

}  // namespace

std::vector<LabeledConfig> preset(PresetId id, const PresetOverrides& overrides) {
    switch (id) {
        case PresetId::exp1: return preset_exp1(overrides);
        case PresetId::exp2: return preset_exp2(overrides);
        case PresetId::exp3: return preset_exp3(overrides);
    }
    throw std::invalid_argument("unknown preset id");
}

}  // namespace l0lms
