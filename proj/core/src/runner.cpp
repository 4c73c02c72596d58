#include "l0lms/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "l0lms/filters.hpp"
#include "l0lms/rng.hpp"

namespace l0lms {
namespace {

std::string fmt_db(double v) {
    if (std::isinf(v) && v < 0) return "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string fmt_linear(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6e", v);
    return buf;
}

struct EntryResult {
    LabeledConfig entry;
    std::optional<LearningCurve> curve;           // empty on divergence
    std::optional<std::uint64_t> diverged_at;
};

void write_curves_csv(std::ostream& os, const std::vector<EntryResult>& results, bool linear) {
    std::vector<const EntryResult*> ok;
    for (const auto& r : results)
        if (r.curve) ok.push_back(&r);
    if (ok.empty()) return;

    os << "iteration";
    for (const auto* r : ok) os << "," << r->entry.label;
    os << "\n";
    const std::size_t n = ok.front()->curve->msd.size();
    for (std::size_t i = 0; i < n; ++i) {
        os << i;
        for (const auto* r : ok) {
            const double m = r->curve->msd[i];
            os << "," << (linear ? fmt_linear(m) : fmt_db(to_db(m)));
        }
        os << "\n";
    }
}

void write_summary_csv(std::ostream& os, const std::vector<EntryResult>& results,
                       std::uint64_t seed) {
    os << "label,level_db,reach_iteration,runs,seed\n";
    for (const auto& r : results) {
        if (!r.curve) {
            os << r.entry.label << ",diverged,diverged," << r.entry.runs << "," << seed << "\n";
            continue;
        }
        std::optional<std::uint64_t> change_at;
        if (r.entry.config.change && r.entry.config.change->at_iteration < r.curve->msd.size())
            change_at = r.entry.config.change->at_iteration;

        // Clamp the analysis window for runs shorter than the default.
        std::size_t shortest = r.curve->msd.size();
        if (change_at)
            shortest = std::min<std::size_t>(*change_at, r.curve->msd.size() -
                                                             static_cast<std::size_t>(*change_at));
        const std::size_t window =
            std::max<std::size_t>(1, std::min<std::size_t>(kSteadyWindow, shortest / 2));
        std::vector<SteadyStateStats> stats;
        try {
            stats = steady_state_segments(*r.curve, change_at, window);
        } catch (const std::invalid_argument&) {
            // Degenerate short run: report the final value, no convergence claim.
            SteadyStateStats st;
            st.level_db = to_db(r.curve->msd.back());
            st.window = window;
            st.tol_db = kSteadyTolDb;
            stats = {st};
            change_at.reset();
        }
        const bool split = stats.size() > 1;
        for (std::size_t s = 0; s < stats.size(); ++s) {
            std::string label = r.entry.label;
            if (split) label += s == 0 ? ":pre" : ":post";
            os << label << "," << fmt_db(stats[s].level_db) << ",";
            if (stats[s].reach_iteration) {
                // Report the absolute curve index.
                std::size_t reach = *stats[s].reach_iteration;
                if (s == 1) reach += static_cast<std::size_t>(*change_at);
                os << reach;
            } else {
                os << "not_reached";
            }
            os << "," << r.entry.runs << "," << seed << "\n";
        }
    }
}

void write_meta(std::ostream& os, const std::string& name,
                const std::vector<EntryResult>& results, const RunRequest& req) {
    os << "experiment: " << name << "\n";
    os << "seed: " << req.seed << "\n";
    os << "output: " << (req.linear ? "linear MSD" : "MSD in dB") << "\n";
    os << "msd definition: squared l2 norm of the coefficient deviation (sum, not per-tap mean)\n";
    os << "curve row n: deviation of the coefficients entering iteration n (row 0 = system energy)\n";
    os << "per-trial seeds: mix_seed(seed, trial index); excitation/noise substreams 0 and 1\n";
    os << "steady-state estimator: window " << kSteadyWindow << ", tolerance " << kSteadyTolDb
       << " dB\n";
    for (const auto& r : results) {
        const TrialConfig& c = r.entry.config;
        const AlgorithmConfig& a = c.algo;
        const SystemMeta& m = c.system.meta;
        os << "\n[" << r.entry.label << "]\n";
        os << "variant: " << variant_name(a.variant) << "\n";
        os << "mu: " << a.mu << "\n";
        os << "kappa: " << a.kappa << " (gamma = " << (a.mu > 0 ? a.kappa / a.mu : 0.0) << ")\n";
        os << "beta: " << a.beta << "\n";
        os << "q: " << a.q << "\n";
        os << "delta: " << a.delta << "\n";
        os << "L: " << c.system.length() << "\n";
        os << "system: " << system_kind_name(m.kind);
        if (m.kind == SystemKind::general)
            os << " (n_large " << m.n_large << ", small_var " << m.small_var << ")";
        else
            os << " (delay " << m.delay << ", span " << m.span << ", gain_db " << m.gain_db << ")";
        os << ", seed " << m.seed << ", energy " << c.system.energy() << "\n";
        os << "signal: " << signal_kind_name(c.signal.kind) << " (variance " << c.signal.variance;
        if (c.signal.kind == SignalKind::ar1) os << ", ar_coeff " << c.signal.ar_coeff;
        os << ", normalize " << (c.signal.normalize ? "true" : "false") << ")\n";
        os << "noise_var: " << c.noise_var << "\n";
        os << "iterations: " << c.iterations << "\n";
        os << "runs: " << r.entry.runs << "\n";
        if (c.change)
            os << "change: at " << c.change->at_iteration << ", delay " << c.change->new_delay
               << ", gain_db " << c.change->gain_db << "\n";
        if (r.diverged_at) os << "status: diverged at iteration " << *r.diverged_at << "\n";
    }
}

}  // namespace

int run(const RunRequest& req) {
    if (req.preset.has_value() == req.config_path.has_value()) {
        std::cerr << "error: exactly one of --preset and --config must be given\n";
        return 2;
    }

    std::vector<LabeledConfig> entries;
    std::string name;
    try {
        if (req.preset) {
            PresetOverrides o;
            o.runs = req.runs_override;
            entries = preset(*req.preset, o);
            name = preset_name(*req.preset);
        } else {
            std::ifstream in(*req.config_path);
            if (!in) {
                std::cerr << "error: cannot open " << req.config_path->string() << "\n";
                return 2;
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            entries = parse_config(buf.str());
            if (req.runs_override)
                for (auto& e : entries) e.runs = *req.runs_override;
            name = req.config_path->stem().string();
        }
    } catch (const ParseError& ex) {
        std::cerr << "error: " << req.config_path->string() << ": " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }

    std::error_code ec;
    std::filesystem::create_directories(req.output_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create " << req.output_dir.string() << ": " << ec.message()
                  << "\n";
        return 2;
    }

    std::vector<EntryResult> results;
    bool failed = false;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        EntryResult r{entries[i], std::nullopt, std::nullopt};
        try {
            LearningCurve curve = monte_carlo(entries[i].config, entries[i].runs, req.seed);
            curve.label = entries[i].label;
            r.curve = std::move(curve);
        } catch (const DivergenceError& ex) {
            r.diverged_at = ex.iteration();
            failed = true;
            std::cerr << "error: " << entries[i].label << " diverged at iteration "
                      << ex.iteration() << "\n";
        } catch (const std::exception& ex) {
            std::cerr << "error: " << entries[i].label << ": " << ex.what() << "\n";
            return 2;
        }
        results.push_back(std::move(r));
    }

    const auto curves_path = req.output_dir / (name + "_curves.csv");
    const auto summary_path = req.output_dir / "summary.csv";
    const auto meta_path = req.output_dir / (name + "_meta.txt");
    {
        std::ofstream os(curves_path);
        write_curves_csv(os, results, req.linear);
        if (!os) {
            std::cerr << "error: cannot write " << curves_path.string() << "\n";
            return 2;
        }
    }
    {
        std::ofstream os(summary_path);
        write_summary_csv(os, results, req.seed);
        if (!os) {
            std::cerr << "error: cannot write " << summary_path.string() << "\n";
            return 2;
        }
    }
    {
        std::ofstream os(meta_path);
        write_meta(os, name, results, req);
        if (!os) {
            std::cerr << "error: cannot write " << meta_path.string() << "\n";
            return 2;
        }
    }
    return failed ? 1 : 0;
}

}  // namespace l0lms
