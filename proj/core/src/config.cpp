#include "l0lms/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>

namespace l0lms {

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

using Section = std::map<std::string, Entry>;

struct Document {
    Section system;
    Section signal;
    Section run;
    std::vector<std::pair<std::string, Section>> algorithms;  // label -> keys
};

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

const std::vector<std::string> kSystemKeys = {"L", "system.kind", "system.n_large",
                                              "system.small_var", "system.delay", "system.span"};
const std::vector<std::string> kSignalKeys = {"signal.kind", "signal.variance",
                                              "signal.ar_coeff", "signal.normalize"};
const std::vector<std::string> kRunKeys = {"noise_var", "iterations", "runs",
                                           "change.at", "change.delay", "change.gain_db"};
const std::vector<std::string> kAlgorithmKeys = {"variant", "mu", "kappa", "beta", "q", "delta"};

bool known_key(const std::vector<std::string>& keys, const std::string& k) {
    for (const auto& key : keys)
        if (key == k) return true;
    return false;
}

Document split_sections(const std::string& text) {
    Document doc;
    Section* current = nullptr;
    const std::vector<std::string>* current_keys = nullptr;
    std::string section_name;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (name == "system") {
                current = &doc.system;
                current_keys = &kSystemKeys;
            } else if (name == "signal") {
                current = &doc.signal;
                current_keys = &kSignalKeys;
            } else if (name == "run") {
                current = &doc.run;
                current_keys = &kRunKeys;
            } else if (name.rfind("algorithm.", 0) == 0) {
                const std::string label = name.substr(10);
                if (label.empty()) throw ParseError(line_no, "algorithm section needs a label");
                for (const auto& [existing, _] : doc.algorithms)
                    if (existing == label)
                        throw ParseError(line_no, "duplicate algorithm label '" + label + "'");
                doc.algorithms.emplace_back(label, Section{});
                current = &doc.algorithms.back().second;
                current_keys = &kAlgorithmKeys;
            } else {
                throw ParseError(line_no, "unknown section [" + name + "]");
            }
            section_name = name;
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, "expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(line_no, "empty key");
        if (value.empty()) throw ParseError(line_no, "empty value for key '" + key + "'");
        if (current == nullptr)
            throw ParseError(line_no, "key '" + key + "' outside of any section");
        if (!known_key(*current_keys, key))
            throw ParseError(line_no, "unknown key '" + key + "' in section [" + section_name + "]");
        if (current->count(key))
            throw ParseError(line_no, "duplicate key '" + key + "'");
        (*current)[key] = Entry{value, line_no};
    }
    return doc;
}

double parse_real(const Entry& e, const std::string& key) {
    const char* begin = e.value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + e.value.size() || !std::isfinite(v))
        throw ParseError(e.line, "value '" + e.value + "' for key '" + key + "' is not a number");
    return v;
}

std::uint64_t parse_uint(const Entry& e, const std::string& key) {
    const std::string& s = e.value;
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(e.line,
                         "value '" + s + "' for key '" + key + "' is not a nonnegative integer");
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (errno != 0)
        throw ParseError(e.line, "value '" + s + "' for key '" + key + "' is out of range");
    return static_cast<std::uint64_t>(v);
}

bool parse_bool(const Entry& e, const std::string& key) {
    if (e.value == "true") return true;
    if (e.value == "false") return false;
    throw ParseError(e.line, "value '" + e.value + "' for key '" + key + "' must be true or false");
}

class SectionReader {
public:
    SectionReader(const Section& section, std::string name)
        : section_(section), name_(std::move(name)) {}

    bool has(const std::string& key) const { return section_.count(key) != 0; }
    int line_of(const std::string& key) const { return section_.at(key).line; }

    double real(const std::string& key) const { return parse_real(section_.at(key), key); }
    std::uint64_t uint(const std::string& key) const { return parse_uint(section_.at(key), key); }
    bool boolean(const std::string& key) const { return parse_bool(section_.at(key), key); }
    const std::string& text(const std::string& key) const { return section_.at(key).value; }

    double real_or(const std::string& key, double dflt) const {
        return has(key) ? real(key) : dflt;
    }
    std::uint64_t uint_or(const std::string& key, std::uint64_t dflt) const {
        return has(key) ? uint(key) : dflt;
    }
    bool bool_or(const std::string& key, bool dflt) const {
        return has(key) ? boolean(key) : dflt;
    }

    const Entry& require(const std::string& key) const {
        auto it = section_.find(key);
        if (it == section_.end())
            throw ParseError(0, "missing required key '" + key + "' in section [" + name_ + "]");
        return it->second;
    }

private:
    const Section& section_;
    std::string name_;
};

[[noreturn]] void constraint_error(const SectionReader& r, const std::string& key,
                                   const std::string& constraint) {
    throw ParseError(r.line_of(key), "key '" + key + "' violates: " + constraint);
}

ImpulseResponse build_system(const SectionReader& sys) {
    sys.require("L");
    const std::uint64_t l = sys.uint("L");
    if (l < 1) constraint_error(sys, "L", "L must be >= 1");

    const std::string kind = sys.has("system.kind") ? sys.text("system.kind") : "general";
    if (kind == "general") {
        for (const char* k : {"system.delay", "system.span"})
            if (sys.has(k))
                constraint_error(sys, k, std::string(k) + " only applies to system.kind=cluster");
        const std::uint64_t n_large = sys.uint_or("system.n_large", 1);
        const double small_var = sys.real_or("system.small_var", 0.0);
        if (n_large < 1 || n_large > l)
            constraint_error(sys, sys.has("system.n_large") ? "system.n_large" : "L",
                             "system.n_large must be in [1, L]");
        if (small_var < 0.0)
            constraint_error(sys, "system.small_var", "system.small_var must be >= 0");
        return gen_general_sparse(l, n_large, small_var,
                                  general_system_seed(l, n_large, small_var));
    }
    if (kind == "cluster") {
        for (const char* k : {"system.n_large", "system.small_var"})
            if (sys.has(k))
                constraint_error(sys, k, std::string(k) + " only applies to system.kind=general");
        const std::uint64_t delay = sys.uint_or("system.delay", 0);
        sys.require("system.span");
        const std::uint64_t span = sys.uint("system.span");
        if (span < 1) constraint_error(sys, "system.span", "system.span must be >= 1");
        if (delay + span > l)
            constraint_error(sys, "system.span", "system.delay + system.span must not exceed L");
        return gen_cluster_sparse(l, delay, span, 0.0, cluster_system_seed(l, delay, span));
    }
    constraint_error(sys, "system.kind", "system.kind must be general or cluster");
}

SignalSpec build_signal(const SectionReader& sig) {
    SignalSpec spec;
    const std::string kind = sig.has("signal.kind") ? sig.text("signal.kind") : "white";
    if (kind == "white")
        spec.kind = SignalKind::white;
    else if (kind == "ar1")
        spec.kind = SignalKind::ar1;
    else
        constraint_error(sig, "signal.kind", "signal.kind must be white or ar1");

    spec.variance = sig.real_or("signal.variance", 1.0);
    if (!(spec.variance > 0.0))
        constraint_error(sig, "signal.variance", "signal.variance must be > 0");

    if (spec.kind == SignalKind::ar1) {
        sig.require("signal.ar_coeff");
        spec.ar_coeff = sig.real("signal.ar_coeff");
        if (!(std::abs(spec.ar_coeff) < 1.0))
            constraint_error(sig, "signal.ar_coeff", "signal.ar_coeff must satisfy |a| < 1");
    } else if (sig.has("signal.ar_coeff")) {
        constraint_error(sig, "signal.ar_coeff", "signal.ar_coeff only applies to signal.kind=ar1");
    }
    spec.normalize = sig.bool_or("signal.normalize", false);
    return spec;
}

AlgorithmConfig build_algorithm(const SectionReader& alg, std::size_t l) {
    AlgorithmConfig cfg;
    cfg.variant = [&] {
        const std::string& name = alg.require("variant").value;
        try {
            return variant_from_name(name);
        } catch (const std::invalid_argument& ex) {
            throw ParseError(alg.line_of("variant"), ex.what());
        }
    }();
    alg.require("mu");
    cfg.mu = alg.real("mu");
    if (!(cfg.mu > 0.0)) constraint_error(alg, "mu", "mu must be > 0");
    cfg.kappa = alg.real_or("kappa", 0.0);
    if (cfg.kappa < 0.0) constraint_error(alg, "kappa", "kappa must be >= 0");
    cfg.beta = alg.real_or("beta", 5.0);
    if (!(cfg.beta > 0.0)) constraint_error(alg, "beta", "beta must be > 0");
    cfg.q = alg.uint_or("q", 1);
    if (cfg.q < 1) constraint_error(alg, "q", "q must be >= 1");
    if (cfg.q > l) constraint_error(alg, "q", "q must not exceed L");
    cfg.delta = alg.real_or("delta", 1e-5);
    if (!(cfg.delta > 0.0)) constraint_error(alg, "delta", "delta must be > 0");
    return cfg;
}

}  // namespace

std::vector<LabeledConfig> parse_config(const std::string& text) {
    const Document doc = split_sections(text);
    if (doc.algorithms.empty())
        throw ParseError(0, "configuration needs at least one [algorithm.<label>] section");

    const SectionReader sys(doc.system, "system");
    const SectionReader sig(doc.signal, "signal");
    const SectionReader run(doc.run, "run");

    TrialConfig base;
    base.system = build_system(sys);
    base.signal = build_signal(sig);

    base.noise_var = run.real_or("noise_var", 0.0);
    if (base.noise_var < 0.0) constraint_error(run, "noise_var", "noise_var must be >= 0");
    run.require("iterations");
    base.iterations = static_cast<std::size_t>(run.uint("iterations"));
    if (base.iterations < 1) constraint_error(run, "iterations", "iterations must be >= 1");
    const std::size_t runs = static_cast<std::size_t>(run.uint_or("runs", 1));
    if (runs < 1) constraint_error(run, "runs", "runs must be >= 1");

    if (run.has("change.at") || run.has("change.delay") || run.has("change.gain_db")) {
        ChangeEvent ev;
        run.require("change.at");
        ev.at_iteration = run.uint("change.at");
        if (ev.at_iteration < 1) constraint_error(run, "change.at", "change.at must be >= 1");
        run.require("change.delay");
        ev.new_delay = static_cast<std::size_t>(run.uint("change.delay"));
        ev.gain_db = run.real_or("change.gain_db", 0.0);
        try {
            apply_change(base.system, ev);
        } catch (const std::invalid_argument& ex) {
            constraint_error(run, "change.delay", ex.what());
        }
        base.change = ev;
    }

    std::vector<LabeledConfig> out;
    out.reserve(doc.algorithms.size());
    for (const auto& [label, section] : doc.algorithms) {
        const SectionReader alg(section, "algorithm." + label);
        LabeledConfig entry{label, base, runs};
        entry.config.algo = build_algorithm(alg, base.system.length());
        out.push_back(std::move(entry));
    }
    return out;
}

namespace {

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string emit_config(const std::vector<LabeledConfig>& configs) {
    if (configs.empty()) throw std::invalid_argument("nothing to emit");
    const TrialConfig& base = configs.front().config;
    for (const auto& entry : configs) {
        const TrialConfig& c = entry.config;
        if (c.system != base.system || c.signal != base.signal ||
            c.noise_var != base.noise_var || c.iterations != base.iterations ||
            c.change != base.change || entry.runs != configs.front().runs)
            throw std::invalid_argument(
                "emit_config requires shared system, signal and run settings");
    }

    std::ostringstream os;
    const SystemMeta& m = base.system.meta;
    os << "[system]\n";
    os << "L = " << base.system.length() << "\n";
    os << "system.kind = " << system_kind_name(m.kind) << "\n";
    if (m.kind == SystemKind::general) {
        os << "system.n_large = " << m.n_large << "\n";
        os << "system.small_var = " << fmt_real(m.small_var) << "\n";
    } else {
        os << "system.delay = " << m.delay << "\n";
        os << "system.span = " << m.span << "\n";
    }

    os << "\n[signal]\n";
    os << "signal.kind = " << signal_kind_name(base.signal.kind) << "\n";
    os << "signal.variance = " << fmt_real(base.signal.variance) << "\n";
    if (base.signal.kind == SignalKind::ar1)
        os << "signal.ar_coeff = " << fmt_real(base.signal.ar_coeff) << "\n";
    os << "signal.normalize = " << (base.signal.normalize ? "true" : "false") << "\n";

    os << "\n[run]\n";
    os << "noise_var = " << fmt_real(base.noise_var) << "\n";
    os << "iterations = " << base.iterations << "\n";
    os << "runs = " << configs.front().runs << "\n";
    if (base.change) {
        os << "change.at = " << base.change->at_iteration << "\n";
        os << "change.delay = " << base.change->new_delay << "\n";
        os << "change.gain_db = " << fmt_real(base.change->gain_db) << "\n";
    }

    for (const auto& entry : configs) {
        const AlgorithmConfig& a = entry.config.algo;
        os << "\n[algorithm." << entry.label << "]\n";
        os << "variant = " << variant_name(a.variant) << "\n";
        os << "mu = " << fmt_real(a.mu) << "\n";
        os << "kappa = " << fmt_real(a.kappa) << "\n";
        os << "beta = " << fmt_real(a.beta) << "\n";
        os << "q = " << a.q << "\n";
        os << "delta = " << fmt_real(a.delta) << "\n";
    }
    return os.str();
}

}  // namespace l0lms
