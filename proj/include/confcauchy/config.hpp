#pragma once

#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "csv.hpp"

namespace confcauchy {

// Experiment configuration: a small INI-style document with [sections],
// key = value lines and '#' comments. Parsing collects *all* errors (with
// line/column) instead of stopping at the first one; a config either
// validates completely or is rejected with the full list.

struct config_error {
    int line = 0;
    int col = 1;
    std::string message;
};

enum class experiment_kind {
    derivative_check,
    simulate,
    solve,
    validate,
    table,
};

enum class operator_kind { gaussian, stable, independent_stable, fbm };

enum class initial_kind { gaussian, sine_mode, polynomial, indicator };

enum class solver_kind {
    mc_free,
    mc_killed,
    fourier,
    spectral,
    fd_direct,
    fd_substituted,
    closed_form,
};

struct experiment_config {
    experiment_kind kind = experiment_kind::solve;

    // [problem]
    std::vector<double> alphas{0.5};
    std::vector<double> ts{1.0};
    operator_kind op = operator_kind::gaussian;
    int dim = 1;
    double beta = 2.0;
    double scale_d = 1.0;
    double hurst = 0.25;
    std::vector<double> betas;
    std::vector<double> drift;
    std::vector<double> q_diag;
    bool interval = false;
    double length_l = 1.0;
    double start_x = 0.0; // 0 means "centre of the interval"
    initial_kind initial = initial_kind::gaussian;
    double sigma = 0.5;
    std::vector<double> center;
    int mode_n = 1;
    std::vector<double> coeffs;
    double lo = -1.0;
    double hi = 1.0;

    // [method]
    std::vector<solver_kind> solvers{solver_kind::fourier};
    int grid_n = 512;
    double grid_span = 40.0;
    int n_modes = 256;
    std::uint64_t n_paths = 100000;
    double dt = 1e-3;
    int n_steps = 4000;
    double safety = 0.9;
    bool has_seed = false;
    std::uint64_t seed = 0;
    double query_span = 8.0;
    int query_n = 17;
    int sim_paths = 1;
    int path_points = 101;
    double t_max = 1.0;
    int cases = 100;

    // [output]
    std::string prefix = "experiment";
    bool svg = false;
    double budget = 1e-3;
    double mc_sigma = 3.0;

    bool operator==(const experiment_config&) const = default;
};

struct config_parse_result {
    std::optional<experiment_config> config;
    std::vector<config_error> errors;

    bool ok() const { return config.has_value() && errors.empty(); }
};

namespace detail {

struct raw_entry {
    std::string value;
    int line;
    int col;
    mutable bool consumed = false;
};

struct raw_document {
    // section -> key -> entry ("" is the top level)
    std::map<std::string, std::map<std::string, raw_entry>> sections;
    std::vector<config_error> errors;
};

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline raw_document parse_raw(const std::string& text) {
    raw_document doc;
    doc.sections[""];
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string line = text.substr(
            pos, eol == std::string::npos ? std::string::npos : eol - pos);
        ++line_no;
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;

        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;

        if (stripped.front() == '[') {
            if (stripped.back() != ']' || stripped.size() < 3) {
                doc.errors.push_back(
                    {line_no, 1, "malformed section header"});
                continue;
            }
            section = trim(stripped.substr(1, stripped.size() - 2));
            doc.sections[section];
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            doc.errors.push_back(
                {line_no, 1, "expected 'key = value' or '[section]'"});
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            doc.errors.push_back({line_no, 1, "empty key"});
            continue;
        }
        const int key_col =
            static_cast<int>(line.find_first_not_of(" \t")) + 1;
        auto [it, inserted] = doc.sections[section].insert(
            {key, raw_entry{value, line_no, key_col}});
        if (!inserted)
            doc.errors.push_back(
                {line_no, key_col,
                 "duplicate key '" + key + "' (first defined at line " +
                     std::to_string(it->second.line) + ")"});
    }
    return doc;
}

class typed_reader {
public:
    typed_reader(const raw_document& doc, std::vector<config_error>& errors)
        : doc_(doc), errors_(errors) {}

    const raw_entry* find(const std::string& section,
                          const std::string& key) const {
        auto sit = doc_.sections.find(section);
        if (sit == doc_.sections.end()) return nullptr;
        auto kit = sit->second.find(key);
        if (kit == sit->second.end()) return nullptr;
        kit->second.consumed = true;
        return &kit->second;
    }

    bool parse_one_double(const std::string& text, double& out) const {
        const std::string t = trim(text);
        const char* begin = t.data();
        const char* end = begin + t.size();
        const auto res = std::from_chars(begin, end, out);
        return res.ec == std::errc() && res.ptr == end && !t.empty();
    }

    std::optional<double> get_double(const std::string& section,
                                     const std::string& key) {
        const raw_entry* e = find(section, key);
        if (!e) return std::nullopt;
        double v;
        if (!parse_one_double(e->value, v)) {
            errors_.push_back({e->line, e->col,
                               "key '" + key + "': expected a real number"});
            return std::nullopt;
        }
        return v;
    }

    std::optional<std::vector<double>> get_double_list(
        const std::string& section, const std::string& key) {
        const raw_entry* e = find(section, key);
        if (!e) return std::nullopt;
        std::vector<double> values;
        std::size_t start = 0;
        const std::string& s = e->value;
        while (start <= s.size()) {
            std::size_t comma = s.find(',', start);
            const std::string piece =
                s.substr(start, comma == std::string::npos
                                    ? std::string::npos
                                    : comma - start);
            double v;
            if (!parse_one_double(piece, v)) {
                errors_.push_back(
                    {e->line, e->col,
                     "key '" + key + "': expected a comma-separated list of "
                     "real numbers"});
                return std::nullopt;
            }
            values.push_back(v);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return values;
    }

    std::optional<long long> get_int(const std::string& section,
                                     const std::string& key) {
        const raw_entry* e = find(section, key);
        if (!e) return std::nullopt;
        const std::string t = trim(e->value);
        long long v;
        const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
        if (res.ec != std::errc() || res.ptr != t.data() + t.size() ||
            t.empty()) {
            errors_.push_back(
                {e->line, e->col, "key '" + key + "': expected an integer"});
            return std::nullopt;
        }
        return v;
    }

    std::optional<std::uint64_t> get_u64(const std::string& section,
                                         const std::string& key) {
        const raw_entry* e = find(section, key);
        if (!e) return std::nullopt;
        const std::string t = trim(e->value);
        std::uint64_t v;
        const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
        if (res.ec != std::errc() || res.ptr != t.data() + t.size() ||
            t.empty()) {
            errors_.push_back({e->line, e->col,
                               "key '" + key +
                                   "': expected a nonnegative integer"});
            return std::nullopt;
        }
        return v;
    }

    std::optional<bool> get_bool(const std::string& section,
                                 const std::string& key) {
        const raw_entry* e = find(section, key);
        if (!e) return std::nullopt;
        const std::string t = trim(e->value);
        if (t == "true") return true;
        if (t == "false") return false;
        errors_.push_back(
            {e->line, e->col, "key '" + key + "': expected true or false"});
        return std::nullopt;
    }

    std::optional<std::string> get_string(const std::string& section,
                                          const std::string& key) {
        const raw_entry* e = find(section, key);
        if (!e) return std::nullopt;
        return trim(e->value);
    }

    void error_at(const std::string& section, const std::string& key,
                  const std::string& message) {
        auto sit = doc_.sections.find(section);
        if (sit != doc_.sections.end()) {
            auto kit = sit->second.find(key);
            if (kit != sit->second.end()) {
                errors_.push_back(
                    {kit->second.line, kit->second.col, message});
                return;
            }
        }
        errors_.push_back({0, 1, message});
    }

    void flag_unconsumed() {
        static const std::set<std::string> known_sections{"", "problem",
                                                          "method", "output"};
        for (const auto& [section, entries] : doc_.sections) {
            const bool known = known_sections.count(section) > 0;
            for (const auto& [key, entry] : entries) {
                if (!known)
                    errors_.push_back({entry.line, entry.col,
                                       "unknown section '" + section + "'"});
                else if (!entry.consumed)
                    errors_.push_back({entry.line, entry.col,
                                       "unknown key '" + key +
                                           "' in section [" + section + "]"});
            }
        }
    }

private:
    const raw_document& doc_;
    std::vector<config_error>& errors_;
};

inline const char* kind_name(experiment_kind k) {
    switch (k) {
    case experiment_kind::derivative_check: return "derivative-check";
    case experiment_kind::simulate: return "simulate";
    case experiment_kind::solve: return "solve";
    case experiment_kind::validate: return "validate";
    case experiment_kind::table: return "table";
    }
    return "?";
}

inline const char* operator_name(operator_kind k) {
    switch (k) {
    case operator_kind::gaussian: return "gaussian";
    case operator_kind::stable: return "stable";
    case operator_kind::independent_stable: return "independent-stable";
    case operator_kind::fbm: return "fbm";
    }
    return "?";
}

inline const char* initial_name(initial_kind k) {
    switch (k) {
    case initial_kind::gaussian: return "gaussian";
    case initial_kind::sine_mode: return "sine-mode";
    case initial_kind::polynomial: return "polynomial";
    case initial_kind::indicator: return "indicator";
    }
    return "?";
}

inline const char* solver_name(solver_kind k) {
    switch (k) {
    case solver_kind::mc_free: return "mc-free";
    case solver_kind::mc_killed: return "mc-killed";
    case solver_kind::fourier: return "fourier";
    case solver_kind::spectral: return "spectral";
    case solver_kind::fd_direct: return "fd-direct";
    case solver_kind::fd_substituted: return "fd-substituted";
    case solver_kind::closed_form: return "closed-form";
    }
    return "?";
}

inline std::optional<solver_kind> solver_from_name(const std::string& name) {
    for (solver_kind k :
         {solver_kind::mc_free, solver_kind::mc_killed, solver_kind::fourier,
          solver_kind::spectral, solver_kind::fd_direct,
          solver_kind::fd_substituted, solver_kind::closed_form})
        if (name == solver_name(k)) return k;
    return std::nullopt;
}

inline bool is_stochastic(solver_kind k) {
    return k == solver_kind::mc_free || k == solver_kind::mc_killed;
}

} // namespace detail

/// Parses and fully validates an experiment config. On failure the returned
/// result carries every detected error with its line and column.
inline config_parse_result parse_config(const std::string& text) {
    config_parse_result result;
    detail::raw_document doc = detail::parse_raw(text);
    result.errors = doc.errors;

    detail::typed_reader reader(doc, result.errors);
    experiment_config cfg;

    // kind (top level)
    if (auto kind = reader.get_string("", "kind")) {
        bool found = false;
        for (experiment_kind k :
             {experiment_kind::derivative_check, experiment_kind::simulate,
              experiment_kind::solve, experiment_kind::validate,
              experiment_kind::table}) {
            if (*kind == detail::kind_name(k)) {
                cfg.kind = k;
                found = true;
            }
        }
        if (!found)
            reader.error_at("", "kind", "unknown experiment kind '" + *kind +
                                            "'");
    } else {
        reader.error_at("", "kind",
                        "missing mandatory top-level key 'kind'");
    }

    // [problem]
    if (auto v = reader.get_double_list("problem", "alpha")) {
        cfg.alphas = *v;
        if (cfg.kind != experiment_kind::table && cfg.alphas.size() != 1)
            reader.error_at("problem", "alpha",
                            "alpha lists are only allowed in table mode");
        for (double a : cfg.alphas)
            if (!(a > 0.0) || !(a <= 1.0))
                reader.error_at("problem", "alpha",
                                "alpha must lie in (0,1]");
    }
    if (auto v = reader.get_double_list("problem", "t")) {
        cfg.ts = *v;
        for (double t : cfg.ts)
            if (t < 0.0)
                reader.error_at("problem", "t", "t values must be >= 0");
    }
    if (auto v = reader.get_string("problem", "operator")) {
        bool found = false;
        for (operator_kind k :
             {operator_kind::gaussian, operator_kind::stable,
              operator_kind::independent_stable, operator_kind::fbm}) {
            if (*v == detail::operator_name(k)) {
                cfg.op = k;
                found = true;
            }
        }
        if (!found)
            reader.error_at("problem", "operator",
                            "unknown operator '" + *v + "'");
    }
    if (auto v = reader.get_int("problem", "dim")) {
        cfg.dim = static_cast<int>(*v);
        if (cfg.dim < 1)
            reader.error_at("problem", "dim", "dim must be >= 1");
    }
    if (auto v = reader.get_double("problem", "beta")) {
        cfg.beta = *v;
        if (!(cfg.beta > 0.0) || !(cfg.beta <= 2.0))
            reader.error_at("problem", "beta", "beta must lie in (0,2]");
    }
    if (auto v = reader.get_double("problem", "scale_d")) {
        cfg.scale_d = *v;
        if (!(cfg.scale_d > 0.0))
            reader.error_at("problem", "scale_d", "scale_d must be > 0");
    }
    if (auto v = reader.get_double("problem", "hurst")) {
        cfg.hurst = *v;
        if (!(cfg.hurst > 0.0) || !(cfg.hurst < 1.0))
            reader.error_at("problem", "hurst", "hurst must lie in (0,1)");
    }
    if (auto v = reader.get_double_list("problem", "betas")) {
        cfg.betas = *v;
        for (double b : cfg.betas)
            if (!(b >= 1.0) || !(b <= 2.0))
                reader.error_at("problem", "betas",
                                "independent-stable indices must lie in [1,2]");
    }
    if (auto v = reader.get_double_list("problem", "drift")) cfg.drift = *v;
    if (auto v = reader.get_double_list("problem", "q")) cfg.q_diag = *v;
    if (auto v = reader.get_string("problem", "domain")) {
        if (*v == "free")
            cfg.interval = false;
        else if (*v == "interval")
            cfg.interval = true;
        else
            reader.error_at("problem", "domain",
                            "domain must be 'free' or 'interval'");
    }
    if (auto v = reader.get_double("problem", "length_l")) {
        cfg.length_l = *v;
        if (!(cfg.length_l > 0.0))
            reader.error_at("problem", "length_l", "length_l must be > 0");
    }
    if (auto v = reader.get_double("problem", "start_x")) cfg.start_x = *v;
    if (auto v = reader.get_string("problem", "initial")) {
        bool found = false;
        for (initial_kind k :
             {initial_kind::gaussian, initial_kind::sine_mode,
              initial_kind::polynomial, initial_kind::indicator}) {
            if (*v == detail::initial_name(k)) {
                cfg.initial = k;
                found = true;
            }
        }
        if (!found)
            reader.error_at("problem", "initial",
                            "unknown initial datum '" + *v + "'");
    }
    if (auto v = reader.get_double("problem", "sigma")) {
        cfg.sigma = *v;
        if (!(cfg.sigma > 0.0))
            reader.error_at("problem", "sigma", "sigma must be > 0");
    }
    if (auto v = reader.get_double_list("problem", "center")) cfg.center = *v;
    if (auto v = reader.get_int("problem", "mode_n")) {
        cfg.mode_n = static_cast<int>(*v);
        if (cfg.mode_n < 1)
            reader.error_at("problem", "mode_n", "mode_n must be >= 1");
    }
    if (auto v = reader.get_double_list("problem", "coeffs")) cfg.coeffs = *v;
    if (auto v = reader.get_double("problem", "lo")) cfg.lo = *v;
    if (auto v = reader.get_double("problem", "hi")) cfg.hi = *v;

    // [method]
    if (auto v = reader.get_string("method", "solver")) {
        cfg.solvers.clear();
        std::size_t start = 0;
        while (start <= v->size()) {
            std::size_t comma = v->find(',', start);
            const std::string piece = detail::trim(
                v->substr(start, comma == std::string::npos
                                     ? std::string::npos
                                     : comma - start));
            if (auto k = detail::solver_from_name(piece)) {
                for (solver_kind prev : cfg.solvers)
                    if (prev == *k)
                        reader.error_at("method", "solver",
                                        "solver '" + piece +
                                            "' listed twice");
                cfg.solvers.push_back(*k);
            } else {
                reader.error_at("method", "solver",
                                "unknown solver '" + piece + "'");
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    if (auto v = reader.get_int("method", "grid_n")) {
        cfg.grid_n = static_cast<int>(*v);
        if (cfg.grid_n < 2)
            reader.error_at("method", "grid_n", "grid_n must be >= 2");
    }
    if (auto v = reader.get_double("method", "grid_span")) {
        cfg.grid_span = *v;
        if (!(cfg.grid_span > 0.0))
            reader.error_at("method", "grid_span", "grid_span must be > 0");
    }
    if (auto v = reader.get_int("method", "n_modes")) {
        cfg.n_modes = static_cast<int>(*v);
        if (cfg.n_modes < 1)
            reader.error_at("method", "n_modes", "n_modes must be >= 1");
    }
    if (auto v = reader.get_u64("method", "n_paths")) {
        cfg.n_paths = *v;
        if (cfg.n_paths < 100)
            reader.error_at("method", "n_paths", "n_paths must be >= 100");
    }
    if (auto v = reader.get_double("method", "dt")) {
        cfg.dt = *v;
        if (!(cfg.dt > 0.0))
            reader.error_at("method", "dt", "dt must be > 0");
    }
    if (auto v = reader.get_int("method", "n_steps")) {
        cfg.n_steps = static_cast<int>(*v);
        if (cfg.n_steps < 10)
            reader.error_at("method", "n_steps", "n_steps must be >= 10");
    }
    if (auto v = reader.get_double("method", "safety")) {
        cfg.safety = *v;
        if (!(cfg.safety > 0.0) || cfg.safety > 1.0)
            reader.error_at("method", "safety", "safety must lie in (0,1]");
    }
    if (auto v = reader.get_u64("method", "seed")) {
        cfg.seed = *v;
        cfg.has_seed = true;
    }
    if (auto v = reader.get_double("method", "query_span")) {
        cfg.query_span = *v;
        if (!(cfg.query_span > 0.0))
            reader.error_at("method", "query_span", "query_span must be > 0");
    }
    if (auto v = reader.get_int("method", "query_n")) {
        cfg.query_n = static_cast<int>(*v);
        if (cfg.query_n < 1)
            reader.error_at("method", "query_n", "query_n must be >= 1");
    }
    if (auto v = reader.get_int("method", "paths")) {
        cfg.sim_paths = static_cast<int>(*v);
        if (cfg.sim_paths < 1)
            reader.error_at("method", "paths", "paths must be >= 1");
    }
    if (auto v = reader.get_int("method", "path_points")) {
        cfg.path_points = static_cast<int>(*v);
        if (cfg.path_points < 2)
            reader.error_at("method", "path_points",
                            "path_points must be >= 2");
    }
    if (auto v = reader.get_double("method", "t_max")) {
        cfg.t_max = *v;
        if (!(cfg.t_max > 0.0))
            reader.error_at("method", "t_max", "t_max must be > 0");
    }
    if (auto v = reader.get_int("method", "cases")) {
        cfg.cases = static_cast<int>(*v);
        if (cfg.cases < 1)
            reader.error_at("method", "cases", "cases must be >= 1");
    }

    // [output]
    if (auto v = reader.get_string("output", "prefix")) {
        cfg.prefix = *v;
        if (cfg.prefix.empty() ||
            cfg.prefix.find_first_of("/\\") != std::string::npos)
            reader.error_at("output", "prefix",
                            "prefix must be a plain file-name stem");
    }
    if (auto v = reader.get_bool("output", "svg")) cfg.svg = *v;
    if (auto v = reader.get_double("output", "budget")) {
        cfg.budget = *v;
        if (cfg.budget < 0.0)
            reader.error_at("output", "budget", "budget must be >= 0");
    }
    if (auto v = reader.get_double("output", "mc_sigma")) {
        cfg.mc_sigma = *v;
        if (!(cfg.mc_sigma > 0.0))
            reader.error_at("output", "mc_sigma", "mc_sigma must be > 0");
    }

    reader.flag_unconsumed();

    // Cross-field validation.
    auto err = [&](const std::string& section, const std::string& key,
                   const std::string& msg) { reader.error_at(section, key, msg); };

    if (cfg.kind == experiment_kind::solve && cfg.solvers.size() != 1)
        err("method", "solver", "solve mode takes exactly one solver");
    if (cfg.kind == experiment_kind::table && cfg.solvers.size() != 1)
        err("method", "solver", "table mode takes exactly one solver");
    if (cfg.kind == experiment_kind::validate && cfg.solvers.size() < 2)
        err("method", "solver",
            "validate mode needs at least two solvers to compare");

    bool stochastic = false;
    for (solver_kind k : cfg.solvers) stochastic |= detail::is_stochastic(k);
    if (cfg.kind == experiment_kind::simulate) stochastic = true;
    if (cfg.kind == experiment_kind::derivative_check) stochastic = true;
    if (stochastic && !cfg.has_seed)
        err("method", "solver",
            "seed is mandatory for stochastic methods; add 'seed = <u64>' "
            "to [method]");

    const bool needs_solvers = cfg.kind == experiment_kind::solve ||
                               cfg.kind == experiment_kind::validate ||
                               cfg.kind == experiment_kind::table;
    if (needs_solvers) {
        for (solver_kind k : cfg.solvers) {
            const bool interval_solver =
                k == solver_kind::mc_killed || k == solver_kind::spectral;
            if (interval_solver && !cfg.interval)
                err("method", "solver",
                    std::string("solver '") + detail::solver_name(k) +
                        "' requires domain = interval");
            if (!interval_solver && k != solver_kind::closed_form &&
                cfg.interval && k != solver_kind::fd_direct &&
                k != solver_kind::fd_substituted)
                err("method", "solver",
                    std::string("solver '") + detail::solver_name(k) +
                        "' requires domain = free");
            if (k == solver_kind::spectral && cfg.op == operator_kind::stable &&
                cfg.beta != 2.0)
                err("problem", "beta",
                    "spectral expansion needs beta = 2 (explicit eigenpairs)");
            if ((k == solver_kind::fourier || k == solver_kind::fd_direct ||
                 k == solver_kind::fd_substituted) &&
                cfg.op == operator_kind::fbm)
                err("problem", "operator",
                    "the fbm problem is Monte Carlo / closed-form only");
            if ((k == solver_kind::fourier || k == solver_kind::fd_direct ||
                 k == solver_kind::fd_substituted) &&
                !cfg.interval && cfg.dim > 2)
                err("problem", "dim", "grid solvers support dim <= 2");
            if (k == solver_kind::mc_free && cfg.interval)
                err("method", "solver",
                    "mc-free solves free-space problems; use mc-killed");
            if (detail::is_stochastic(k)) {
                for (double t : cfg.ts)
                    if (!(t > 0.0))
                        err("problem", "t",
                            "Monte Carlo solvers need t > 0");
            }
        }
        if (cfg.op == operator_kind::independent_stable && cfg.betas.empty())
            err("problem", "operator",
                "independent-stable operator needs a 'betas' list");
        if (cfg.op == operator_kind::independent_stable &&
            !cfg.betas.empty() &&
            static_cast<int>(cfg.betas.size()) != cfg.dim)
            err("problem", "betas", "betas length must equal dim");
        if (cfg.interval) {
            const double sx =
                cfg.start_x == 0.0 ? cfg.length_l / 2.0 : cfg.start_x;
            if (!(sx > 0.0) || !(sx < cfg.length_l))
                err("problem", "start_x",
                    "start_x must lie strictly inside (0, length_l)");
            if (cfg.initial == initial_kind::sine_mode && cfg.op != operator_kind::fbm) {
                // sine-mode datum lives on [0, L]; nothing else to check.
            }
        }
    }
    if (cfg.kind == experiment_kind::validate ||
        cfg.kind == experiment_kind::solve ||
        cfg.kind == experiment_kind::table) {
        bool has_closed = false;
        for (solver_kind k : cfg.solvers)
            has_closed |= k == solver_kind::closed_form;
        if (has_closed) {
            const bool fbm_gauss = cfg.op == operator_kind::fbm &&
                                   cfg.initial == initial_kind::gaussian;
            const bool gauss_gauss = cfg.op == operator_kind::gaussian &&
                                     cfg.initial == initial_kind::gaussian &&
                                     !cfg.interval;
            const bool sine_interval =
                cfg.interval && cfg.initial == initial_kind::sine_mode &&
                cfg.beta == 2.0;
            const bool cauchy = cfg.op == operator_kind::stable &&
                                cfg.beta == 1.0 && !cfg.interval &&
                                cfg.initial == initial_kind::gaussian;
            if (!fbm_gauss && !gauss_gauss && !sine_interval && !cauchy)
                err("method", "solver",
                    "closed-form reference exists only for gaussian/fbm "
                    "operators with a gaussian datum, the Cauchy (beta=1) "
                    "kernel, or the interval sine mode");
        }
    }

    if (result.errors.empty()) result.config = cfg;
    return result;
}

/// Canonical serialization: every effective value is written, defaults
/// included, in a fixed order. parse_config(serialize_config(c)) == c.
inline std::string serialize_config(const experiment_config& cfg) {
    std::string out;
    auto put = [&](const std::string& key, const std::string& value) {
        out += key + " = " + value + "\n";
    };
    auto put_list = [&](const std::string& key,
                        std::span<const double> values) {
        std::string v;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) v += ", ";
            v += format_double(values[i]);
        }
        put(key, v);
    };

    put("kind", detail::kind_name(cfg.kind));
    out += "\n[problem]\n";
    put_list("alpha", cfg.alphas);
    put_list("t", cfg.ts);
    put("operator", detail::operator_name(cfg.op));
    put("dim", std::to_string(cfg.dim));
    put("beta", format_double(cfg.beta));
    put("scale_d", format_double(cfg.scale_d));
    put("hurst", format_double(cfg.hurst));
    if (!cfg.betas.empty()) put_list("betas", cfg.betas);
    if (!cfg.drift.empty()) put_list("drift", cfg.drift);
    if (!cfg.q_diag.empty()) put_list("q", cfg.q_diag);
    put("domain", cfg.interval ? "interval" : "free");
    put("length_l", format_double(cfg.length_l));
    put("start_x", format_double(cfg.start_x));
    put("initial", detail::initial_name(cfg.initial));
    put("sigma", format_double(cfg.sigma));
    if (!cfg.center.empty()) put_list("center", cfg.center);
    put("mode_n", std::to_string(cfg.mode_n));
    if (!cfg.coeffs.empty()) put_list("coeffs", cfg.coeffs);
    put("lo", format_double(cfg.lo));
    put("hi", format_double(cfg.hi));

    out += "\n[method]\n";
    std::string solvers;
    for (std::size_t i = 0; i < cfg.solvers.size(); ++i) {
        if (i) solvers += ", ";
        solvers += detail::solver_name(cfg.solvers[i]);
    }
    put("solver", solvers);
    put("grid_n", std::to_string(cfg.grid_n));
    put("grid_span", format_double(cfg.grid_span));
    put("n_modes", std::to_string(cfg.n_modes));
    put("n_paths", std::to_string(cfg.n_paths));
    put("dt", format_double(cfg.dt));
    put("n_steps", std::to_string(cfg.n_steps));
    put("safety", format_double(cfg.safety));
    if (cfg.has_seed) put("seed", std::to_string(cfg.seed));
    put("query_span", format_double(cfg.query_span));
    put("query_n", std::to_string(cfg.query_n));
    put("paths", std::to_string(cfg.sim_paths));
    put("path_points", std::to_string(cfg.path_points));
    put("t_max", format_double(cfg.t_max));
    put("cases", std::to_string(cfg.cases));

    out += "\n[output]\n";
    put("prefix", cfg.prefix);
    put("svg", cfg.svg ? "true" : "false");
    put("budget", format_double(cfg.budget));
    put("mc_sigma", format_double(cfg.mc_sigma));
    return out;
}

} // namespace confcauchy
