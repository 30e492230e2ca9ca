// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdcache/experiment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "fdcache/errors.hpp"

namespace fdcache {

namespace detail {
extern const std::string_view kPresetFig2;
extern const std::string_view kPresetFig3;
}  // namespace detail

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string format_number(double value, int digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
    return buffer;
}

std::optional<double> to_double(std::string_view text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        return std::nullopt;
    }
    return value;
}

std::optional<std::uint64_t> to_unsigned(std::string_view text) {
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        return std::nullopt;
    }
    return value;
}

// Parsing context for one `key = value` line.
struct Entry {
    std::string_view key;
    std::string_view value;
    std::size_t line;

    [[noreturn]] void fail(const std::string& why) const {
        throw ConfigError("line " + std::to_string(line) + ": " + std::string(key) + ": " + why,
                          line, std::string(key));
    }

    double number() const {
        if (auto v = to_double(value)) {
            return *v;
        }
        fail("cannot parse '" + std::string(value) + "' as a number");
    }

    std::uint64_t count() const {
        if (auto v = to_unsigned(value)) {
            return *v;
        }
        fail("cannot parse '" + std::string(value) + "' as a non-negative integer");
    }

    std::vector<double> numbers() const {
        std::vector<double> out;
        std::string_view rest = value;
        while (true) {
            const auto comma = rest.find(',');
            const auto item = trim(rest.substr(0, comma));
            auto v = to_double(item);
            if (!v) {
                fail("cannot parse list item '" + std::string(item) + "' as a number");
            }
            out.push_back(*v);
            if (comma == std::string_view::npos) {
                break;
            }
            rest = rest.substr(comma + 1);
        }
        return out;
    }

    template <class Enum, std::size_t N>
    Enum choice(const std::array<Enum, N>& options) const {
        std::string allowed;
        for (const Enum option : options) {
            if (to_string(option) == value) {
                return option;
            }
            allowed += (allowed.empty() ? "" : ", ") + std::string(to_string(option));
        }
        fail("'" + std::string(value) + "' is not one of " + allowed);
    }
};

std::string join_numbers(const std::vector<double>& values) {
    std::string out;
    for (const double v : values) {
        out += (out.empty() ? "" : ", ") + format_number(v, 17);
    }
    return out;
}

struct KeyBinding {
    std::string_view key;
    std::function<void(ExperimentSpec&, const Entry&)> set;
    std::function<std::string(const ExperimentSpec&)> get;
};

template <class T>
KeyBinding real_key(std::string_view key, T member_path) {
    return {key,
            [member_path](ExperimentSpec& s, const Entry& e) { member_path(s) = e.number(); },
            [member_path](const ExperimentSpec& s) {
                return format_number(member_path(const_cast<ExperimentSpec&>(s)), 17);
            }};
}

const std::vector<KeyBinding>& key_bindings() {
    static const std::vector<KeyBinding> bindings = [] {
        std::vector<KeyBinding> b;
        b.push_back({"name", [](ExperimentSpec& s, const Entry& e) { s.name = e.value; },
                     [](const ExperimentSpec& s) { return s.name; }});
        b.push_back({"metric",
                     [](ExperimentSpec& s, const Entry& e) {
                         s.metric = e.choice(std::array{Metric::p_hit, Metric::p_suc,
                                                        Metric::tg_fd, Metric::ase});
                     },
                     [](const ExperimentSpec& s) { return std::string(to_string(s.metric)); }});
        b.push_back({"outputs",
                     [](ExperimentSpec& s, const Entry& e) {
                         s.outputs = e.choice(
                             std::array{Outputs::analytic, Outputs::simulated, Outputs::both});
                     },
                     [](const ExperimentSpec& s) { return std::string(to_string(s.outputs)); }});
        b.push_back({"sweep",
                     [](ExperimentSpec& s, const Entry& e) {
                         s.sweep = e.choice(std::array{SweepVariable::eta, SweepVariable::lambda,
                                                       SweepVariable::kappa,
                                                       SweepVariable::theta_db});
                     },
                     [](const ExperimentSpec& s) { return std::string(to_string(s.sweep)); }});
        b.push_back({"values", [](ExperimentSpec& s, const Entry& e) { s.values = e.numbers(); },
                     [](const ExperimentSpec& s) { return join_numbers(s.values); }});
        b.push_back({"kappa_series",
                     [](ExperimentSpec& s, const Entry& e) { s.kappa_series = e.numbers(); },
                     [](const ExperimentSpec& s) { return join_numbers(s.kappa_series); }});
        b.push_back({"F",
                     [](ExperimentSpec& s, const Entry& e) {
                         s.base.file_count = static_cast<std::size_t>(e.count());
                     },
                     [](const ExperimentSpec& s) { return std::to_string(s.base.file_count); }});
        b.push_back(real_key("gamma", [](ExperimentSpec& s) -> double& { return s.base.zipf_gamma; }));
        b.push_back(real_key("eta", [](ExperimentSpec& s) -> double& { return s.base.file_density; }));
        b.push_back(real_key("kappa", [](ExperimentSpec& s) -> double& { return s.base.kappa; }));
        b.push_back(real_key("R_R", [](ExperimentSpec& s) -> double& { return s.base.request_radius; }));
        b.push_back(real_key("R_C", [](ExperimentSpec& s) -> double& { return s.base.cache_radius; }));
        b.push_back(real_key("R_UL", [](ExperimentSpec& s) -> double& { return s.base.network.ul_distance; }));
        b.push_back(real_key("R_DL", [](ExperimentSpec& s) -> double& { return s.base.network.dl_distance; }));
        b.push_back(real_key("rho_UL", [](ExperimentSpec& s) -> double& { return s.base.network.ul_power; }));
        b.push_back(real_key("rho_DL", [](ExperimentSpec& s) -> double& { return s.base.network.dl_power; }));
        b.push_back(real_key("alpha1", [](ExperimentSpec& s) -> double& { return s.base.network.alpha1; }));
        b.push_back(real_key("alpha2", [](ExperimentSpec& s) -> double& { return s.base.network.alpha2; }));
        b.push_back(real_key("K", [](ExperimentSpec& s) -> double& { return s.base.network.rician_k; }));
        b.push_back(real_key("si_attenuation_db",
                             [](ExperimentSpec& s) -> double& { return s.base.network.si_attenuation_db; }));
        b.push_back(real_key("lambda", [](ExperimentSpec& s) -> double& { return s.base.network.sc_density; }));
        b.push_back(real_key("theta_db", [](ExperimentSpec& s) -> double& { return s.base.theta_db; }));
        b.push_back({"trials",
                     [](ExperimentSpec& s, const Entry& e) {
                         s.base.trials = static_cast<std::size_t>(e.count());
                     },
                     [](const ExperimentSpec& s) { return std::to_string(s.base.trials); }});
        b.push_back(real_key("window_radius",
                             [](ExperimentSpec& s) -> double& { return s.base.window_radius; }));
        b.push_back({"mode",
                     [](ExperimentSpec& s, const Entry& e) {
                         s.base.mode = e.choice(
                             std::array{Correlation::correlated, Correlation::uncorrelated});
                     },
                     [](const ExperimentSpec& s) { return std::string(to_string(s.base.mode)); }});
        b.push_back({"cache_mode",
                     [](ExperimentSpec& s, const Entry& e) {
                         s.base.cache_mode =
                             e.choice(std::array{CacheMode::thinned, CacheMode::geographic});
                     },
                     [](const ExperimentSpec& s) {
                         return std::string(to_string(s.base.cache_mode));
                     }});
        b.push_back({"regions",
                     [](ExperimentSpec& s, const Entry& e) {
                         s.base.regions = e.choice(
                             std::array{RegionSampling::independent, RegionSampling::shared});
                     },
                     [](const ExperimentSpec& s) { return std::string(to_string(s.base.regions)); }});
        b.push_back({"far_field",
                     [](ExperimentSpec& s, const Entry& e) {
                         s.base.far_field =
                             e.choice(std::array{FarField::compensate, FarField::truncate});
                     },
                     [](const ExperimentSpec& s) {
                         return std::string(to_string(s.base.far_field));
                     }});
        b.push_back({"seed", [](ExperimentSpec& s, const Entry& e) { s.base.seed = e.count(); },
                     [](const ExperimentSpec& s) { return std::to_string(s.base.seed); }});
        b.push_back({"workers",
                     [](ExperimentSpec& s, const Entry& e) {
                         const auto n = e.count();
                         if (n == 0 || n > 4096) {
                             e.fail("must lie in [1, 4096]");
                         }
                         s.base.workers = static_cast<unsigned>(n);
                     },
                     [](const ExperimentSpec& s) { return std::to_string(s.base.workers); }});
        return b;
    }();
    return bindings;
}

[[noreturn]] void invalid(std::string_view key, const std::string& why) {
    throw ConfigError(std::string(key) + ": " + why, 0, std::string(key));
}

void check(bool ok, std::string_view key, const char* why) {
    if (!ok) {
        invalid(key, why);
    }
}

bool finite_at_least(double v, double lo) { return std::isfinite(v) && v >= lo; }

ScenarioSettings apply_sweep(ScenarioSettings settings, SweepVariable sweep, double value) {
    switch (sweep) {
        case SweepVariable::eta:
            settings.file_density = value;
            break;
        case SweepVariable::lambda:
            settings.network.sc_density = value;
            break;
        case SweepVariable::kappa:
            settings.kappa = value;
            break;
        case SweepVariable::theta_db:
            settings.theta_db = value;
            break;
    }
    return settings;
}

struct PointResult {
    std::optional<double> analytic;
    std::optional<EstimateWithCI> simulated;
};

PointResult evaluate_point(const ExperimentSpec& spec, const SimConfig& config) {
    PointResult out;
    const bool want_analytic = spec.outputs != Outputs::simulated;
    const bool want_simulated = spec.outputs != Outputs::analytic;
    const double lambda = config.params.sc_density;
    const double rate = std::log2(1.0 + config.theta);

    if (want_analytic) {
        const double p_hit = cache_hit_probability(config.catalog, config.cache);
        switch (spec.metric) {
            case Metric::p_hit:
                out.analytic = p_hit;
                break;
            case Metric::p_suc:
                out.analytic = success_probability_lb(config.theta, p_hit, config.params);
                break;
            case Metric::tg_fd:
                out.analytic = throughput_gain(
                    config.theta, success_probability_lb(config.theta, p_hit, config.params),
                    config.params);
                break;
            case Metric::ase:
                out.analytic = area_spectral_efficiency(
                    config.theta, success_probability_lb(config.theta, p_hit, config.params),
                    lambda);
                break;
        }
    }
    if (want_simulated) {
        switch (spec.metric) {
            case Metric::p_hit:
                out.simulated = estimate_cache_hit(config);
                break;
            case Metric::p_suc:
                out.simulated = estimate_success(config);
                break;
            case Metric::tg_fd:
                out.simulated = estimate_throughput_gain(config);
                break;
            case Metric::ase: {
                EstimateWithCI e = estimate_success(config);
                e.mean *= lambda * rate;
                e.half_width_95 *= lambda * rate;
                out.simulated = e;
                break;
            }
        }
    }
    return out;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> cells;
    while (true) {
        const auto comma = line.find(',');
        cells.push_back(line.substr(0, comma));
        if (comma == std::string_view::npos) {
            break;
        }
        line = line.substr(comma + 1);
    }
    return cells;
}

}  // namespace

std::string_view to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::eta: return "eta";
        case SweepVariable::lambda: return "lambda";
        case SweepVariable::kappa: return "kappa";
        case SweepVariable::theta_db: return "theta_db";
    }
    return "?";
}

std::string_view to_string(Metric m) {
    switch (m) {
        case Metric::p_hit: return "p_hit";
        case Metric::p_suc: return "p_suc";
        case Metric::tg_fd: return "tg_fd";
        case Metric::ase: return "ase";
    }
    return "?";
}

std::string_view to_string(Outputs o) {
    switch (o) {
        case Outputs::analytic: return "analytic";
        case Outputs::simulated: return "simulated";
        case Outputs::both: return "both";
    }
    return "?";
}

std::string_view to_string(Correlation c) {
    return c == Correlation::correlated ? "correlated" : "uncorrelated";
}

std::string_view to_string(CacheMode c) {
    return c == CacheMode::thinned ? "thinned" : "geographic";
}

std::string_view to_string(RegionSampling r) {
    return r == RegionSampling::independent ? "independent" : "shared";
}

std::string_view to_string(FarField f) {
    return f == FarField::compensate ? "compensate" : "truncate";
}

SimConfig ScenarioSettings::to_sim_config() const {
    SimConfig config;
    config.params = network;
    config.catalog = FileCatalog(file_count, zipf_gamma, file_density);
    config.cache = CacheModel::from_ratio(kappa, file_count, request_radius, cache_radius);
    config.theta = db_to_linear(theta_db);
    config.trials = trials;
    config.window_radius = window_radius;
    config.mode = mode;
    config.cache_mode = cache_mode;
    config.regions = regions;
    config.far_field = far_field;
    config.seed = seed;
    config.workers = workers;
    return config;
}

void ExperimentSpec::validate() const {
    const ScenarioSettings& s = base;
    const NetworkParams& n = s.network;
    check(!name.empty(), "name", "must not be empty");
    check(!values.empty(), "values", "must list at least one sweep value");
    for (std::size_t i = 0; i < values.size(); ++i) {
        check(std::isfinite(values[i]), "values", "must be finite");
        check(i == 0 || values[i] > values[i - 1], "values", "must be strictly increasing");
    }
    check(s.file_count >= 1, "F", "must be >= 1");
    check(finite_at_least(s.zipf_gamma, 0.0), "gamma", "must be finite and >= 0");
    check(finite_at_least(s.file_density, 0.0), "eta", "must be finite and >= 0");
    check(s.kappa >= 0.0 && s.kappa <= 1.0, "kappa", "must lie in [0, 1]");
    for (const double k : kappa_series) {
        check(k >= 0.0 && k <= 1.0, "kappa_series", "entries must lie in [0, 1]");
    }
    check(finite_at_least(s.request_radius, 0.0), "R_R", "must be finite and >= 0");
    check(finite_at_least(s.cache_radius, 0.0), "R_C", "must be finite and >= 0");
    check(std::isfinite(n.ul_distance) && n.ul_distance > 0.0, "R_UL", "must be finite and > 0");
    check(std::isfinite(n.dl_distance) && n.dl_distance > 0.0, "R_DL", "must be finite and > 0");
    check(finite_at_least(n.ul_power, 0.0), "rho_UL", "must be finite and >= 0");
    check(std::isfinite(n.dl_power) && n.dl_power > 0.0, "rho_DL", "must be finite and > 0");
    check(std::isfinite(n.alpha1) && n.alpha1 > 2.0 + 1e-6, "alpha1", "must be > 2");
    check(std::isfinite(n.alpha2) && n.alpha2 >= n.alpha1, "alpha2", "must be >= alpha1");
    check(finite_at_least(n.rician_k, 0.0), "K", "must be finite and >= 0");
    check(n.si_attenuation_db >= 0.0, "si_attenuation_db", "must be >= 0");
    check(finite_at_least(n.sc_density, 0.0), "lambda", "must be finite and >= 0");
    check(std::isfinite(s.theta_db), "theta_db", "must be finite");
    check(s.trials >= 1, "trials", "must be >= 1");
    check(std::isfinite(s.window_radius) &&
              s.window_radius >= 10.0 * std::max(n.ul_distance, n.dl_distance),
          "window_radius", "must be at least 10 * max(R_UL, R_DL)");
    check(s.workers >= 1, "workers", "must be >= 1");

    const std::string_view sweep_key = to_string(sweep);
    for (const double v : values) {
        switch (sweep) {
            case SweepVariable::eta:
            case SweepVariable::lambda:
                check(v >= 0.0, "values", "sweep values must be >= 0 for this variable");
                break;
            case SweepVariable::kappa:
                check(v >= 0.0 && v <= 1.0, "values", "kappa sweep values must lie in [0, 1]");
                break;
            case SweepVariable::theta_db:
                break;
        }
        try {
            apply_sweep(s, sweep, v).to_sim_config().validate();
        } catch (const InvalidArgument& e) {
            invalid(sweep_key, std::string("at sweep value ") + format_number(v, 10) + ": " +
                                   e.what());
        }
    }
}

ExperimentSpec parse_config(std::string_view text, ExperimentSpec spec) {
    std::set<std::string, std::less<>> seen;
    std::size_t line_number = 0;
    while (!text.empty()) {
        ++line_number;
        const auto newline = text.find('\n');
        std::string_view line = text.substr(0, newline);
        text = newline == std::string_view::npos ? std::string_view{} : text.substr(newline + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_number) + ": expected 'key = value'",
                              line_number);
        }
        const Entry entry{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_number};
        if (entry.key.empty()) {
            throw ConfigError("line " + std::to_string(line_number) + ": missing key",
                              line_number);
        }
        const auto& bindings = key_bindings();
        const auto binding = std::find_if(bindings.begin(), bindings.end(),
                                          [&](const KeyBinding& b) { return b.key == entry.key; });
        if (binding == bindings.end()) {
            entry.fail("unknown key");
        }
        if (!seen.insert(std::string(entry.key)).second) {
            entry.fail("key given more than once");
        }
        if (entry.value.empty()) {
            entry.fail("missing value");
        }
        binding->set(spec, entry);
    }
    return spec;
}

std::string_view preset_text(std::string_view name) {
    if (name == "fig2") {
        return detail::kPresetFig2;
    }
    if (name == "fig3") {
        return detail::kPresetFig3;
    }
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected fig2 or fig3)");
}

ExperimentSpec load_preset(std::string_view name) {
    ExperimentSpec spec = parse_config(preset_text(name));
    spec.validate();
    return spec;
}

ExperimentSpec load_config(const std::filesystem::path& path,
                           std::optional<std::string_view> preset) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open config file " + path.string(), path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("error reading config file " + path.string(), path.string());
    }
    ExperimentSpec base;
    if (preset) {
        base = parse_config(preset_text(*preset));
    }
    ExperimentSpec spec = parse_config(buffer.str(), std::move(base));
    spec.validate();
    return spec;
}

std::string format_config(const ExperimentSpec& spec) {
    std::string out;
    for (const KeyBinding& b : key_bindings()) {
        const std::string value = b.get(spec);
        if (value.empty()) {
            continue;
        }
        out += std::string(b.key) + " = " + value + "\n";
    }
    return out;
}

std::vector<ExperimentSpec> expand_series(const ExperimentSpec& spec) {
    if (spec.kappa_series.empty()) {
        return {spec};
    }
    std::vector<ExperimentSpec> out;
    for (const double kappa : spec.kappa_series) {
        ExperimentSpec s = spec;
        s.kappa_series.clear();
        s.base.kappa = kappa;
        s.name = spec.name + "-kappa" + format_number(kappa, 10);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    std::vector<ResultRow> rows;
    rows.reserve(spec.values.size());
    for (const double value : spec.values) {
        const auto start = std::chrono::steady_clock::now();
        const std::string where =
            std::string(to_string(spec.sweep)) + " = " + format_number(value, 10) + ": ";
        const SimConfig config = apply_sweep(spec.base, spec.sweep, value).to_sim_config();
        PointResult point;
        try {
            point = evaluate_point(spec, config);
        } catch (const NumericalError& e) {
            throw NumericalError(where + e.what(), e.achieved_tolerance());
        } catch (const WindowTooSmall& e) {
            throw NumericalError(where + e.what(), 0.0);
        } catch (const InvalidArgument& e) {
            throw ConfigError(where + e.what());
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

        ResultRow row;
        row.sweep_value = value;
        row.analytic = point.analytic;
        if (point.simulated) {
            row.sim_mean = point.simulated->mean;
            row.ci95 = point.simulated->half_width_95;
            row.trials = point.simulated->trials;
        }
        row.wall_seconds = elapsed.count();
        rows.push_back(row);
    }
    return rows;
}

std::string format_results(std::span<const ResultRow> rows) {
    std::string out(kResultsHeader);
    out += '\n';
    auto cell = [](const std::optional<double>& v) {
        return v ? format_number(*v, 10) : std::string{};
    };
    for (const ResultRow& r : rows) {
        out += format_number(r.sweep_value, 10) + ',' + cell(r.analytic) + ',' + cell(r.sim_mean) +
               ',' + cell(r.ci95) + ',' + std::to_string(r.trials) + ',' +
               format_number(r.wall_seconds, 10) + '\n';
    }
    return out;
}

std::vector<ResultRow> parse_results(std::string_view csv) {
    std::vector<ResultRow> rows;
    std::size_t line_number = 0;
    bool header_seen = false;
    while (!csv.empty()) {
        ++line_number;
        const auto newline = csv.find('\n');
        const std::string_view line = trim(csv.substr(0, newline));
        csv = newline == std::string_view::npos ? std::string_view{} : csv.substr(newline + 1);
        if (!header_seen) {
            if (line != kResultsHeader) {
                throw ConfigError("results: unexpected header", line_number);
            }
            header_seen = true;
            continue;
        }
        if (line.empty()) {
            continue;
        }
        const auto cells = split_csv_line(line);
        if (cells.size() != 6) {
            throw ConfigError("results: expected 6 columns", line_number);
        }
        auto number = [&](std::string_view c) {
            auto v = to_double(c);
            if (!v) {
                throw ConfigError("results: bad number '" + std::string(c) + "'", line_number);
            }
            return *v;
        };
        auto optional = [&](std::string_view c) -> std::optional<double> {
            if (c.empty()) {
                return std::nullopt;
            }
            return number(c);
        };
        const auto trials = to_unsigned(cells[4]);
        if (!trials) {
            throw ConfigError("results: bad trial count", line_number);
        }
        rows.push_back({number(cells[0]), optional(cells[1]), optional(cells[2]),
                        optional(cells[3]), static_cast<std::size_t>(*trials), number(cells[5])});
    }
    if (!header_seen) {
        throw ConfigError("results: missing header");
    }
    return rows;
}

void write_results(std::span<const ResultRow> rows, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing", path.string());
    }
    out << format_results(rows);
    out.flush();
    if (!out) {
        throw IoError("error writing " + path.string(), path.string());
    }
}

}  // namespace fdcache
