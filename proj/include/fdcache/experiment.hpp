// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fdcache/simulator.hpp"

namespace fdcache {

enum class SweepVariable { eta, lambda, kappa, theta_db };
enum class Metric { p_hit, p_suc, tg_fd, ase };
enum class Outputs { analytic, simulated, both };

/// Flat scenario description; every field maps to one config key.
/// Defaults reproduce the reference scenario with F = 100 files.
struct ScenarioSettings {
    std::size_t file_count = 100;   // F
    double zipf_gamma = 0.7;        // gamma
    double file_density = 1.0;      // eta
    double kappa = 0.35;
    double request_radius = 8.0;    // R_R
    double cache_radius = 40.0;     // R_C
    NetworkParams network;
    double theta_db = 0.0;
    std::size_t trials = 10000;
    double window_radius = 2000.0;
    Correlation mode = Correlation::correlated;
    CacheMode cache_mode = CacheMode::thinned;
    RegionSampling regions = RegionSampling::independent;
    FarField far_field = FarField::compensate;
    std::uint64_t seed = 1;
    unsigned workers = 1;

    SimConfig to_sim_config() const;
};

struct ExperimentSpec {
    std::string name = "experiment";
    ScenarioSettings base;
    SweepVariable sweep = SweepVariable::lambda;
    std::vector<double> values{1e-4};
    Metric metric = Metric::p_suc;
    Outputs outputs = Outputs::both;
    /// Optional storage ratios; each yields its own series (see expand_series).
    std::vector<double> kappa_series;

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

/// Parses `key = value` lines (`#` starts a comment) on top of `base`.
/// Unknown or repeated keys are errors; line numbers refer to `text`.
ExperimentSpec parse_config(std::string_view text, ExperimentSpec base = {});

/// Reads and validates a config file, optionally layered over a named preset.
ExperimentSpec load_config(const std::filesystem::path& path,
                           std::optional<std::string_view> preset = std::nullopt);

/// Text of a built-in preset ("fig2", "fig3"); throws ConfigError otherwise.
std::string_view preset_text(std::string_view name);
/// Validated spec of a built-in preset.
ExperimentSpec load_preset(std::string_view name);

/// Canonical config text; parse_config(format_config(s)) reproduces s.
std::string format_config(const ExperimentSpec& spec);

/// One spec per kappa_series entry (name suffixed "-kappa<value>"), or the
/// spec itself when no series is set.
std::vector<ExperimentSpec> expand_series(const ExperimentSpec& spec);

struct ResultRow {
    double sweep_value = 0.0;
    std::optional<double> analytic;
    std::optional<double> sim_mean;
    std::optional<double> ci95;
    std::size_t trials = 0;
    double wall_seconds = 0.0;
};

/// One row per sweep value, in sweep order. Simulated values use the same
/// seed at every point. Errors are rethrown with the sweep value attached.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

inline constexpr std::string_view kResultsHeader = "sweep_value,analytic,sim_mean,ci95,trials,wall_s";

/// CSV text: header plus one row per result, 10 significant digits, empty
/// cells for outputs that were not requested.
std::string format_results(std::span<const ResultRow> rows);
std::vector<ResultRow> parse_results(std::string_view csv);
void write_results(std::span<const ResultRow> rows, const std::filesystem::path& path);

std::string_view to_string(SweepVariable v);
std::string_view to_string(Metric m);
std::string_view to_string(Outputs o);
std::string_view to_string(Correlation c);
std::string_view to_string(CacheMode c);
std::string_view to_string(RegionSampling r);
std::string_view to_string(FarField f);

}  // namespace fdcache
