// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

// fdcache run <config> [--preset fig2|fig3] [--out path] [--seed n]
//             [--trials n] [--mode correlated|uncorrelated] [--workers n]

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fdcache/errors.hpp"
#include "fdcache/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

std::filesystem::path series_path(const std::filesystem::path& out, double kappa) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.10g", kappa);
    std::filesystem::path p = out;
    p.replace_filename(out.stem().string() + "-kappa" + buffer + out.extension().string());
    return p;
}

void summarize(const fdcache::ExperimentSpec& spec, std::span<const fdcache::ResultRow> rows) {
    double total = 0.0;
    double worst = 0.0;
    for (const auto& r : rows) {
        total += r.wall_seconds;
        if (r.analytic && r.sim_mean && r.ci95 && *r.ci95 > 0.0) {
            worst = std::max(worst, std::abs(*r.analytic - *r.sim_mean) / *r.ci95);
        }
    }
    std::fprintf(stderr, "%s: %zu points, %s, %.2f s", spec.name.c_str(), rows.size(),
                 std::string(fdcache::to_string(spec.metric)).c_str(), total);
    if (spec.outputs == fdcache::Outputs::both) {
        std::fprintf(stderr, ", max |analytic - sim| / ci95 = %.3g", worst);
    }
    std::fputc('\n', stderr);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cache-aided full-duplex small-cell network model and simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> preset;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::string> mode;
    std::optional<unsigned> workers;

    CLI::App* run = app.add_subcommand("run", "Run an experiment sweep and emit CSV results");
    run->add_option("config", config_path, "Config file (key = value lines)");
    run->add_option("--preset", preset, "Built-in base preset")
        ->check(CLI::IsMember({"fig2", "fig3"}));
    run->add_option("--out", out,
                    "Output CSV; with a kappa series one file per series is written as "
                    "<stem>-kappa<value><ext>");
    run->add_option("--seed", seed, "Override the random seed");
    run->add_option("--trials", trials, "Override trials per sweep point")
        ->check(CLI::PositiveNumber);
    run->add_option("--mode", mode, "Hop correlation mode")
        ->check(CLI::IsMember({"correlated", "uncorrelated"}));
    run->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 4096u));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        fdcache::ExperimentSpec spec;
        if (!config_path.empty()) {
            spec = fdcache::load_config(config_path, preset);
        } else if (preset) {
            spec = fdcache::load_preset(*preset);
        } else {
            std::cerr << "error: run needs a config file, a --preset, or both\n";
            return kExitConfig;
        }
        if (seed) spec.base.seed = *seed;
        if (trials) spec.base.trials = *trials;
        if (mode) {
            spec.base.mode = *mode == "correlated" ? fdcache::Correlation::correlated
                                                   : fdcache::Correlation::uncorrelated;
        }
        if (workers) spec.base.workers = *workers;
        spec.validate();

        const auto series = fdcache::expand_series(spec);
        for (const auto& s : series) {
            const auto rows = fdcache::run_experiment(s);
            summarize(s, rows);
            if (out) {
                const std::filesystem::path path =
                    spec.kappa_series.empty() ? std::filesystem::path(*out)
                                              : series_path(*out, s.base.kappa);
                fdcache::write_results(rows, path);
                std::fprintf(stderr, "wrote %s\n", path.string().c_str());
            } else {
                if (series.size() > 1) {
                    std::cout << "# " << s.name << '\n';
                }
                std::cout << fdcache::format_results(rows) << std::flush;
            }
        }
    } catch (const fdcache::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const fdcache::InvalidArgument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const fdcache::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const fdcache::WindowTooSmall& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const fdcache::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
