// isabc-sim: Monte-Carlo driver for the OFDM-AFDM backscatter simulator.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "isabc/config.hpp"
#include "isabc/errors.hpp"
#include "isabc/harness.hpp"
#include "isabc/selftest.hpp"

namespace {

isabc::SystemConfig load_config(const std::string& path, const std::vector<std::string>& sets) {
    // Keys given in the file or on the command line override the reference
    // configuration; the rest keep their defaults.
    auto raw = isabc::default_config().to_map();
    auto overlay = [&raw](const isabc::ParamMap& m) {
        for (const auto& [k, v] : m) {
            if (k == "snr_db") raw.erase("noise_var");
            if (k == "noise_var") raw.erase("snr_db");
            if (k == "N") {
                // A new block size brings its own CP (N/4) and bandwidth
                // unless those are given too.
                raw["cp_len"] = std::to_string(std::stoi(v) / 4);
                raw.erase("bandwidth_hz");
            }
            raw[k] = v;
        }
    };
    if (!path.empty()) overlay(isabc::read_params_file(path));
    for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw isabc::InvalidValue("--set", "expected key=value, got '" + kv + "'");
        overlay(isabc::parse_params(kv.substr(0, eq) + " = " + kv.substr(eq + 1)));
    }
    return isabc::validate_config(raw);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"OFDM-AFDM symbiotic radio ISABC simulator"};
    app.require_subcommand(1);

    std::string config_path, sweep_path, out_path;
    std::uint64_t seed = 1;
    int workers = 1;
    std::uint64_t trials = 0;
    std::vector<std::string> sets;

    auto* run = app.add_subcommand("run", "run a parameter sweep and write CSV");
    run->add_option("--config", config_path, "system parameter file (key = value)")->required()->check(CLI::ExistingFile);
    run->add_option("--sweep", sweep_path, "sweep description file")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_path, "output CSV (resumed if it exists)")->required();
    run->add_option("--seed", seed, "master seed");
    run->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    run->add_option("--trials", trials, "override trials per point");

    app.add_subcommand("selftest", "run the invariant checks");

    double snr_db = 20.0, alpha = 1.0;
    std::string experiment = "all";
    std::uint64_t point_trials = 10000;
    auto* point = app.add_subcommand("point", "simulate one configuration and print CSV rows");
    point->add_option("--config", config_path, "system parameter file")->check(CLI::ExistingFile);
    point->add_option("--snr-db", snr_db, "data SNR in dB")->required();
    point->add_option("--alpha", alpha, "BD reflection coefficient")->required();
    point->add_option("--experiment", experiment, "pmd | ber | sumrate | rmse | eta | all");
    point->add_option("--trials", point_trials, "trials");
    point->add_option("--seed", seed, "master seed");
    point->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    point->add_option("--set", sets, "extra key=value overrides");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const auto base = load_config(config_path, {});
            auto spec = isabc::harness::parse_sweep(isabc::read_params_file(sweep_path), base);
            spec.seed = seed;
            spec.workers = workers;
            spec.out = out_path;
            if (trials > 0) spec.trials = trials;
            isabc::harness::run_sweep(spec);
            return 0;
        }
        if (app.got_subcommand("selftest")) {
            int failed = 0;
            for (const auto& r : isabc::run_selftest()) {
                std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
                failed += !r.pass;
            }
            return failed == 0 ? 0 : 1;
        }
        if (*point) {
            sets.push_back("snr_db=" + isabc::format_double(snr_db));
            sets.push_back("alpha=" + isabc::format_double(alpha));
            const auto cfg = load_config(config_path, sets);
            const isabc::harness::RunOptions opts{isabc::harness::parse_experiment(experiment), point_trials, seed,
                                                  workers, false};
            const auto result = isabc::harness::run_point(cfg, opts, 0);
            const isabc::harness::SweepPoint p{0, "snr_db", isabc::format_double(snr_db), cfg};
            std::cout << isabc::harness::kCsvHeader << '\n' << isabc::harness::format_rows(p, result, seed);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "isabc-sim: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
